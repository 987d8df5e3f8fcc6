#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathint/action.hpp"
#include "pathint/canonical.hpp"
#include "pathint/exec.hpp"

namespace pathint::wick {

using symexpr::Coeff;
using symexpr::Rational;

/// Raised when a contraction is requested for an odd number of fields.
class OddFieldCount : public std::invalid_argument {
 public:
  explicit OddFieldCount(const std::string& what) : std::invalid_argument(what) {}
};

/// One field to be contracted: the vertex it sits on (0 or 1) and whether it
/// carries a time derivative.
struct FieldSlot {
  int vertex = 0;
  bool dotted = false;
};

/// A contracted line between the two vertex points, recorded by the number of
/// derivatives at each endpoint (endpoint a is vertex 0). Equal-point loops
/// are tracked separately by ContractionTerm.
struct PropagatorLine {
  signed char deriv_a = 0;
  signed char deriv_b = 0;
  friend auto operator<=>(const PropagatorLine&, const PropagatorLine&) = default;
};

/// A merged class of Wick pairings sharing the same line structure.
/// multiplicity carries pairing count, vertex coefficients and the cumulant
/// factor; derivative-fold signs are applied later, at reduction.
struct ContractionTerm {
  Coeff multiplicity;
  int g_order = 0;
  int vertex_count = 1;
  int delta_power = 0;   // Dirac factors from measure vertices
  int omega_power = 0;   // frequency powers from potential vertices
  int loops_plain = 0;   // equal-point plain loops
  int loops_dotted = 0;  // equal-point double-derivative loops
  std::vector<PropagatorLine> cross;  // canonical orientation, sorted
  bool connected = true;

  /// Field structure as reduction-grammar-style tokens,
  /// e.g. "d0*ddot0*D0^2*Dm^2".
  std::string signature() const;
};

/// Ordering on the structural key (everything except multiplicity and the
/// connected flag); used for deterministic merging.
bool structural_less(const ContractionTerm& a, const ContractionTerm& b);
bool structural_equal(const ContractionTerm& a, const ContractionTerm& b);

enum class DiagramClass { Local, ThreeBubble, Watermelon, JacobianNonlocal };

std::string diagram_class_str(DiagramClass c);

/// Classifies a contraction by its structure. Throws std::domain_error on
/// shapes outside the supported families (e.g. six or more cross lines).
DiagramClass classify(const ContractionTerm& t);

/// Enumerates all Wick pairings of the given fields and merges them into
/// structural classes. Multiplicities are bare pairing counts. Equal-point
/// single-derivative loops vanish by parity and the corresponding pairings
/// are dropped. Throws OddFieldCount for an odd slot list and
/// std::invalid_argument when more than two distinct vertex labels appear.
std::vector<ContractionTerm> pairings(const std::vector<FieldSlot>& fields,
                                      Exec exec = Exec::Serial);

/// Connected contraction classes of the perturbative expansion at the given
/// order (1 or 2), with cumulant weights and vertex coefficients folded into
/// the multiplicities. The values are coefficients of the volume-normalized
/// log of the partition-function ratio. Set connected_only = false to keep
/// the disconnected two-vertex classes (used by cancellation tests).
std::vector<ContractionTerm> free_energy_terms(const std::vector<action::VertexTerm>& vertices,
                                               int order, Exec exec = Exec::Serial,
                                               bool connected_only = true);

}  // namespace pathint::wick
