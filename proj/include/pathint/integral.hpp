#pragma once

#include <string>
#include <vector>

#include "pathint/canonical.hpp"
#include "pathint/wick.hpp"

namespace pathint::reducer {

using symexpr::Coeff;
using symexpr::Rational;

/// One propagator factor under the relative-coordinate integral. idx holds
/// the contraction classes of the derivative indices carried by this factor;
/// within a full IntegralTerm every class id appears exactly twice. An empty
/// idx is the plain propagator, {c} a single derivative, {c,c} the contracted
/// double derivative (trace), {c,d} a mixed double derivative.
struct ILine {
  std::vector<int> idx;
  int order() const { return static_cast<int>(idx.size()); }
  friend auto operator<=>(const ILine&, const ILine&) = default;
};

/// A scalar multiple of a product of propagator factors under one
/// relative-coordinate integral, times local factors evaluated at the origin.
/// Derivative-fold signs from the contraction step are already in prefactor.
struct IntegralTerm {
  Coeff prefactor = Coeff(Rational(1));
  int g_order = 0;
  int omega_pow = 0;
  int d0_pow = 0;          // plain propagator at the origin
  int qdd0_pow = 0;        // trace of the double derivative at the origin
  int dm0_pow = 0;         // single derivative at the origin
  int dirac_pow = 0;       // Dirac factor at the origin
  int dirac_deriv_pow = 0; // derivative of the Dirac factor at the origin
  std::vector<ILine> lines;

  bool locals_clean() const {
    return qdd0_pow == 0 && dm0_pow == 0 && dirac_pow == 0 && dirac_deriv_pow == 0;
  }

  /// Sorts index entries and lines and relabels contraction classes to the
  /// lexicographically minimal form. Throws std::domain_error when a class id
  /// does not appear exactly twice.
  void canonicalize();

  /// Grammar-style display of the factor structure, e.g. "D0^2*Dmn*Dm^2".
  std::string signature() const;
  /// Full display including the prefactor.
  std::string str() const;

  /// Parses "tok[^k]*tok[^k]*..." with tokens D, Dm, Dmn, Dmm, D0, d0 and the
  /// extensions dd0, Dm0, Dmm0, w (w may take a negative exponent). Index
  /// contractions are inferred: Dm lines pair mutually, one Dmn contracts
  /// against two Dm lines, two Dmn lines contract against each other. Throws
  /// std::invalid_argument when the pattern is ambiguous or malformed.
  static IntegralTerm parse(const std::string& text);
};

/// Converts a merged contraction class into the integral representation,
/// folding per-line derivative signs and the equal-point double-derivative
/// loop signs into the prefactor.
IntegralTerm from_contraction(const wick::ContractionTerm& t);

}  // namespace pathint::reducer
