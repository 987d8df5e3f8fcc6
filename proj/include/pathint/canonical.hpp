#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "pathint/poly.hpp"

namespace pathint::symexpr {

/// Raised when a numeric evaluation hits a basis monomial that has no value in
/// the target limit (an opaque integral atom or a distributional factor that
/// should have been eliminated first).
class OpaqueResidue : public std::runtime_error {
 public:
  explicit OpaqueResidue(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when evaluating a dimension-dependent coefficient at D = 1 hits a
/// pole of the rational function.
class PoleAtD1 : public std::runtime_error {
 public:
  explicit PoleAtD1(const std::string& what) : std::runtime_error(what) {}
};

/// Opaque factor a monomial may carry (at most one). J4 is the quartic
/// self-integral of the propagator; ID is the finite remainder of the
/// mixed-derivative tensor split. The Dirac factors are the value of the
/// distribution (or a derivative of it) at the origin; both vanish under the
/// dimensional-regularization evaluation rules but are representable so that
/// intermediate bookkeeping stays exact.
enum class Atom : unsigned char { None, J4, ID, DiracZero, DiracDerivZero };

std::string atom_str(Atom a);

/// Monomial D0^p * w^q * atom, where D0 is the equal-point propagator and w
/// the frequency. The unit monomial prints as "1".
struct BasisMonomial {
  int d0_pow = 0;
  int omega_pow = 0;
  Atom atom = Atom::None;

  friend auto operator<=>(const BasisMonomial&, const BasisMonomial&) = default;

  /// Product monomial; throws std::domain_error when both factors carry an
  /// atom (the basis admits at most one per monomial).
  BasisMonomial times(const BasisMonomial& o) const;

  std::string str() const;
};

/// Finite linear combination of basis monomials with Coeff coefficients, kept
/// in canonical form: monomials sorted, zero coefficients erased. This is the
/// common value type every reduction lands in.
class CanonicalExpr {
 public:
  CanonicalExpr() = default;
  static CanonicalExpr term(const BasisMonomial& m, const Coeff& c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<BasisMonomial, Coeff>& terms() const { return terms_; }

  Coeff coeff(const BasisMonomial& m) const;
  /// Sub-expression made of the monomials carrying the given atom.
  CanonicalExpr atom_part(Atom a) const;

  void add_term(const BasisMonomial& m, const Coeff& c);
  friend CanonicalExpr operator+(const CanonicalExpr& a, const CanonicalExpr& b);
  friend CanonicalExpr operator-(const CanonicalExpr& a, const CanonicalExpr& b);
  CanonicalExpr operator-() const;
  CanonicalExpr scaled(const Coeff& c) const;
  /// Product; throws std::domain_error if any monomial product would carry
  /// two atoms.
  friend CanonicalExpr operator*(const CanonicalExpr& a, const CanonicalExpr& b);
  friend bool operator==(const CanonicalExpr& a, const CanonicalExpr& b) {
    return a.terms_ == b.terms_;
  }

  CanonicalExpr derivative_param() const;
  CanonicalExpr eval_param(const Rational& a) const;

  /// Exact value at D = 1 for the given positive frequency, using the closed
  /// form of the equal-point propagator in one dimension. Throws OpaqueResidue
  /// when an atom survives, PoleAtD1 on a coefficient pole, std::domain_error
  /// when a coefficient still depends on the checking parameter or the
  /// frequency is not positive.
  Rational eval_at_d1(const Rational& omega) const;

  std::string str() const;
  /// {monomial string -> coefficient string}, the serialized form.
  std::map<std::string, std::string> to_string_map() const;

 private:
  std::map<BasisMonomial, Coeff> terms_;
};

}  // namespace pathint::symexpr
