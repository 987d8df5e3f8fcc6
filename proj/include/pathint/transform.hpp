#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pathint/poly.hpp"

namespace pathint::action {

using symexpr::Coeff;
using symexpr::Rational;

/// Raised when a transform term has an even target power.
class EvenPower : public std::invalid_argument {
 public:
  explicit EvenPower(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when the transform does not start with a unit linear term.
class MissingLinearTerm : public std::invalid_argument {
 public:
  explicit MissingLinearTerm(const std::string& what) : std::invalid_argument(what) {}
};

/// Polynomial in the coupling g; each coefficient is a polynomial in the
/// checking parameter a.
class CouplingPoly {
 public:
  CouplingPoly() = default;
  CouplingPoly(const Coeff& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  static CouplingPoly monomial(const Coeff& c, int gpow);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Coeff& coeff(int gpow) const;

  CouplingPoly operator-() const;
  friend CouplingPoly operator+(const CouplingPoly& a, const CouplingPoly& b);
  friend CouplingPoly operator-(const CouplingPoly& a, const CouplingPoly& b);
  /// Product truncated to g-order <= max_order.
  CouplingPoly mul_truncated(const CouplingPoly& o, int max_order) const;
  CouplingPoly scaled(const Coeff& s) const;
  friend bool operator==(const CouplingPoly& a, const CouplingPoly& b) { return a.c_ == b.c_; }

  /// Lowest g-power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  std::string str() const;

 private:
  void trim();
  std::vector<Coeff> c_;
};

/// One term of the coordinate transform: coefficient(g, a) * q^power.
struct TransformTerm {
  int power = 0;
  CouplingPoly coeff;
};

/// Odd power series x = f(q) defining the coordinate transform. Invariants:
/// powers strictly increasing and odd, the first term is exactly 1 * q, and
/// every higher term vanishes at g = 0.
class TransformSeries {
 public:
  /// x = q - (g/3) q^3 + (a g^2/5) q^5.
  static TransformSeries default_transform();
  /// x = q.
  static TransformSeries identity();

  /// Parses "power:coeff,power:coeff,..." where coeff is a sum of terms built
  /// from rational literals, 'g', 'a', '*' and '^'. Also accepts the keywords
  /// "paper-default" and "identity". Throws EvenPower, MissingLinearTerm or
  /// std::invalid_argument on malformed input.
  static TransformSeries parse(const std::string& text);

  const std::vector<TransformTerm>& terms() const { return terms_; }
  int max_power() const { return terms_.empty() ? 0 : terms_.back().power; }

  /// Human-readable echo, e.g. "q - 1/3*g*q^3 + 1/5*a*g^2*q^5".
  std::string str() const;

 private:
  void validate() const;
  std::vector<TransformTerm> terms_;
};

}  // namespace pathint::action
