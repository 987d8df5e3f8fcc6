#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathint/rational.hpp"

namespace pathint::symexpr {

/// Dense univariate polynomial over Rational. Trailing zero coefficients are
/// trimmed, so the zero polynomial has an empty coefficient vector.
class QPoly {
 public:
  QPoly() = default;
  QPoly(const Rational& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  QPoly(long long c) : QPoly(Rational(c)) {}

  static QPoly variable() { return monomial(Rational(1), 1); }
  static QPoly monomial(const Rational& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly scaled(const Rational& s) const;
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division over the rationals; returns {quotient, remainder}.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;

  /// Monic gcd.
  static QPoly gcd(QPoly a, QPoly b);

  QPoly derivative() const;
  Rational eval(const Rational& x) const;

  std::string str(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Ratio of two polynomials in the dimension symbol D. Canonical form:
/// numerator and denominator coprime, denominator monic. Equal values always
/// compare equal.
class DRat {
 public:
  DRat() : num_(), den_(Rational(1)) {}
  DRat(const Rational& c) : num_(c), den_(Rational(1)) {}
  DRat(long long c) : DRat(Rational(c)) {}
  DRat(const QPoly& p) : num_(p), den_(Rational(1)) {}
  DRat(QPoly num, QPoly den);

  static DRat dimension() { return DRat(QPoly::variable()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }

  DRat operator-() const;
  friend DRat operator+(const DRat& a, const DRat& b);
  friend DRat operator-(const DRat& a, const DRat& b);
  friend DRat operator*(const DRat& a, const DRat& b);
  friend DRat operator/(const DRat& a, const DRat& b);
  friend bool operator==(const DRat& a, const DRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Value at D = x, or nullopt when x is a pole.
  std::optional<Rational> eval(const Rational& x) const;

  std::string str() const;

 private:
  QPoly num_, den_;
};

/// Polynomial in the checking parameter a with DRat coefficients. This is the
/// master scalar for diagram bookkeeping: rational in the dimension symbol,
/// polynomial in a.
class Coeff {
 public:
  Coeff() = default;
  Coeff(const Rational& c) { set(0, DRat(c)); }
  Coeff(long long c) : Coeff(Rational(c)) {}
  Coeff(const DRat& c) { set(0, c); }

  static Coeff param() {
    Coeff r;
    r.set(1, DRat(Rational(1)));
    return r;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_param_free() const { return c_.size() <= 1; }
  int param_degree() const { return static_cast<int>(c_.size()) - 1; }
  const DRat& coeff(int k) const;

  /// The underlying DRat of a parameter-free value.
  const DRat& drat() const;

  Coeff operator-() const;
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a, const Coeff& b);
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.c_ == b.c_; }

  Coeff derivative_param() const;
  Coeff eval_param(const Rational& a) const;

  std::string str() const;

 private:
  void set(int k, const DRat& v);
  void trim();
  std::vector<DRat> c_;  // c_[k] multiplies a^k
};

}  // namespace pathint::symexpr
