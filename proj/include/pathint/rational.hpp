#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace pathint::symexpr {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational. Always stored normalized: gcd(num, den) == 1,
/// den > 0. Backed by boost::multiprecision so no intermediate overflows.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    // cpp_rational requires a positive denominator, so fold the sign in here.
    v_ = den < 0 ? boost::multiprecision::cpp_rational(-num, -den)
                 : boost::multiprecision::cpp_rational(num, den);
  }

  /// Accepts "p" or "p/q" with optional sign, no whitespace inside the token.
  static Rational parse(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + s + "'"); };
    std::string t;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    auto check_int = [&](const std::string& u) {
      if (u.empty()) throw bad();
      std::size_t i = (u[0] == '+' || u[0] == '-') ? 1 : 0;
      if (i == u.size()) throw bad();
      for (; i < u.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(u[i]))) throw bad();
    };
    // cpp_int's string constructor rejects a leading '+'.
    auto to_big = [](const std::string& u) { return BigInt(u[0] == '+' ? u.substr(1) : u); };
    if (slash == std::string::npos) {
      check_int(t);
      return Rational(to_big(t));
    }
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d = to_big(den);
    if (d == 0) throw std::domain_error("rational with zero denominator: '" + s + "'");
    return Rational(to_big(num), d);
  }

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_negative() const { return v_ < 0; }
  bool is_integer() const { return den() == 1; }

  Rational operator-() const { return Rational(boost::multiprecision::cpp_rational(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rational(den(), num());
  }

  /// Integer power; negative exponent inverts (throws on zero base).
  Rational pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Rational acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const { return v_.str(); }
  double to_double() const { return v_.convert_to<double>(); }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

}  // namespace pathint::symexpr
