#include "pathint/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace pathint::symexpr {

namespace {
const Rational kZero(0);
}

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QPoly QPoly::monomial(const Rational& c, int k) {
  if (k < 0) throw std::invalid_argument("negative monomial degree");
  QPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  p.c_.back() = c;
  return p;
}

const Rational& QPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(k)];
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] += a.c_[i];
    if (i < b.c_.size()) r.c_[i] += b.c_[i];
  }
  r.trim();
  return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

QPoly QPoly::scaled(const Rational& s) const {
  QPoly r;
  if (s.is_zero()) return r;
  r.c_ = c_;
  for (auto& c : r.c_) c *= s;
  return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  QPoly q, r = *this;
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int k = r.degree() - d.degree();
    Rational c = r.leading() / d.leading();
    QPoly t = QPoly::monomial(c, k);
    q = q + t;
    r = r - t * d;
  }
  return {q, r};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.scaled(a.leading().inv());
}

QPoly QPoly::derivative() const {
  QPoly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rational(static_cast<long long>(i));
  r.trim();
  return r;
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeff(k);
    if (c.is_zero()) continue;
    Rational mag = c.is_negative() ? -c : c;
    if (first) {
      if (c.is_negative()) os << "-";
      first = false;
    } else {
      os << (c.is_negative() ? " - " : " + ");
    }
    bool unit = mag.is_one();
    if (!unit || k == 0) os << mag.str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

DRat::DRat(QPoly num, QPoly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = QPoly();
    den_ = QPoly(Rational(1));
    return;
  }
  QPoly g = QPoly::gcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  Rational lead = den.leading();
  num_ = num.scaled(lead.inv());
  den_ = den.scaled(lead.inv());
}

DRat DRat::operator-() const {
  DRat r = *this;
  r.num_ = -r.num_;
  return r;
}

DRat operator+(const DRat& a, const DRat& b) {
  return DRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

DRat operator-(const DRat& a, const DRat& b) { return a + (-b); }

DRat operator*(const DRat& a, const DRat& b) { return DRat(a.num_ * b.num_, a.den_ * b.den_); }

DRat operator/(const DRat& a, const DRat& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return DRat(a.num_ * b.den_, a.den_ * b.num_);
}

std::optional<Rational> DRat::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(x) / d;
}

std::string DRat::str() const {
  if (den_ == QPoly(Rational(1))) return num_.str("D");
  std::string n = num_.str("D");
  std::string d = den_.str("D");
  auto wrap = [](const std::string& s) {
    bool atomic = s.find(' ') == std::string::npos;
    return atomic ? s : "(" + s + ")";
  };
  return wrap(n) + "/" + wrap(d);
}

void Coeff::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Coeff::set(int k, const DRat& v) {
  if (v.is_zero()) return;
  if (static_cast<int>(c_.size()) <= k) c_.resize(static_cast<std::size_t>(k) + 1, DRat());
  c_[static_cast<std::size_t>(k)] = v;
}

const DRat& Coeff::coeff(int k) const {
  static const DRat zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(k)];
}

const DRat& Coeff::drat() const {
  static const DRat zero;
  if (c_.empty()) return zero;
  if (c_.size() > 1) throw std::logic_error("coefficient depends on the checking parameter");
  return c_[0];
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  Coeff r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), DRat());
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] = r.c_[i] + a.c_[i];
    if (i < b.c_.size()) r.c_[i] = r.c_[i] + b.c_[i];
  }
  r.trim();
  return r;
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, DRat());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

Coeff Coeff::derivative_param() const {
  Coeff r;
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.set(static_cast<int>(i) - 1, c_[i] * DRat(Rational(static_cast<long long>(i))));
  r.trim();
  return r;
}

Coeff Coeff::eval_param(const Rational& a) const {
  DRat acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * DRat(a) + c_[i];
  Coeff r;
  r.set(0, acc);
  return r;
}

std::string Coeff::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = param_degree(); k >= 0; --k) {
    const DRat& c = coeff(k);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool composite = cs.find(' ') != std::string::npos;
    bool neg = !composite && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (composite) cs = "(" + cs + ")";
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << "a";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

}  // namespace pathint::symexpr
