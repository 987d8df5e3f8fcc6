#include "pathint/canonical.hpp"

#include <sstream>

namespace pathint::symexpr {

std::string atom_str(Atom a) {
  switch (a) {
    case Atom::None: return "";
    case Atom::J4: return "J4";
    case Atom::ID: return "ID";
    case Atom::DiracZero: return "d0";
    case Atom::DiracDerivZero: return "dd0";
  }
  return "";
}

BasisMonomial BasisMonomial::times(const BasisMonomial& o) const {
  if (atom != Atom::None && o.atom != Atom::None)
    throw std::domain_error("monomial product would carry two opaque atoms");
  BasisMonomial r;
  r.d0_pow = d0_pow + o.d0_pow;
  r.omega_pow = omega_pow + o.omega_pow;
  r.atom = atom != Atom::None ? atom : o.atom;
  return r;
}

std::string BasisMonomial::str() const {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const std::string& base, int p) {
    if (p == 0) return;
    if (any) os << "*";
    os << base;
    if (p != 1) os << "^" << p;
    any = true;
  };
  put("D0", d0_pow);
  put("w", omega_pow);
  if (atom != Atom::None) {
    if (any) os << "*";
    os << atom_str(atom);
    any = true;
  }
  if (!any) return "1";
  return os.str();
}

CanonicalExpr CanonicalExpr::term(const BasisMonomial& m, const Coeff& c) {
  CanonicalExpr e;
  e.add_term(m, c);
  return e;
}

Coeff CanonicalExpr::coeff(const BasisMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff() : it->second;
}

CanonicalExpr CanonicalExpr::atom_part(Atom a) const {
  CanonicalExpr r;
  for (const auto& [m, c] : terms_)
    if (m.atom == a) r.add_term(m, c);
  return r;
}

void CanonicalExpr::add_term(const BasisMonomial& m, const Coeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CanonicalExpr operator+(const CanonicalExpr& a, const CanonicalExpr& b) {
  CanonicalExpr r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

CanonicalExpr operator-(const CanonicalExpr& a, const CanonicalExpr& b) { return a + (-b); }

CanonicalExpr CanonicalExpr::operator-() const {
  CanonicalExpr r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

CanonicalExpr CanonicalExpr::scaled(const Coeff& c) const {
  CanonicalExpr r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.add_term(m, k * c);
  return r;
}

CanonicalExpr operator*(const CanonicalExpr& a, const CanonicalExpr& b) {
  CanonicalExpr r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

CanonicalExpr CanonicalExpr::derivative_param() const {
  CanonicalExpr r;
  for (const auto& [m, c] : terms_) r.add_term(m, c.derivative_param());
  return r;
}

CanonicalExpr CanonicalExpr::eval_param(const Rational& a) const {
  CanonicalExpr r;
  for (const auto& [m, c] : terms_) r.add_term(m, c.eval_param(a));
  return r;
}

Rational CanonicalExpr::eval_at_d1(const Rational& omega) const {
  if (!(omega > Rational(0))) throw std::domain_error("frequency must be positive");
  Rational d0 = (Rational(2) * omega).inv();  // equal-point propagator at D = 1
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    if (m.atom != Atom::None)
      throw OpaqueResidue("cannot evaluate monomial '" + m.str() + "' at D = 1");
    if (!c.is_param_free())
      throw std::domain_error("coefficient still depends on the checking parameter: " + c.str());
    auto v = c.drat().eval(Rational(1));
    if (!v) throw PoleAtD1("coefficient " + c.str() + " has a pole at D = 1");
    acc += *v * d0.pow(m.d0_pow) * omega.pow(m.omega_pow);
  }
  return acc;
}

namespace {

// True when s is one balanced parenthesized group spanning the whole string.
bool wrapped(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')' && --depth == 0) return i + 1 == s.size();
  }
  return false;
}

}  // namespace

std::string CanonicalExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    std::string ms = m.str();
    bool composite = cs.find(' ') != std::string::npos && !wrapped(cs);
    bool neg = !composite && !wrapped(cs) && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (composite) cs = "(" + cs + ")";
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (ms == "1") os << cs;
    else if (cs == "1") os << ms;
    else os << cs << "*" << ms;
  }
  return os.str();
}

std::map<std::string, std::string> CanonicalExpr::to_string_map() const {
  std::map<std::string, std::string> r;
  for (const auto& [m, c] : terms_) r.emplace(m.str(), c.str());
  return r;
}

}  // namespace pathint::symexpr
