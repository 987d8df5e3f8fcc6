#include "pathint/transform.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pathint::action {

namespace {
const Coeff kZeroCoeff;
}

void CouplingPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CouplingPoly CouplingPoly::monomial(const Coeff& c, int gpow) {
  CouplingPoly p;
  if (gpow < 0) throw std::invalid_argument("negative coupling power");
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(gpow) + 1, Coeff());
  p.c_.back() = c;
  return p;
}

const Coeff& CouplingPoly::coeff(int gpow) const {
  if (gpow < 0 || gpow >= static_cast<int>(c_.size())) return kZeroCoeff;
  return c_[static_cast<std::size_t>(gpow)];
}

CouplingPoly CouplingPoly::operator-() const {
  CouplingPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CouplingPoly operator+(const CouplingPoly& a, const CouplingPoly& b) {
  CouplingPoly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Coeff());
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] = r.c_[i] + a.c_[i];
    if (i < b.c_.size()) r.c_[i] = r.c_[i] + b.c_[i];
  }
  r.trim();
  return r;
}

CouplingPoly operator-(const CouplingPoly& a, const CouplingPoly& b) { return a + (-b); }

CouplingPoly CouplingPoly::mul_truncated(const CouplingPoly& o, int max_order) const {
  CouplingPoly r;
  if (is_zero() || o.is_zero()) return r;
  int top = std::min(static_cast<int>(c_.size() + o.c_.size()) - 2, max_order);
  if (top < 0) return r;
  r.c_.assign(static_cast<std::size_t>(top) + 1, Coeff());
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (static_cast<int>(i + j) > max_order) continue;
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
  r.trim();
  return r;
}

CouplingPoly CouplingPoly::scaled(const Coeff& s) const {
  CouplingPoly r;
  if (s.is_zero()) return r;
  r.c_ = c_;
  for (auto& c : r.c_) c = c * s;
  return r;
}

int CouplingPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

std::string CouplingPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    bool composite = cs.find(' ') != std::string::npos;
    bool neg = !composite && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (composite) cs = "(" + cs + ")";
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (i == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << "g";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {

// Parses one "power:coeff" coefficient: sum of '+'/'-'-separated terms, each a
// '*'-separated product of factors `rational | g[^k] | a[^k]`.
CouplingPoly parse_coeff(const std::string& text, const std::string& ctx) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("malformed transform coefficient '" + ctx + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw bad("empty coefficient");

  CouplingPoly result;
  std::size_t pos = 0;
  bool first_term = true;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = Rational(-1);
      ++pos;
    } else if (!first_term) {
      throw bad("expected '+' or '-' between terms");
    }
    first_term = false;
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw bad("empty term");

    Rational scalar = sign;
    int gpow = 0, apow = 0;
    std::size_t tp = 0;
    while (tp < term.size()) {
      std::size_t fe = term.find('*', tp);
      if (fe == std::string::npos) fe = term.size();
      std::string factor = term.substr(tp, fe - tp);
      tp = fe + (fe < term.size() ? 1 : 0);
      if (factor.empty()) throw bad("empty factor");
      int exp = 1;
      auto caret = factor.find('^');
      if (caret != std::string::npos) {
        std::string es = factor.substr(caret + 1);
        if (es.empty() || !std::all_of(es.begin(), es.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            }))
          throw bad("malformed exponent in '" + factor + "'");
        exp = std::stoi(es);
        factor = factor.substr(0, caret);
      }
      if (factor == "g") {
        gpow += exp;
      } else if (factor == "a") {
        apow += exp;
      } else {
        Rational v;
        try {
          v = Rational::parse(factor);
        } catch (const std::exception&) {
          throw bad("unknown factor '" + factor + "'");
        }
        scalar *= v.pow(exp);
      }
    }
    Coeff c = Coeff(scalar);
    for (int i = 0; i < apow; ++i) c = c * Coeff::param();
    result = result + CouplingPoly::monomial(c, gpow);
  }
  return result;
}

}  // namespace

void TransformSeries::validate() const {
  if (terms_.empty() || terms_.front().power != 1)
    throw MissingLinearTerm("transform must start with the linear term q");
  if (!(terms_.front().coeff == CouplingPoly(Coeff(Rational(1)))))
    throw MissingLinearTerm("the linear term must have coefficient 1");
  int prev = 0;
  for (const auto& t : terms_) {
    if (t.power % 2 == 0) throw EvenPower("transform power " + std::to_string(t.power) + " is even");
    if (t.power <= prev) throw std::invalid_argument("transform powers must strictly increase");
    if (t.power > 1 && !t.coeff.is_zero() && t.coeff.valuation() < 1)
      throw std::invalid_argument("coefficient of q^" + std::to_string(t.power) +
                                  " must vanish at g = 0");
    prev = t.power;
  }
}

TransformSeries TransformSeries::default_transform() {
  return parse("1:1,3:-1/3*g,5:1/5*a*g^2");
}

TransformSeries TransformSeries::identity() { return parse("1:1"); }

TransformSeries TransformSeries::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "paper-default") return default_transform();
  if (s == "identity") {
    TransformSeries t;
    t.terms_.push_back({1, CouplingPoly(Coeff(Rational(1)))});
    t.validate();
    return t;
  }

  TransformSeries t;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string entry = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? s.size() + 1 : comma + 1;
    if (entry.empty()) throw std::invalid_argument("empty transform entry");
    auto colon = entry.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("transform entry '" + entry + "' lacks ':'");
    std::string ps = entry.substr(0, colon);
    if (ps.empty() || !std::all_of(ps.begin(), ps.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      throw std::invalid_argument("malformed transform power '" + ps + "'");
    int power = std::stoi(ps);
    if (power > 21) throw std::invalid_argument("transform power too large");
    t.terms_.push_back({power, parse_coeff(entry.substr(colon + 1), entry)});
    if (comma == std::string::npos) break;
  }
  t.validate();
  return t;
}

std::string TransformSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = t.coeff.str();
    bool neg = cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos;
    if (first) {
      if (neg) {
        os << "-";
        cs = cs.substr(1);
      }
      first = false;
    } else if (neg) {
      os << " - ";
      cs = cs.substr(1);
    } else {
      os << " + ";
    }
    bool composite = cs.find(' ') != std::string::npos;
    if (composite) cs = "(" + cs + ")";
    if (cs == "1") {
      os << "q";
    } else {
      os << cs << "*q";
    }
    if (t.power != 1) os << "^" << t.power;
  }
  return os.str();
}

}  // namespace pathint::action
