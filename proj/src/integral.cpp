#include "pathint/integral.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pathint::reducer {

void IntegralTerm::canonicalize() {
  std::map<int, int> count;
  for (auto& l : lines) {
    std::sort(l.idx.begin(), l.idx.end());
    for (int c : l.idx) ++count[c];
  }
  for (const auto& [c, n] : count)
    if (n != 2)
      throw std::domain_error("contraction class " + std::to_string(c) +
                              " appears " + std::to_string(n) + " times, expected 2");
  std::vector<int> classes;
  for (const auto& [c, n] : count) classes.push_back(c);

  if (classes.empty()) {
    std::sort(lines.begin(), lines.end());
    return;
  }

  // Try every relabeling of the classes and keep the minimal sorted line
  // vector. Class counts stay tiny (<= 3 in practice), so brute force is fine.
  std::vector<int> perm(classes.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::vector<ILine> best;
  bool have = false;
  std::sort(classes.begin(), classes.end());
  std::vector<int> relabel_order = perm;
  do {
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < classes.size(); ++i)
      relabel[classes[i]] = relabel_order[i];
    std::vector<ILine> cand = lines;
    for (auto& l : cand) {
      for (int& c : l.idx) c = relabel[c];
      std::sort(l.idx.begin(), l.idx.end());
    }
    std::sort(cand.begin(), cand.end());
    if (!have || cand < best) {
      best = std::move(cand);
      have = true;
    }
  } while (std::next_permutation(relabel_order.begin(), relabel_order.end()));
  lines = best;
}

namespace {

std::string token_for(const ILine& l) {
  if (l.idx.empty()) return "D";
  std::string s = "D";
  std::map<int, char> letter;
  char next = 'm';
  for (int c : l.idx) {
    auto it = letter.find(c);
    if (it == letter.end()) {
      it = letter.emplace(c, next).first;
      next = next == 'm' ? 'n' : static_cast<char>(next + 1);
    }
    s += it->second;
  }
  return s;
}

}  // namespace

std::string IntegralTerm::signature() const {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const std::string& tok, int p) {
    if (p == 0) return;
    if (any) os << "*";
    os << tok;
    if (p != 1) os << "^" << p;
    any = true;
  };
  put("d0", dirac_pow);
  put("dd0", dirac_deriv_pow);
  put("Dmm0", qdd0_pow);
  put("Dm0", dm0_pow);
  put("D0", d0_pow);
  put("w", omega_pow);
  std::vector<std::string> toks;
  for (const auto& l : lines) toks.push_back(token_for(l));
  std::sort(toks.begin(), toks.end());
  std::size_t i = 0;
  while (i < toks.size()) {
    std::size_t j = i;
    while (j < toks.size() && toks[j] == toks[i]) ++j;
    put(toks[i], static_cast<int>(j - i));
    i = j;
  }
  if (!any) return "1";
  return os.str();
}

std::string IntegralTerm::str() const {
  std::string cs = prefactor.str();
  bool composite = cs.find(' ') != std::string::npos;
  std::string sig = signature();
  if (sig == "1") return composite ? "(" + cs + ")" : cs;
  if (cs == "1") return sig;
  if (cs == "-1") return "-" + sig;
  return (composite ? "(" + cs + ")" : cs) + "*" + sig;
}

IntegralTerm IntegralTerm::parse(const std::string& text) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("malformed integrand '" + text + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw bad("empty");

  IntegralTerm t;
  int n_plain = 0, n_single = 0, n_mixed = 0, n_trace = 0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t star = s.find('*', pos);
    std::string tok = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
    pos = star == std::string::npos ? s.size() + 1 : star + 1;
    if (tok.empty()) throw bad("empty factor");
    int exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      std::string es = tok.substr(caret + 1);
      std::size_t i = (es.size() > 1 && es[0] == '-') ? 1 : 0;
      if (es.empty() || i == es.size() ||
          !std::all_of(es.begin() + static_cast<long>(i), es.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw bad("malformed exponent in '" + tok + "'");
      exp = std::stoi(es);
      tok = tok.substr(0, caret);
    }
    if (tok != "w" && exp < 1) throw bad("exponent must be positive for '" + tok + "'");
    if (tok == "D") n_plain += exp;
    else if (tok == "Dm") n_single += exp;
    else if (tok == "Dmn") n_mixed += exp;
    else if (tok == "Dmm") n_trace += exp;
    else if (tok == "D0") t.d0_pow += exp;
    else if (tok == "d0") t.dirac_pow += exp;
    else if (tok == "dd0") t.dirac_deriv_pow += exp;
    else if (tok == "Dm0") t.dm0_pow += exp;
    else if (tok == "Dmm0") t.qdd0_pow += exp;
    else if (tok == "w") t.omega_pow += exp;
    else if (tok == "1" && exp == 1) { /* unit factor */ }
    else throw bad("unknown factor '" + tok + "'");
    if (star == std::string::npos) break;
  }

  int next_class = 0;
  for (int i = 0; i < n_trace; ++i) {
    int c = next_class++;
    t.lines.push_back({{c, c}});
  }
  if (n_mixed == 0) {
    if (n_single % 2 != 0) throw bad("odd number of single-derivative factors");
    for (int i = 0; i < n_single / 2; ++i) {
      int c = next_class++;
      t.lines.push_back({{c}});
      t.lines.push_back({{c}});
    }
  } else if (n_mixed == 1 && n_single == 2) {
    int c = next_class++, d = next_class++;
    t.lines.push_back({{c, d}});
    t.lines.push_back({{c}});
    t.lines.push_back({{d}});
  } else if (n_mixed == 2 && n_single == 0) {
    int c = next_class++, d = next_class++;
    t.lines.push_back({{c, d}});
    t.lines.push_back({{c, d}});
  } else {
    throw bad("cannot infer the index contraction pattern");
  }
  for (int i = 0; i < n_plain; ++i) t.lines.push_back({{}});
  t.canonicalize();
  return t;
}

IntegralTerm from_contraction(const wick::ContractionTerm& t) {
  IntegralTerm r;
  r.prefactor = t.multiplicity;
  if (t.loops_dotted % 2 != 0) r.prefactor = -r.prefactor;
  r.g_order = t.g_order;
  r.omega_pow = t.omega_power;
  r.d0_pow = t.loops_plain;
  r.qdd0_pow = t.loops_dotted;
  r.dirac_pow = t.delta_power;
  int folds = 0;
  for (const auto& line : t.cross) {
    ILine l;
    if (line.deriv_a) l.idx.push_back(0);
    if (line.deriv_b) l.idx.push_back(1);
    folds += line.deriv_b;
    r.lines.push_back(std::move(l));
  }
  if (folds % 2 != 0) r.prefactor = -r.prefactor;
  r.canonicalize();
  return r;
}

}  // namespace pathint::reducer
