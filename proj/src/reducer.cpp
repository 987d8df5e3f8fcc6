#include "pathint/reducer.hpp"

#include <algorithm>
#include <random>

#ifdef PATHINT_HAVE_OPENMP
#include <omp.h>
#endif

namespace pathint::reducer {

using symexpr::Atom;
using symexpr::BasisMonomial;
using symexpr::CanonicalExpr;
using symexpr::DRat;
using symexpr::QPoly;

namespace {

bool is_plain(const ILine& l) { return l.idx.empty(); }
bool is_single(const ILine& l) { return l.idx.size() == 1; }
bool is_trace(const ILine& l) { return l.idx.size() == 2 && l.idx[0] == l.idx[1]; }
bool is_mixed(const ILine& l) { return l.idx.size() == 2 && l.idx[0] != l.idx[1]; }

struct Shape {
  int plain = 0, single = 0, mixed = 0, trace = 0, other = 0;
};

Shape shape_of(const IntegralTerm& t) {
  Shape s;
  for (const auto& l : t.lines) {
    if (is_plain(l)) ++s.plain;
    else if (is_single(l)) ++s.single;
    else if (is_mixed(l)) ++s.mixed;
    else if (is_trace(l)) ++s.trace;
    else ++s.other;
  }
  return s;
}

// Two single-derivative lines forming a mutually contracted pair.
bool singles_mutual(const IntegralTerm& t) {
  std::vector<int> cls;
  for (const auto& l : t.lines)
    if (is_single(l)) cls.push_back(l.idx[0]);
  return cls.size() == 2 && cls[0] == cls[1];
}

BasisMonomial monomial_of(const IntegralTerm& t, Atom atom = Atom::None) {
  return BasisMonomial{t.d0_pow, t.omega_pow, atom};
}

// Result of applying one rule: replacement terms plus directly emitted value.
struct Step {
  std::vector<IntegralTerm> successors;
  CanonicalExpr emitted;
};

struct Rule {
  const char* name;
  bool (*applicable)(const IntegralTerm&);
  Step (*apply)(const IntegralTerm&);
};

const DRat kHalfTwoMinusD = DRat(QPoly(symexpr::Rational(2)) - QPoly::variable(), QPoly(symexpr::Rational(2)));

const Rule kRules[] = {
    // Distributional factors at the origin vanish under dimensional
    // regularization.
    {"dirac-at-origin",
     [](const IntegralTerm& t) { return t.dirac_pow > 0 || t.dirac_deriv_pow > 0; },
     [](const IntegralTerm&) { return Step{}; }},

    // The derivative of the propagator vanishes at the origin.
    {"gradient-at-origin", [](const IntegralTerm& t) { return t.dm0_pow > 0; },
     [](const IntegralTerm&) { return Step{}; }},

    // Trace of the double derivative at the origin: w^2 times the equal-point
    // propagator (the Dirac part of the field equation vanishes there).
    {"trace-at-origin", [](const IntegralTerm& t) { return t.qdd0_pow > 0; },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       n.qdd0_pow -= 1;
       n.d0_pow += 1;
       n.omega_pow += 2;
       return Step{{n}, {}};
     }},

    // No factors left: the term is a pure monomial.
    {"emit-monomial",
     [](const IntegralTerm& t) { return t.lines.empty() && t.locals_clean(); },
     [](const IntegralTerm& t) {
       return Step{{}, CanonicalExpr::term(monomial_of(t), t.prefactor)};
     }},

    // A single plain line integrates to w^-2.
    {"volume-line",
     [](const IntegralTerm& t) {
       return t.locals_clean() && t.lines.size() == 1 && is_plain(t.lines[0]);
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       n.omega_pow -= 2;
       n.lines.clear();
       return Step{{}, CanonicalExpr::term(monomial_of(n), n.prefactor)};
     }},

    // The square of the propagator integrates to (2 - D)/2 * w^-2 * D0.
    {"self-energy-square",
     [](const IntegralTerm& t) {
       return t.locals_clean() && t.lines.size() == 2 && is_plain(t.lines[0]) &&
              is_plain(t.lines[1]);
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       n.omega_pow -= 2;
       n.d0_pow += 1;
       n.lines.clear();
       return Step{{}, CanonicalExpr::term(monomial_of(n), n.prefactor * symexpr::Coeff(kHalfTwoMinusD))};
     }},

    // The quartic self-integral is kept as an opaque atom.
    {"quartic-atom",
     [](const IntegralTerm& t) {
       return t.locals_clean() && t.lines.size() == 4 && shape_of(t).plain == 4;
     },
     [](const IntegralTerm& t) {
       return Step{{}, CanonicalExpr::term(monomial_of(t, Atom::J4), t.prefactor)};
     }},

    // A mutually contracted pair of mixed double derivatives integrates like
    // the pair of traces (derivative transfer swaps the index pairs).
    {"mixed-square-to-trace",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       return t.lines.size() == 2 && s.mixed == 2;
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       int c = n.lines[0].idx[0], d = n.lines[0].idx[1];
       n.lines[0] = ILine{{c, c}};
       n.lines[1] = ILine{{d, d}};
       n.canonicalize();
       return Step{{n}, {}};
     }},

    // Same swap under two spectator propagators; the finite remainder of the
    // tensor split is kept as the opaque atom ID.
    {"mixed-square-split",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       return t.locals_clean() && t.lines.size() == 4 && s.mixed == 2 && s.plain == 2;
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       std::vector<std::size_t> mixed_at;
       for (std::size_t i = 0; i < n.lines.size(); ++i)
         if (is_mixed(n.lines[i])) mixed_at.push_back(i);
       int c = n.lines[mixed_at[0]].idx[0], d = n.lines[mixed_at[0]].idx[1];
       n.lines[mixed_at[0]] = ILine{{c, c}};
       n.lines[mixed_at[1]] = ILine{{d, d}};
       n.canonicalize();
       return Step{{n}, CanonicalExpr::term(monomial_of(t, Atom::ID), t.prefactor)};
     }},

    // Mixed double derivative contracted against two single derivatives with
    // one spectator: -1/2 ID + w^2 * (propagator^2 * gradient pair).
    {"gradient-mixed-split",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       if (!(t.locals_clean() && t.lines.size() == 4 && s.mixed == 1 && s.single == 2 &&
             s.plain == 1))
         return false;
       return !singles_mutual(t);  // singles contract against the mixed line
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       n.omega_pow += 2;
       n.lines.clear();
       n.lines.push_back({{}});
       n.lines.push_back({{}});
       n.lines.push_back({{0}});
       n.lines.push_back({{0}});
       n.canonicalize();
       CanonicalExpr e = CanonicalExpr::term(monomial_of(t, Atom::ID),
                                             t.prefactor * symexpr::Coeff(symexpr::Rational(-1, 2)));
       return Step{{n}, e};
     }},

    // Two mutually contracted gradient pairs: +ID - 3 w^2 * (propagator^2 *
    // gradient pair).
    {"gradient-quartet-split",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       if (!(t.locals_clean() && t.lines.size() == 4 && s.single == 4)) return false;
       // Four singles forming two mutual pairs.
       std::vector<int> cls;
       for (const auto& l : t.lines) cls.push_back(l.idx[0]);
       std::sort(cls.begin(), cls.end());
       return cls[0] == cls[1] && cls[2] == cls[3] && cls[1] != cls[2];
     },
     [](const IntegralTerm& t) {
       IntegralTerm n = t;
       n.prefactor = n.prefactor * symexpr::Coeff(symexpr::Rational(-3));
       n.omega_pow += 2;
       n.lines.clear();
       n.lines.push_back({{}});
       n.lines.push_back({{}});
       n.lines.push_back({{0}});
       n.lines.push_back({{0}});
       n.canonicalize();
       return Step{{n}, CanonicalExpr::term(monomial_of(t, Atom::ID), t.prefactor)};
     }},

    // Mutually contracted gradient pair with only plain spectators: transfer
    // one derivative across, -1/(k+1) * trace * propagator^(k+1).
    {"derivative-transfer",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       return s.single == 2 && s.mixed == 0 && s.trace == 0 && s.other == 0 &&
              static_cast<int>(t.lines.size()) == s.single + s.plain && singles_mutual(t);
     },
     [](const IntegralTerm& t) {
       int k = shape_of(t).plain;
       IntegralTerm n = t;
       n.prefactor = n.prefactor * symexpr::Coeff(symexpr::Rational(-1, k + 1));
       n.lines.clear();
       n.lines.push_back({{0, 0}});
       for (int i = 0; i < k + 1; ++i) n.lines.push_back({{}});
       n.canonicalize();
       return Step{{n}, {}};
     }},

    // Field equation on a trace line: the Dirac part collapses the relative
    // coordinate (all other factors move to the origin), the mass part turns
    // the trace into a plain line.
    {"field-equation",
     [](const IntegralTerm& t) {
       Shape s = shape_of(t);
       if (s.trace == 0 || s.mixed > 0 || s.other > 0) return false;
       return true;
     },
     [](const IntegralTerm& t) {
       std::size_t at = 0;
       while (!is_trace(t.lines[at])) ++at;
       IntegralTerm collapsed = t;
       collapsed.prefactor = -collapsed.prefactor;
       collapsed.lines.clear();
       for (std::size_t i = 0; i < t.lines.size(); ++i) {
         if (i == at) continue;
         const ILine& l = t.lines[i];
         if (is_plain(l)) collapsed.d0_pow += 1;
         else if (is_single(l)) collapsed.dm0_pow += 1;
         else collapsed.qdd0_pow += 1;
       }
       IntegralTerm massed = t;
       massed.omega_pow += 2;
       massed.lines[at] = ILine{{}};
       massed.canonicalize();
       return Step{{collapsed, massed}, {}};
     }},
};

constexpr std::size_t kRuleCount = sizeof(kRules) / sizeof(kRules[0]);

std::vector<std::size_t> applicable_indices(const IntegralTerm& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kRuleCount; ++i)
    if (kRules[i].applicable(t)) out.push_back(i);
  return out;
}

CanonicalExpr reduce_impl(const IntegralTerm& start, TraceLog* log, std::mt19937* rng) {
  IntegralTerm first = start;
  first.canonicalize();
  std::vector<IntegralTerm> work{first};
  CanonicalExpr result;
  while (!work.empty()) {
    std::size_t pick = work.size() - 1;
    if (rng && work.size() > 1)
      pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng);
    IntegralTerm cur = work[pick];
    work.erase(work.begin() + static_cast<long>(pick));
    if (cur.prefactor.is_zero()) continue;

    auto rules = applicable_indices(cur);
    if (rules.empty()) throw IrreducibleTerm(cur);
    std::size_t ri = rules.front();
    if (rng && rules.size() > 1)
      ri = rules[std::uniform_int_distribution<std::size_t>(0, rules.size() - 1)(*rng)];

    Step step = kRules[ri].apply(cur);
    if (log) {
      RuleApplication ra;
      ra.rule = kRules[ri].name;
      ra.before = cur.str();
      for (const auto& s : step.successors) ra.after.push_back(s.str());
      if (!step.emitted.is_zero()) ra.after.push_back("value " + step.emitted.str());
      if (ra.after.empty()) ra.after.push_back("0");
      log->push_back(std::move(ra));
    }
    for (auto& s : step.successors) work.push_back(std::move(s));
    result = result + step.emitted;
  }
  return result;
}

}  // namespace

CanonicalExpr reduce(const IntegralTerm& t, TraceLog* log) { return reduce_impl(t, log, nullptr); }

CanonicalExpr reduce_shuffled(const IntegralTerm& t, unsigned seed) {
  std::mt19937 rng(seed);
  return reduce_impl(t, nullptr, &rng);
}

std::vector<std::string> applicable_rules(const IntegralTerm& t) {
  std::vector<std::string> out;
  for (std::size_t i : applicable_indices(t)) out.push_back(kRules[i].name);
  return out;
}

std::vector<IntegralTerm> ibp(const IntegralTerm& t, const Move& move) {
  if (move.line >= t.lines.size())
    throw InvalidMove("line index " + std::to_string(move.line) + " out of range");
  const ILine& src = t.lines[move.line];
  if (move.slot >= src.idx.size())
    throw InvalidMove("slot index " + std::to_string(move.slot) + " out of range for line with " +
                      std::to_string(src.idx.size()) + " derivative indices");
  int cls = src.idx[move.slot];
  std::vector<IntegralTerm> out;
  for (std::size_t j = 0; j < t.lines.size(); ++j) {
    if (j == move.line) continue;
    IntegralTerm n = t;
    n.prefactor = -n.prefactor;
    n.lines[move.line].idx.erase(n.lines[move.line].idx.begin() + static_cast<long>(move.slot));
    n.lines[j].idx.push_back(cls);
    n.canonicalize();
    out.push_back(std::move(n));
  }
  return out;
}

OrderResult reduce_order(const std::vector<wick::ContractionTerm>& terms, int order, Exec exec,
                         TraceLog* log) {
  struct Row {
    wick::DiagramClass cls;
    CanonicalExpr value;
  };
  std::vector<Row> rows(terms.size());

#ifdef PATHINT_HAVE_OPENMP
  if (exec == Exec::Parallel && !log) {
    std::vector<std::exception_ptr> errors(terms.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(terms.size()); ++i) {
      try {
        auto idx = static_cast<std::size_t>(i);
        rows[idx].cls = wick::classify(terms[idx]);
        rows[idx].value = reduce(from_contraction(terms[idx]), nullptr);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else
#endif
  {
    (void)exec;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      rows[i].cls = wick::classify(terms[i]);
      rows[i].value = reduce(from_contraction(terms[i]), log);
    }
  }

  OrderResult r;
  r.order = order;
  const wick::DiagramClass class_order[] = {
      wick::DiagramClass::Local, wick::DiagramClass::ThreeBubble, wick::DiagramClass::Watermelon,
      wick::DiagramClass::JacobianNonlocal};
  for (auto cls : class_order) {
    ClassResult cr;
    cr.cls = cls;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (rows[i].cls != cls) continue;
      cr.subtotal = cr.subtotal + rows[i].value;
      cr.contributions.emplace_back(terms[i], rows[i].value);
    }
    if (!cr.contributions.empty()) r.classes.push_back(std::move(cr));
  }
  for (const auto& cr : r.classes) r.total = r.total + cr.subtotal;
  return r;
}

void require_cancellation(const OrderResult& r) {
  if (!r.total.is_zero()) throw CancellationFailure(r.order, r.total);
}

bool check_square_completion_identity() {
  CanonicalExpr mixed = reduce(IntegralTerm::parse("Dmn^2"));
  CanonicalExpr grad = reduce(IntegralTerm::parse("Dm^2"));
  CanonicalExpr plain = reduce(IntegralTerm::parse("D^2"));
  BasisMonomial w2{0, 2, Atom::None};
  BasisMonomial w4{0, 4, Atom::None};
  CanonicalExpr sum = mixed +
                      grad * CanonicalExpr::term(w2, symexpr::Coeff(symexpr::Rational(2))) +
                      plain * CanonicalExpr::term(w4, symexpr::Coeff(symexpr::Rational(1)));
  return sum.is_zero();
}

bool check_field_equation_integral() {
  CanonicalExpr lhs = reduce(IntegralTerm::parse("Dmm"));
  CanonicalExpr rhs =
      CanonicalExpr::term(BasisMonomial{}, symexpr::Coeff(symexpr::Rational(-1))) +
      reduce(IntegralTerm::parse("D")) *
          CanonicalExpr::term(BasisMonomial{0, 2, Atom::None}, symexpr::Coeff(symexpr::Rational(1)));
  return lhs == rhs;
}

}  // namespace pathint::reducer
