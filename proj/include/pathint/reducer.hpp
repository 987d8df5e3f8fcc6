#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathint/exec.hpp"
#include "pathint/integral.hpp"

namespace pathint::reducer {

/// Raised when no rewrite rule applies to a term. Carries the offending term.
class IrreducibleTerm : public std::runtime_error {
 public:
  explicit IrreducibleTerm(IntegralTerm t)
      : std::runtime_error("no rewrite rule applies to " + t.str()), term_(std::move(t)) {}
  const IntegralTerm& term() const { return term_; }

 private:
  IntegralTerm term_;
};

/// Raised when a perturbative order fails to cancel. Carries the residue.
class CancellationFailure : public std::runtime_error {
 public:
  CancellationFailure(int order, symexpr::CanonicalExpr residue)
      : std::runtime_error("order " + std::to_string(order) +
                           " does not cancel, residue " + residue.str()),
        order_(order),
        residue_(std::move(residue)) {}
  int order() const { return order_; }
  const symexpr::CanonicalExpr& residue() const { return residue_; }

 private:
  int order_;
  symexpr::CanonicalExpr residue_;
};

/// Raised for a derivative-transfer move that does not address a derivative
/// index slot of the term.
class InvalidMove : public std::invalid_argument {
 public:
  explicit InvalidMove(const std::string& what) : std::invalid_argument(what) {}
};

/// One applied rewrite, for --trace output.
struct RuleApplication {
  std::string rule;
  std::string before;
  std::vector<std::string> after;  // successor terms and/or emitted values
};

using TraceLog = std::vector<RuleApplication>;

/// Rewrites the term to canonical form by the deterministic rule priority.
/// Throws IrreducibleTerm when the term leaves the supported family.
symexpr::CanonicalExpr reduce(const IntegralTerm& t, TraceLog* log = nullptr);

/// Same result as reduce, but picks randomly among the applicable rules at
/// each step (seeded). Used by the confluence tests.
symexpr::CanonicalExpr reduce_shuffled(const IntegralTerm& t, unsigned seed);

/// Names of the rules that currently apply to the term, in priority order.
std::vector<std::string> applicable_rules(const IntegralTerm& t);

/// Derivative-transfer move: take the slot-th derivative index of the
/// line-th factor and move it onto each other factor in turn, negating. The
/// sum of the results equals the original integral; an empty result means
/// the original integrates to zero. Throws InvalidMove on a bad address.
struct Move {
  std::size_t line = 0;
  std::size_t slot = 0;
};
std::vector<IntegralTerm> ibp(const IntegralTerm& t, const Move& move);

/// Per-class reduction of one perturbative order.
struct ClassResult {
  wick::DiagramClass cls;
  symexpr::CanonicalExpr subtotal;
  std::vector<std::pair<wick::ContractionTerm, symexpr::CanonicalExpr>> contributions;
};

struct OrderResult {
  int order = 0;
  std::vector<ClassResult> classes;
  symexpr::CanonicalExpr total;

  const ClassResult* find(wick::DiagramClass c) const {
    for (const auto& cr : classes)
      if (cr.cls == c) return &cr;
    return nullptr;
  }
};

OrderResult reduce_order(const std::vector<wick::ContractionTerm>& terms, int order,
                         Exec exec = Exec::Serial, TraceLog* log = nullptr);

/// Throws CancellationFailure when the order total is not the zero expression.
void require_cancellation(const OrderResult& r);

/// The integral of the contracted double derivative square plus twice w^2
/// times the gradient square plus w^4 times the propagator square vanishes
/// identically (the integrand is a complete square of the field equation in
/// momentum space). Returns true when the engine reproduces this.
bool check_square_completion_identity();

/// The integrated field equation: the integral of the trace line equals -1
/// plus w^2 times the integral of the plain line, structurally.
bool check_field_equation_integral();

}  // namespace pathint::reducer
