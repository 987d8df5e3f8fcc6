#include <doctest.h>

#include <cmath>

#include "pathint/oracle.hpp"
#include "pathint/reducer.hpp"

using namespace pathint::oracle;
using pathint::symexpr::Rational;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("equal-point propagator pins") {
  CHECK(rel(delta_at_zero(1.0, 1.0), 0.5) < 1e-13);
  CHECK(rel(delta_at_zero(1.0, 2.0), 0.25) < 1e-13);
  CHECK(rel(delta_at_zero(0.5, 1.0), 0.650850629866015834758658684256) < 1e-13);
  CHECK(rel(delta_at_zero(0.5, 2.0), 0.230110446958897745983729282687) < 1e-13);
  CHECK(rel(delta_at_zero(1.3, 1.0), 0.491356898990548298909407024265) < 1e-13);
  CHECK_THROWS_AS(delta_at_zero(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(delta_at_zero(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(delta_at_zero(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(delta_at_zero(1.0, -1.0), DomainError);
}

TEST_CASE("one-dimensional analytic values") {
  for (double w : {0.5, 1.0, 2.0}) {
    CHECK(rel(quadrature("D", w), 1.0 / (w * w)) < 1e-9);
    CHECK(rel(quadrature("D^2", w), 1.0 / (4 * w * w * w)) < 1e-9);
    CHECK(rel(quadrature("Dm^2", w), 1.0 / (4 * w)) < 1e-9);
    CHECK(rel(quadrature("D^4", w), 1.0 / (32 * std::pow(w, 5))) < 1e-9);
    CHECK(rel(quadrature("Dm^2*D^2", w), 1.0 / (32 * w * w * w)) < 1e-9);
    CHECK(rel(quadrature("Dm^4", w), 1.0 / (32 * w)) < 1e-9);
  }
  CHECK_THROWS_AS(quadrature("Dmm^2", 1.0), DivergentAtD1);
  CHECK_THROWS_AS(quadrature("Dmn^2", 1.0), DivergentAtD1);
  CHECK_THROWS_AS(quadrature("bogus", 1.0), DomainError);
}

TEST_CASE("closed forms against the quadrature") {
  for (double w : {0.5, 1.0, 2.0}) {
    for (const char* id : {"D", "D^2", "Dm^2"})
      CHECK(rel(closed_form(id, 1.0, w), quadrature(id, w)) < 1e-9);
  }
  CHECK_THROWS_AS(closed_form("D^4", 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(closed_form("D", 2.5, 1.0), DomainError);
}

TEST_CASE("reducer output matches the master formula across dimensions") {
  for (const char* id : {"D", "D^2", "Dm^2", "Dmm^2", "Dmn^2"}) {
    for (auto dim : {Rational(7, 10), Rational(1), Rational(13, 10)}) {
      auto rv = reducer_value(id, dim, 1.0);
      REQUIRE_MESSAGE(rv.has_value(), id);
      CHECK(rel(*rv, closed_form(id, dim.to_double(), 1.0)) < 1e-12);
    }
  }
}

TEST_CASE("expression evaluation substitutes atoms only in one dimension") {
  using namespace pathint::symexpr;
  auto j4 = CanonicalExpr::term(BasisMonomial{0, 0, Atom::J4}, Coeff(Rational(32)));
  auto v = eval_expr(j4, Rational(1), 1.0);
  REQUIRE(v.has_value());
  CHECK(rel(*v, 1.0) < 1e-13);
  CHECK_FALSE(eval_expr(j4, Rational(13, 10), 1.0).has_value());
  auto id_atom = CanonicalExpr::term(BasisMonomial{0, 0, Atom::ID}, Coeff(Rational(1)));
  CHECK_FALSE(eval_expr(id_atom, Rational(1), 1.0).has_value());
  auto param = CanonicalExpr::term(BasisMonomial{1, 0, Atom::None}, Coeff::param());
  CHECK_THROWS_AS(eval_expr(param, Rational(1), 1.0), std::domain_error);
}

TEST_CASE("catalogue cross-check") {
  auto rows = oracle_check(1.0);
  CHECK(rows.size() == catalogue().size());
  CHECK(all_ok(rows));
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.max_rel_dev < 1e-9);
  }
  CHECK(all_ok(oracle_check(0.5)));
  CHECK(all_ok(oracle_check(2.0)));
}
