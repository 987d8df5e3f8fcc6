#include <doctest.h>

#include "pathint/action.hpp"

using namespace pathint::action;
using pathint::symexpr::Coeff;
using pathint::symexpr::Rational;

namespace {

const VertexTerm* find(const std::vector<VertexTerm>& vs, int g, int qdot, int q, bool jac) {
  for (const auto& v : vs)
    if (v.g_order == g && v.qdot_power == qdot && v.q_power == q && v.jacobian == jac) return &v;
  return nullptr;
}

Coeff a_coeff() { return Coeff::param(); }

}  // namespace

TEST_CASE("default transform interaction vertices") {
  ModelParams p;
  auto vs = expand_interaction(TransformSeries::default_transform(), p);
  REQUIRE(vs.size() == 4);

  const VertexTerm* kin1 = find(vs, 1, 2, 2, false);
  REQUIRE(kin1);
  CHECK(kin1->coefficient == Coeff(Rational(-1)));
  CHECK(kin1->omega_power == 0);

  const VertexTerm* pot1 = find(vs, 1, 0, 4, false);
  REQUIRE(pot1);
  CHECK(pot1->coefficient == Coeff(Rational(-1, 3)));
  CHECK(pot1->omega_power == 2);

  const VertexTerm* kin2 = find(vs, 2, 2, 4, false);
  REQUIRE(kin2);
  CHECK(kin2->coefficient == a_coeff() + Coeff(Rational(1, 2)));

  const VertexTerm* pot2 = find(vs, 2, 0, 6, false);
  REQUIRE(pot2);
  CHECK(pot2->coefficient == a_coeff() * Coeff(Rational(1, 5)) + Coeff(Rational(1, 18)));
  CHECK(pot2->omega_power == 2);

  for (const auto& v : vs) CHECK(v.field_count() % 2 == 0);
}

TEST_CASE("default transform measure vertices") {
  ModelParams p;
  auto vs = expand_jacobian(TransformSeries::default_transform(), p);
  REQUIRE(vs.size() == 2);

  const VertexTerm* j1 = find(vs, 1, 0, 2, true);
  REQUIRE(j1);
  CHECK(j1->coefficient == Coeff(Rational(1)));

  const VertexTerm* j2 = find(vs, 2, 0, 4, true);
  REQUIRE(j2);
  CHECK(j2->coefficient == Coeff(Rational(1, 2)) - a_coeff());
  for (const auto& v : vs) CHECK(v.omega_power == 0);
}

TEST_CASE("truncated cubic transform") {
  ModelParams p;
  auto f = TransformSeries::parse("1:1,3:-1/3*g");
  auto vs = expand_interaction(f, p);
  const VertexTerm* kin2 = find(vs, 2, 2, 4, false);
  REQUIRE(kin2);
  CHECK(kin2->coefficient == Coeff(Rational(1, 2)));
  const VertexTerm* pot2 = find(vs, 2, 0, 6, false);
  REQUIRE(pot2);
  CHECK(pot2->coefficient == Coeff(Rational(1, 18)));
  auto js = expand_jacobian(f, p);
  const VertexTerm* j2 = find(js, 2, 0, 4, true);
  REQUIRE(j2);
  CHECK(j2->coefficient == Coeff(Rational(1, 2)));
}

TEST_CASE("positive cubic transform flips measure signs") {
  ModelParams p;
  auto js = expand_jacobian(TransformSeries::parse("1:1,3:g"), p);
  const VertexTerm* j1 = find(js, 1, 0, 2, true);
  REQUIRE(j1);
  CHECK(j1->coefficient == Coeff(Rational(-3)));
  const VertexTerm* j2 = find(js, 2, 0, 4, true);
  REQUIRE(j2);
  CHECK(j2->coefficient == Coeff(Rational(9, 2)));
}

TEST_CASE("identity transform produces no vertices") {
  ModelParams p;
  CHECK(expand_interaction(TransformSeries::identity(), p).empty());
  CHECK(expand_jacobian(TransformSeries::identity(), p).empty());
}

TEST_CASE("numeric checking parameter substitution") {
  ModelParams p;
  p.a_value = Rational(1, 9);
  auto vs = expand_interaction(TransformSeries::default_transform(), p);
  for (const auto& v : vs) CHECK(v.coefficient.is_param_free());
  const VertexTerm* kin2 = find(vs, 2, 2, 4, false);
  REQUIRE(kin2);
  CHECK(kin2->coefficient == Coeff(Rational(11, 18)));
}

TEST_CASE("order truncation and parameter validation") {
  ModelParams p;
  p.max_g_order = 1;
  auto vs = expand_interaction(TransformSeries::default_transform(), p);
  for (const auto& v : vs) CHECK(v.g_order == 1);
  CHECK(vs.size() == 2);

  ModelParams bad;
  bad.max_g_order = 3;
  CHECK_THROWS_AS(bad.validate(), OrderOverflow);
  ModelParams neg;
  neg.omega = Rational(-1);
  CHECK_THROWS_AS(neg.validate(), std::domain_error);
  ModelParams zero;
  zero.omega = Rational(0);
  CHECK_THROWS_AS(zero.validate(), std::domain_error);
}
