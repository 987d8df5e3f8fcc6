#include <doctest.h>

#include <random>

#include "pathint/canonical.hpp"

using namespace pathint::symexpr;

namespace {

BasisMonomial mono(int d0, int w, Atom a = Atom::None) { return BasisMonomial{d0, w, a}; }

CanonicalExpr rand_expr(std::mt19937& rng, bool with_atoms) {
  std::uniform_int_distribution<int> n(0, 3), pw(-2, 3), num(-5, 5), den(1, 4), at(0, 4);
  CanonicalExpr e;
  int k = n(rng);
  for (int i = 0; i < k; ++i) {
    Atom a = Atom::None;
    if (with_atoms && at(rng) == 0) a = Atom::J4;
    e.add_term(mono(std::abs(pw(rng)), pw(rng), a), Coeff(Rational(num(rng), den(rng))));
  }
  return e;
}

}  // namespace

TEST_CASE("basis monomial products") {
  CHECK(mono(1, 2).times(mono(2, -4)) == mono(3, -2));
  CHECK(mono(1, 0, Atom::J4).times(mono(0, 4)) == mono(1, 4, Atom::J4));
  CHECK_THROWS_AS(mono(0, 0, Atom::J4).times(mono(0, 0, Atom::ID)), std::domain_error);
  CHECK(mono(0, 0).str() == "1");
  CHECK(mono(3, 2).str() == "D0^3*w^2");
  CHECK(mono(0, 4, Atom::J4).str() == "w^4*J4");
}

TEST_CASE("expression algebra") {
  CanonicalExpr a = CanonicalExpr::term(mono(1, 2), Coeff(Rational(2, 3)));
  CHECK((a - a).is_zero());
  CHECK(a + a == a.scaled(Coeff(Rational(2))));
  CHECK((-a) + a == CanonicalExpr());
  CanonicalExpr b = CanonicalExpr::term(mono(2, 0), Coeff(Rational(3)));
  CHECK(a * b == CanonicalExpr::term(mono(3, 2), Coeff(Rational(2))));
  CanonicalExpr j = CanonicalExpr::term(mono(0, 0, Atom::J4), Coeff(Rational(1)));
  CHECK_THROWS_AS(j * j, std::domain_error);
  CHECK((a + j).atom_part(Atom::J4) == j);
  CHECK((a + j).atom_part(Atom::ID).is_zero());
}

TEST_CASE("half-split coefficients recombine to one") {
  DRat half_two_minus_d(QPoly(2) - QPoly::variable(), QPoly(2));
  DRat half_d(QPoly::variable(), QPoly(2));
  CHECK(half_two_minus_d + half_d == DRat(1));
  CanonicalExpr e = CanonicalExpr::term(mono(1, 0), Coeff(half_two_minus_d)) +
                    CanonicalExpr::term(mono(1, 0), Coeff(half_d));
  CHECK(e == CanonicalExpr::term(mono(1, 0), Coeff(Rational(1))));
}

TEST_CASE("one-dimensional evaluation") {
  // D0 -> 1/(2w) at D=1; (2/3) w^2 D0^3 -> 1/12 at w=1.
  CanonicalExpr e = CanonicalExpr::term(mono(3, 2), Coeff(Rational(2, 3)));
  CHECK(e.eval_at_d1(Rational(1)) == Rational(1, 12));
  CHECK(e.eval_at_d1(Rational(2)) == Rational(2, 3) * Rational(4) * Rational(1, 64));
  CanonicalExpr halfd = CanonicalExpr::term(mono(1, 0), Coeff(DRat(QPoly::variable(), QPoly(2))));
  CHECK(halfd.eval_at_d1(Rational(2)) == Rational(1, 8));
  CHECK(CanonicalExpr().eval_at_d1(Rational(1)) == Rational(0));
}

TEST_CASE("one-dimensional evaluation guards") {
  CanonicalExpr pole =
      CanonicalExpr::term(mono(0, 0), Coeff(DRat(QPoly(1), QPoly::variable() - QPoly(1))));
  CHECK_THROWS_AS(pole.eval_at_d1(Rational(1)), PoleAtD1);
  CanonicalExpr atom = CanonicalExpr::term(mono(0, 4, Atom::J4), Coeff(Rational(1)));
  CHECK_THROWS_AS(atom.eval_at_d1(Rational(1)), OpaqueResidue);
  CanonicalExpr param = CanonicalExpr::term(mono(1, 0), Coeff::param());
  CHECK_THROWS_AS(param.eval_at_d1(Rational(1)), std::domain_error);
  CanonicalExpr ok = CanonicalExpr::term(mono(1, 0), Coeff(Rational(1)));
  CHECK_THROWS_AS(ok.eval_at_d1(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(ok.eval_at_d1(Rational(-2)), std::domain_error);
}

TEST_CASE("parameter derivative and substitution") {
  CanonicalExpr e = CanonicalExpr::term(mono(1, 0), Coeff::param() * Coeff(Rational(3)) +
                                                        Coeff(Rational(1, 2)));
  CHECK(e.derivative_param() == CanonicalExpr::term(mono(1, 0), Coeff(Rational(3))));
  CHECK(e.eval_param(Rational(1, 3)) ==
        CanonicalExpr::term(mono(1, 0), Coeff(Rational(3, 2))));
  CHECK(e.derivative_param().derivative_param().is_zero());
}

TEST_CASE("expression ring laws on random values") {
  std::mt19937 rng(23);
  for (int i = 0; i < 80; ++i) {
    CanonicalExpr a = rand_expr(rng, true), b = rand_expr(rng, true);
    CanonicalExpr c = rand_expr(rng, false);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * c + b * c == (a + b) * c);
    CHECK((a - a).is_zero());
    CHECK(a.scaled(Coeff(Rational(0))).is_zero());
  }
}

TEST_CASE("serialized form") {
  CanonicalExpr e = CanonicalExpr::term(mono(3, 2), Coeff(Rational(-2, 3))) +
                    CanonicalExpr::term(mono(0, 4, Atom::J4), Coeff(Rational(1)));
  auto m = e.to_string_map();
  CHECK(m.size() == 2);
  CHECK(m.at("D0^3*w^2") == "-2/3");
  CHECK(m.at("w^4*J4") == "1");
  CHECK(e.str() == "w^4*J4 - 2/3*D0^3*w^2");
  CHECK(CanonicalExpr().str() == "0");
}
