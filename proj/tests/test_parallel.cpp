#include <doctest.h>

#include "pathint/report.hpp"

using namespace pathint;
using wick::ContractionTerm;
using wick::FieldSlot;
using symexpr::Rational;

namespace {

std::vector<FieldSlot> big_slots() {
  std::vector<FieldSlot> f;
  for (int i = 0; i < 2; ++i) f.push_back({0, true});
  for (int i = 0; i < 6; ++i) f.push_back({0, false});
  for (int i = 0; i < 2; ++i) f.push_back({1, true});
  for (int i = 0; i < 6; ++i) f.push_back({1, false});
  return f;
}

bool same_classes(const std::vector<ContractionTerm>& a, const std::vector<ContractionTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!wick::structural_equal(a[i], b[i])) return false;
    if (!(a[i].multiplicity == b[i].multiplicity)) return false;
    if (a[i].connected != b[i].connected) return false;
  }
  return true;
}

std::vector<action::VertexTerm> default_vertices() {
  action::ModelParams p;
  auto f = action::TransformSeries::default_transform();
  auto vs = expand_interaction(f, p);
  for (const auto& v : expand_jacobian(f, p)) vs.push_back(v);
  return vs;
}

}  // namespace

TEST_CASE("parallel pairing enumeration is bit-identical to serial") {
  auto serial = wick::pairings(big_slots(), Exec::Serial);
  auto parallel = wick::pairings(big_slots(), Exec::Parallel);
  CHECK(same_classes(serial, parallel));

  std::vector<FieldSlot> single;
  for (int i = 0; i < 12; ++i) single.push_back({0, false});
  CHECK(same_classes(wick::pairings(single, Exec::Serial),
                     wick::pairings(single, Exec::Parallel)));
}

TEST_CASE("parallel expansion terms are bit-identical to serial") {
  auto vs = default_vertices();
  for (int order : {1, 2})
    CHECK(same_classes(wick::free_energy_terms(vs, order, Exec::Serial),
                       wick::free_energy_terms(vs, order, Exec::Parallel)));
}

TEST_CASE("parallel order reduction matches serial exactly") {
  auto vs = default_vertices();
  for (int order : {1, 2}) {
    auto terms = wick::free_energy_terms(vs, order);
    auto s = reducer::reduce_order(terms, order, Exec::Serial);
    auto p = reducer::reduce_order(terms, order, Exec::Parallel);
    CHECK(s.total == p.total);
    REQUIRE(s.classes.size() == p.classes.size());
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      CHECK(s.classes[i].cls == p.classes[i].cls);
      CHECK(s.classes[i].subtotal == p.classes[i].subtotal);
      REQUIRE(s.classes[i].contributions.size() == p.classes[i].contributions.size());
      for (std::size_t k = 0; k < s.classes[i].contributions.size(); ++k)
        CHECK(s.classes[i].contributions[k].second == p.classes[i].contributions[k].second);
    }
  }
}

TEST_CASE("full verification reports agree across execution policies") {
  report::VerifyOptions serial;
  serial.exec = Exec::Serial;
  report::VerifyOptions parallel;
  parallel.exec = Exec::Parallel;
  auto s = report::run_verify(serial);
  auto p = report::run_verify(parallel);
  CHECK(s == p);
  CHECK(s.to_json() == p.to_json());
}
