#include "pathint/wick.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#ifdef PATHINT_HAVE_OPENMP
#include <omp.h>
#endif

namespace pathint::wick {

namespace {

struct MergeKey {
  int loops_plain = 0;
  int loops_dotted = 0;
  std::vector<PropagatorLine> cross;
  friend auto operator<=>(const MergeKey&, const MergeKey&) = default;
};

std::vector<PropagatorLine> canonical_cross(std::vector<PropagatorLine> cross) {
  std::vector<PropagatorLine> mirror = cross;
  for (auto& l : mirror) std::swap(l.deriv_a, l.deriv_b);
  std::sort(cross.begin(), cross.end());
  std::sort(mirror.begin(), mirror.end());
  return std::min(cross, mirror);
}

using CountMap = std::map<MergeKey, long long>;

// Enumerates perfect matchings over the unpaired slots. Pairings with an
// equal-point mixed loop are pruned (they vanish by parity). Counts are
// accumulated per structural key.
void enumerate(const std::vector<FieldSlot>& fields, std::vector<char>& used, int loops_plain,
               int loops_dotted, std::vector<PropagatorLine>& cross, CountMap& out) {
  std::size_t first = 0;
  while (first < fields.size() && used[first]) ++first;
  if (first == fields.size()) {
    MergeKey key{loops_plain, loops_dotted, canonical_cross(cross)};
    ++out[key];
    return;
  }
  used[first] = 1;
  for (std::size_t j = first + 1; j < fields.size(); ++j) {
    if (used[j]) continue;
    const FieldSlot &a = fields[first], &b = fields[j];
    if (a.vertex == b.vertex) {
      if (a.dotted != b.dotted) continue;  // equal-point mixed loop vanishes
      used[j] = 1;
      if (a.dotted)
        enumerate(fields, used, loops_plain, loops_dotted + 1, cross, out);
      else
        enumerate(fields, used, loops_plain + 1, loops_dotted, cross, out);
      used[j] = 0;
    } else {
      PropagatorLine line;
      if (a.vertex < b.vertex)
        line = {static_cast<signed char>(a.dotted), static_cast<signed char>(b.dotted)};
      else
        line = {static_cast<signed char>(b.dotted), static_cast<signed char>(a.dotted)};
      used[j] = 1;
      cross.push_back(line);
      enumerate(fields, used, loops_plain, loops_dotted, cross, out);
      cross.pop_back();
      used[j] = 0;
    }
  }
  used[first] = 0;
}

CountMap enumerate_all(const std::vector<FieldSlot>& fields, Exec exec) {
  CountMap total;
  if (fields.empty()) {
    ++total[MergeKey{}];
    return total;
  }
#ifdef PATHINT_HAVE_OPENMP
  if (exec == Exec::Parallel) {
    // Branch on the partner of slot 0; each branch is independent.
    int n = static_cast<int>(fields.size());
    std::vector<CountMap> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int j = 1; j < n; ++j) {
      const FieldSlot &a = fields[0], &b = fields[static_cast<std::size_t>(j)];
      CountMap local;
      std::vector<char> used(fields.size(), 0);
      used[0] = 1;
      used[static_cast<std::size_t>(j)] = 1;
      std::vector<PropagatorLine> cross;
      if (a.vertex == b.vertex) {
        if (a.dotted != b.dotted) continue;
        enumerate(fields, used, a.dotted ? 0 : 1, a.dotted ? 1 : 0, cross, local);
      } else {
        PropagatorLine line;
        if (a.vertex < b.vertex)
          line = {static_cast<signed char>(a.dotted), static_cast<signed char>(b.dotted)};
        else
          line = {static_cast<signed char>(b.dotted), static_cast<signed char>(a.dotted)};
        cross.push_back(line);
        enumerate(fields, used, 0, 0, cross, local);
      }
      parts[static_cast<std::size_t>(j)] = std::move(local);
    }
    for (const auto& part : parts)
      for (const auto& [k, c] : part) total[k] += c;
    return total;
  }
#else
  (void)exec;
#endif
  std::vector<char> used(fields.size(), 0);
  std::vector<PropagatorLine> cross;
  enumerate(fields, used, 0, 0, cross, total);
  return total;
}

std::string line_token(const PropagatorLine& l) {
  int d = l.deriv_a + l.deriv_b;
  if (d == 0) return "D";
  if (d == 1) return "Dm";
  return "Dmn";
}

}  // namespace

std::string ContractionTerm::signature() const {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const std::string& tok, int p) {
    if (p == 0) return;
    if (any) os << "*";
    os << tok;
    if (p != 1) os << "^" << p;
    any = true;
  };
  put("d0", delta_power);
  put("ddot0", loops_dotted);
  put("D0", loops_plain);
  std::size_t i = 0;
  while (i < cross.size()) {
    std::size_t j = i;
    while (j < cross.size() && cross[j] == cross[i]) ++j;
    put(line_token(cross[i]), static_cast<int>(j - i));
    i = j;
  }
  if (!any) return "1";
  return os.str();
}

bool structural_less(const ContractionTerm& a, const ContractionTerm& b) {
  return std::tie(a.g_order, a.vertex_count, a.delta_power, a.omega_power, a.loops_plain,
                  a.loops_dotted, a.cross) < std::tie(b.g_order, b.vertex_count, b.delta_power,
                                                      b.omega_power, b.loops_plain, b.loops_dotted,
                                                      b.cross);
}

bool structural_equal(const ContractionTerm& a, const ContractionTerm& b) {
  return !structural_less(a, b) && !structural_less(b, a);
}

std::string diagram_class_str(DiagramClass c) {
  switch (c) {
    case DiagramClass::Local: return "local";
    case DiagramClass::ThreeBubble: return "three-bubble";
    case DiagramClass::Watermelon: return "watermelon";
    case DiagramClass::JacobianNonlocal: return "jacobian-nonlocal";
  }
  return "?";
}

DiagramClass classify(const ContractionTerm& t) {
  if (t.vertex_count == 1) return DiagramClass::Local;
  if (t.cross.empty())
    throw std::domain_error("disconnected two-vertex contraction is not a diagram class");
  if (t.delta_power > 0) return DiagramClass::JacobianNonlocal;
  if (t.cross.size() == 2) return DiagramClass::ThreeBubble;
  if (t.cross.size() == 4) return DiagramClass::Watermelon;
  throw std::domain_error("contraction with " + std::to_string(t.cross.size()) +
                          " cross lines is outside the supported diagram families");
}

std::vector<ContractionTerm> pairings(const std::vector<FieldSlot>& fields, Exec exec) {
  if (fields.size() % 2 != 0)
    throw OddFieldCount("cannot contract " + std::to_string(fields.size()) + " fields");
  int vmin = fields.empty() ? 0 : fields.front().vertex;
  int vmax = vmin;
  for (const auto& f : fields) {
    vmin = std::min(vmin, f.vertex);
    vmax = std::max(vmax, f.vertex);
  }
  if (vmin < 0 || vmax > 1) throw std::invalid_argument("vertex labels must be 0 or 1");

  CountMap counts = enumerate_all(fields, exec);
  std::vector<ContractionTerm> out;
  for (const auto& [k, c] : counts) {
    ContractionTerm t;
    t.multiplicity = Coeff(Rational(c));
    t.vertex_count = vmax - vmin + 1;
    t.loops_plain = k.loops_plain;
    t.loops_dotted = k.loops_dotted;
    t.cross = k.cross;
    t.connected = !k.cross.empty() || t.vertex_count == 1;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

std::vector<FieldSlot> vertex_fields(const action::VertexTerm& v, int label) {
  std::vector<FieldSlot> f;
  for (int i = 0; i < v.qdot_power; ++i) f.push_back({label, true});
  for (int i = 0; i < v.q_power; ++i) f.push_back({label, false});
  return f;
}

void accumulate(std::vector<ContractionTerm>& acc, const ContractionTerm& t) {
  for (auto& e : acc) {
    if (structural_equal(e, t)) {
      e.multiplicity = e.multiplicity + t.multiplicity;
      return;
    }
  }
  acc.push_back(t);
}

}  // namespace

std::vector<ContractionTerm> free_energy_terms(const std::vector<action::VertexTerm>& vertices,
                                               int order, Exec exec, bool connected_only) {
  if (order < 1 || order > 2)
    throw action::OrderOverflow("supported perturbative orders are 1 and 2, got " +
                                std::to_string(order));

  std::vector<ContractionTerm> acc;

  // First cumulant: -<A> restricted to the requested order.
  for (const auto& v : vertices) {
    if (v.g_order != order) continue;
    for (const auto& p : pairings(vertex_fields(v, 0), exec)) {
      ContractionTerm t = p;
      t.multiplicity = -v.coefficient * t.multiplicity;
      t.g_order = order;
      t.delta_power = v.jacobian ? 1 : 0;
      t.omega_power = v.omega_power;
      accumulate(acc, t);
    }
  }

  // Second cumulant: +(1/2)<A^2> at order 2, built from ordered vertex pairs.
  if (order == 2) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& vi = vertices[i];
      if (vi.g_order != 1) continue;
      for (std::size_t j = i; j < vertices.size(); ++j) {
        const auto& vj = vertices[j];
        if (vj.g_order != 1) continue;
        Coeff factor = vi.coefficient * vj.coefficient;
        if (i == j) factor = factor * Coeff(Rational(1, 2));
        std::vector<FieldSlot> fields = vertex_fields(vi, 0);
        for (const auto& f : vertex_fields(vj, 1)) fields.push_back(f);
        for (const auto& p : pairings(fields, exec)) {
          if (connected_only && !p.connected) continue;
          ContractionTerm t = p;
          t.multiplicity = factor * t.multiplicity;
          t.g_order = 2;
          t.delta_power = (vi.jacobian ? 1 : 0) + (vj.jacobian ? 1 : 0);
          t.omega_power = vi.omega_power + vj.omega_power;
          accumulate(acc, t);
        }
      }
    }
  }

  std::erase_if(acc, [](const ContractionTerm& t) { return t.multiplicity.is_zero(); });
  std::sort(acc.begin(), acc.end(), structural_less);
  return acc;
}

}  // namespace pathint::wick
