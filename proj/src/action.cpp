#include "pathint/action.hpp"

#include <sstream>

namespace pathint::action {

namespace {

using QSeries = std::vector<CouplingPoly>;  // index = power of q

QSeries qmul(const QSeries& a, const QSeries& b, int max_g) {
  QSeries r;
  if (a.empty() || b.empty()) return r;
  r.assign(a.size() + b.size() - 1, CouplingPoly());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i].mul_truncated(b[j], max_g);
    }
  }
  return r;
}

QSeries qderiv(const QSeries& a) {
  QSeries r;
  if (a.size() <= 1) return r;
  r.resize(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = a[i].scaled(Coeff(Rational(static_cast<long long>(i))));
  return r;
}

QSeries as_series(const TransformSeries& f) {
  QSeries r(static_cast<std::size_t>(f.max_power()) + 1, CouplingPoly());
  for (const auto& t : f.terms()) r[static_cast<std::size_t>(t.power)] = t.coeff;
  return r;
}

int min_valuation(const QSeries& s) {
  int v = -1;
  for (const auto& c : s) {
    if (c.is_zero()) continue;
    int cv = c.valuation();
    if (v < 0 || cv < v) v = cv;
  }
  return v;
}

void emit(std::vector<VertexTerm>& out, const QSeries& series, const ModelParams& params,
          int omega_power, int qdot_power, bool jacobian) {
  for (std::size_t qpow = 0; qpow < series.size(); ++qpow) {
    const CouplingPoly& c = series[qpow];
    for (int n = 1; n <= params.max_g_order; ++n) {
      Coeff cn = c.coeff(n);
      if (cn.is_zero()) continue;
      if (params.a_value) cn = cn.eval_param(*params.a_value);
      if (cn.is_zero()) continue;
      VertexTerm v;
      v.coefficient = cn;
      v.g_order = n;
      v.omega_power = omega_power;
      v.qdot_power = qdot_power;
      v.q_power = static_cast<int>(qpow);
      v.jacobian = jacobian;
      out.push_back(v);
    }
  }
}

}  // namespace

std::string VertexTerm::str() const {
  std::ostringstream os;
  std::string cs = coefficient.str();
  os << (cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs);
  os << "*g";
  if (g_order != 1) os << "^" << g_order;
  if (jacobian) os << "*d0";
  if (omega_power > 0) os << "*w^" << omega_power;
  if (qdot_power > 0) os << "*qdot^" << qdot_power;
  if (q_power > 0) os << "*q^" << q_power;
  return os.str();
}

std::vector<VertexTerm> expand_interaction(const TransformSeries& f, const ModelParams& params) {
  params.validate();
  QSeries fs = as_series(f);
  QSeries fp = qderiv(fs);
  int max_g = params.max_g_order;

  QSeries kinetic = qmul(fp, fp, max_g);  // f'^2
  if (!kinetic.empty()) kinetic[0] = kinetic[0] - CouplingPoly(Coeff(Rational(1)));
  QSeries potential = qmul(fs, fs, max_g);  // f^2
  if (potential.size() > 2) potential[2] = potential[2] - CouplingPoly(Coeff(Rational(1)));

  Coeff half = Coeff(Rational(1, 2));
  for (auto& c : kinetic) c = c.scaled(half);
  for (auto& c : potential) c = c.scaled(half);

  std::vector<VertexTerm> out;
  emit(out, kinetic, params, 0, 2, false);
  emit(out, potential, params, 2, 0, false);
  return out;
}

std::vector<VertexTerm> expand_jacobian(const TransformSeries& f, const ModelParams& params) {
  params.validate();
  QSeries fp = qderiv(as_series(f));
  // u = f' - 1 has positive valuation in the coupling by the transform
  // invariants, so log(1 + u) truncates after max_g_order powers of u.
  QSeries u = fp;
  if (!u.empty()) u[0] = u[0] - CouplingPoly(Coeff(Rational(1)));
  int val = min_valuation(u);
  std::vector<VertexTerm> out;
  if (val < 1) {
    if (val == -1) return out;  // identity transform, no measure vertices
    throw std::invalid_argument("transform derivative has a coupling-free part beyond 1");
  }

  QSeries log_series;         // accumulates log(1 + u)
  QSeries upow = u;           // u^k
  Rational sign(1);
  for (int k = 1; k * val <= params.max_g_order; ++k) {
    QSeries contrib = upow;
    Coeff s = Coeff(sign / Rational(k));
    for (auto& c : contrib) c = c.scaled(s);
    if (log_series.size() < contrib.size()) log_series.resize(contrib.size(), CouplingPoly());
    for (std::size_t i = 0; i < contrib.size(); ++i) log_series[i] = log_series[i] + contrib[i];
    upow = qmul(upow, u, params.max_g_order);
    sign = -sign;
  }
  // Measure action is -d0 * integral of log f'(q).
  for (auto& c : log_series) c = -c;
  emit(out, log_series, params, 0, 0, true);
  return out;
}

}  // namespace pathint::action
