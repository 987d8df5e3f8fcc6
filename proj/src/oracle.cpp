#include "pathint/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <limits>

#include "pathint/reducer.hpp"

namespace pathint::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_window(double dim, double omega) {
  if (!(dim > 0.0 && dim < 2.0))
    throw DomainError("dimension " + std::to_string(dim) + " outside (0, 2)");
  if (!(omega > 0.0)) throw DomainError("frequency must be positive");
}

/// Momentum-space master integral of (k^2)^a / (k^2 + w^2)^b.
double momint(int a, int b, double dim, double omega) {
  double h = dim / 2.0;
  return std::pow(omega, dim + 2.0 * (a - b)) * std::pow(4.0 * kPi, -h) *
         std::tgamma(h + a) * std::tgamma(b - a - h) / (std::tgamma(h) * std::tgamma(b));
}

}  // namespace

double delta_at_zero(double dim, double omega) {
  check_window(dim, omega);
  return std::pow(omega, dim - 2.0) * std::pow(4.0 * kPi, -dim / 2.0) *
         std::tgamma(1.0 - dim / 2.0);
}

double closed_form(const std::string& id, double dim, double omega) {
  check_window(dim, omega);
  if (id == "D") return 1.0 / (omega * omega);  // zero-momentum value
  if (id == "D^2") return momint(0, 2, dim, omega);
  if (id == "Dm^2") return momint(1, 2, dim, omega);
  if (id == "Dmm^2" || id == "Dmn^2") return momint(2, 2, dim, omega);
  throw DomainError("no closed form catalogued for '" + id + "'");
}

double quadrature(const std::string& id, double omega) {
  if (!(omega > 0.0)) throw DomainError("frequency must be positive");
  if (id == "Dmm^2" || id == "Dmn^2")
    throw DivergentAtD1("the position-space integral of " + id + " diverges in one dimension");

  // One-dimensional propagator and its derivative on the positive half line.
  auto prop = [omega](double tau) { return std::exp(-omega * tau) / (2.0 * omega); };
  auto dprop = [omega](double tau) { return -std::exp(-omega * tau) / 2.0; };

  std::function<double(double)> f;
  if (id == "D") f = [=](double t) { return prop(t); };
  else if (id == "D^2") f = [=](double t) { double p = prop(t); return p * p; };
  else if (id == "Dm^2") f = [=](double t) { double d = dprop(t); return d * d; };
  else if (id == "D^4") f = [=](double t) { double p = prop(t); return p * p * p * p; };
  else if (id == "Dm^2*D^2")
    f = [=](double t) { double p = prop(t), d = dprop(t); return d * d * p * p; };
  else if (id == "Dm^4") f = [=](double t) { double d = dprop(t); return d * d * d * d; };
  else throw DomainError("no quadrature integrand catalogued for '" + id + "'");

  double err = 0.0;
  double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12, &err);
  if (err > 1e-10) throw DomainError("quadrature for '" + id + "' did not converge");
  return 2.0 * half;  // integrands are even in the relative coordinate
}

std::optional<double> eval_expr(const symexpr::CanonicalExpr& expr, const symexpr::Rational& dim,
                                double omega) {
  double d = dim.to_double();
  check_window(d, omega);
  double d0 = delta_at_zero(d, omega);
  bool at_d1 = dim == symexpr::Rational(1);
  double acc = 0.0;
  for (const auto& [m, c] : expr.terms()) {
    double atom = 1.0;
    if (m.atom == symexpr::Atom::J4) {
      if (!at_d1) return std::nullopt;
      atom = 1.0 / (32.0 * std::pow(omega, 5));  // quartic self-integral at D = 1
    } else if (m.atom != symexpr::Atom::None) {
      return std::nullopt;
    }
    if (!c.is_param_free())
      throw std::domain_error("coefficient still depends on the checking parameter");
    auto v = c.drat().eval(dim);
    if (!v) throw symexpr::PoleAtD1("coefficient " + c.str() + " has a pole at the requested dimension");
    acc += v->to_double() * std::pow(d0, m.d0_pow) * std::pow(omega, m.omega_pow) * atom;
  }
  return acc;
}

std::optional<double> reducer_value(const std::string& id, const symexpr::Rational& dim,
                                    double omega) {
  return eval_expr(reducer::reduce(reducer::IntegralTerm::parse(id)), dim, omega);
}

const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = {
      {"D", true, true, ""},
      {"D^2", true, true, ""},
      {"Dm^2", true, true, ""},
      {"Dmm^2", true, false, "position-space integral divergent in one dimension"},
      {"Dmn^2", true, false, "position-space integral divergent in one dimension"},
      {"D^4", false, true, "kept as an opaque atom by the reducer; compared at D = 1"},
      {"Dm^2*D^2", false, true, ""},
      {"Dm^4", false, true, "reducer value contains the tensor-split atom"},
  };
  return entries;
}

std::vector<OracleRow> oracle_check(double omega, double tol) {
  std::vector<OracleRow> rows;
  const symexpr::Rational one(1);
  for (const auto& e : catalogue()) {
    OracleRow r;
    r.id = e.id;
    r.note = e.note;
    if (e.quadrature_ok) r.quadrature = quadrature(e.id, omega);
    if (e.gamma_form) r.gamma_form = closed_form(e.id, 1.0, omega);
    r.reducer = reducer_value(e.id, one, omega);
    std::vector<double> vals;
    if (r.quadrature) vals.push_back(*r.quadrature);
    if (r.gamma_form) vals.push_back(*r.gamma_form);
    if (r.reducer) vals.push_back(*r.reducer);
    double dev = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j) {
        double scale = std::max({1.0, std::fabs(vals[i]), std::fabs(vals[j])});
        dev = std::max(dev, std::fabs(vals[i] - vals[j]) / scale);
      }
    r.max_rel_dev = dev;
    if (vals.size() < 2) {
      r.ok = true;
      if (!r.note.empty()) r.note += "; ";
      r.note += "single value, no cross-comparison";
    } else {
      r.ok = dev <= tol;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

bool all_ok(const std::vector<OracleRow>& rows) {
  for (const auto& r : rows)
    if (!r.ok) return false;
  return !rows.empty();
}

}  // namespace pathint::oracle
