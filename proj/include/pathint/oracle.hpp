#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathint/canonical.hpp"

namespace pathint::oracle {

/// Raised for arguments outside the validity window (dimension outside (0,2),
/// non-positive frequency, or an id the requested oracle does not cover).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when the position-space integral of the requested id diverges in
/// one dimension, so no quadrature value exists.
class DivergentAtD1 : public std::domain_error {
 public:
  explicit DivergentAtD1(const std::string& what) : std::domain_error(what) {}
};

/// Equal-point propagator w^(D-2) (4 pi)^(-D/2) Gamma(1 - D/2), valid for
/// 0 < dim < 2 and omega > 0.
double delta_at_zero(double dim, double omega);

/// Gamma-function closed form of a catalogued momentum-space integral,
/// evaluated directly from the master formula (independent of the reducer).
/// Covered ids: "D", "D^2", "Dm^2", "Dmm^2", "Dmn^2". Throws DomainError for
/// anything else or for arguments outside the validity window.
double closed_form(const std::string& id, double dim, double omega);

/// Direct numerical integration of the explicit one-dimensional propagator
/// products over the relative coordinate. Covered ids: "D", "D^2", "Dm^2",
/// "D^4", "Dm^2*D^2", "Dm^4". Throws DivergentAtD1 for "Dmm^2"/"Dmn^2" and
/// DomainError for unknown ids. The absolute error estimate is kept below
/// 1e-10.
double quadrature(const std::string& id, double omega);

/// Numeric value of a canonical expression at the given dimension, with the
/// equal-point propagator supplied by delta_at_zero. The quartic atom is
/// substituted by its one-dimensional value when dim == 1; any other
/// surviving atom makes the result nullopt.
std::optional<double> eval_expr(const symexpr::CanonicalExpr& expr, const symexpr::Rational& dim,
                                double omega);

/// reduce(parse(id)) evaluated numerically at the given dimension; nullopt
/// when an opaque atom blocks the evaluation.
std::optional<double> reducer_value(const std::string& id, const symexpr::Rational& dim,
                                    double omega);

struct CatalogueEntry {
  std::string id;
  bool gamma_form = false;
  bool quadrature_ok = false;
  std::string note;
};

const std::vector<CatalogueEntry>& catalogue();

struct OracleRow {
  std::string id;
  std::optional<double> quadrature;
  std::optional<double> gamma_form;
  std::optional<double> reducer;
  double max_rel_dev = 0.0;
  bool ok = false;
  std::string note;
};

/// Evaluates every catalogue entry at D = 1 and cross-compares the available
/// values pairwise with the given relative tolerance.
std::vector<OracleRow> oracle_check(double omega, double tol = 1e-9);

bool all_ok(const std::vector<OracleRow>& rows);

}  // namespace pathint::oracle
