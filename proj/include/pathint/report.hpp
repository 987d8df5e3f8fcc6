#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pathint/oracle.hpp"
#include "pathint/reducer.hpp"

namespace pathint::report {

using symexpr::Rational;

struct DiagramRow {
  std::string diagram_class;
  std::string signature;
  std::string multiplicity;
  int delta_power = 0;
  int omega_power = 0;
  std::string value;  // reduced canonical expression
  std::string note;
  friend bool operator==(const DiagramRow&, const DiagramRow&) = default;
};

struct ClassSummary {
  std::string diagram_class;
  std::map<std::string, std::string> subtotal;  // monomial -> coefficient
  std::string subtotal_pretty;
  std::optional<std::string> value_at_d1;       // exact rational
  std::optional<double> value_at_d1_decimal;
  friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
};

struct OrderReport {
  int order = 0;
  std::vector<DiagramRow> diagrams;
  std::vector<ClassSummary> classes;
  std::map<std::string, std::string> total;
  std::string total_pretty;
  bool cancels = false;
  friend bool operator==(const OrderReport&, const OrderReport&) = default;
};

struct OracleReportRow {
  std::string id;
  std::optional<double> quadrature;
  std::optional<double> gamma_form;
  std::optional<double> reducer;
  double max_rel_dev = 0.0;
  bool ok = false;
  std::string note;
  friend bool operator==(const OracleReportRow&, const OracleReportRow&) = default;
};

struct TraceRow {
  std::string rule;
  std::string before;
  std::vector<std::string> after;
  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct VerificationReport {
  int report_version = 0;
  std::string engine_version;
  std::string transform;
  std::string omega;
  std::string a_mode;  // "symbolic" or the numeric rational
  int max_order = 0;
  std::vector<OrderReport> orders;
  bool oracle_requested = false;
  std::vector<OracleReportRow> oracle;
  bool trace_requested = false;
  std::vector<TraceRow> trace;
  bool pass = false;
  std::string failure;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
  void render_text(std::ostream& os) const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
  std::string transform = "paper-default";
  int max_order = 2;
  Rational omega = Rational(1);
  std::optional<Rational> a_value;
  bool with_oracle = false;
  bool with_trace = false;
  Exec exec = Exec::Parallel;
};

/// Runs the full pipeline (expansion, contraction, reduction, cancellation
/// checks, optional oracle) and assembles the report. Invalid options throw
/// std::invalid_argument; pipeline failures are captured in the report with
/// pass = false.
VerificationReport run_verify(const VerifyOptions& opts);

struct DiagramsOptions {
  std::string transform = "paper-default";
  int order = 2;
  std::optional<Rational> a_value;
  std::optional<std::string> diagram_class;  // keep only this class tag
  Exec exec = Exec::Parallel;
};

/// Lists the contraction classes of one order without requiring cancellation.
/// Reduction failures surface as row notes; classification failures throw.
OrderReport run_diagrams(const DiagramsOptions& opts);

/// Text rendering of a diagrams listing.
void render_diagrams_text(const OrderReport& r, std::ostream& os);

nlohmann::json diagrams_to_json(const OrderReport& r);

/// 12-significant-digit decimal used for all numeric report output.
std::string format_decimal(double v);

}  // namespace pathint::report
