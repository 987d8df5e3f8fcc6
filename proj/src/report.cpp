#include "pathint/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "pathint/version.hpp"

namespace pathint::report {

using nlohmann::json;

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

json string_map_to_json(const std::map<std::string, std::string>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

std::map<std::string, std::string> string_map_from_json(const json& j) {
  std::map<std::string, std::string> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = it.value().get<std::string>();
  return m;
}

json diagram_row_to_json(const DiagramRow& r) {
  return json{{"class", r.diagram_class}, {"signature", r.signature},
              {"multiplicity", r.multiplicity}, {"delta_power", r.delta_power},
              {"omega_power", r.omega_power}, {"value", r.value}, {"note", r.note}};
}

DiagramRow diagram_row_from_json(const json& j) {
  DiagramRow r;
  r.diagram_class = j.at("class").get<std::string>();
  r.signature = j.at("signature").get<std::string>();
  r.multiplicity = j.at("multiplicity").get<std::string>();
  r.delta_power = j.at("delta_power").get<int>();
  r.omega_power = j.at("omega_power").get<int>();
  r.value = j.at("value").get<std::string>();
  r.note = j.at("note").get<std::string>();
  return r;
}

json class_summary_to_json(const ClassSummary& c) {
  json j{{"class", c.diagram_class}, {"subtotal", string_map_to_json(c.subtotal)},
         {"subtotal_pretty", c.subtotal_pretty}};
  j["value_at_d1"] = c.value_at_d1 ? json(*c.value_at_d1) : json();
  j["value_at_d1_decimal"] = c.value_at_d1_decimal ? json(*c.value_at_d1_decimal) : json();
  return j;
}

ClassSummary class_summary_from_json(const json& j) {
  ClassSummary c;
  c.diagram_class = j.at("class").get<std::string>();
  c.subtotal = string_map_from_json(j.at("subtotal"));
  c.subtotal_pretty = j.at("subtotal_pretty").get<std::string>();
  if (!j.at("value_at_d1").is_null()) c.value_at_d1 = j.at("value_at_d1").get<std::string>();
  if (!j.at("value_at_d1_decimal").is_null())
    c.value_at_d1_decimal = j.at("value_at_d1_decimal").get<double>();
  return c;
}

json order_to_json(const OrderReport& o) {
  json diagrams = json::array();
  for (const auto& d : o.diagrams) diagrams.push_back(diagram_row_to_json(d));
  json classes = json::array();
  for (const auto& c : o.classes) classes.push_back(class_summary_to_json(c));
  return json{{"order", o.order},        {"diagrams", diagrams}, {"classes", classes},
              {"total", string_map_to_json(o.total)}, {"total_pretty", o.total_pretty},
              {"cancels", o.cancels}};
}

OrderReport order_from_json(const json& j) {
  OrderReport o;
  o.order = j.at("order").get<int>();
  for (const auto& d : j.at("diagrams")) o.diagrams.push_back(diagram_row_from_json(d));
  for (const auto& c : j.at("classes")) o.classes.push_back(class_summary_from_json(c));
  o.total = string_map_from_json(j.at("total"));
  o.total_pretty = j.at("total_pretty").get<std::string>();
  o.cancels = j.at("cancels").get<bool>();
  return o;
}

json oracle_row_to_json(const OracleReportRow& r) {
  json j{{"id", r.id}, {"max_rel_dev", r.max_rel_dev}, {"ok", r.ok}, {"note", r.note}};
  j["quadrature"] = r.quadrature ? json(*r.quadrature) : json();
  j["gamma_form"] = r.gamma_form ? json(*r.gamma_form) : json();
  j["reducer"] = r.reducer ? json(*r.reducer) : json();
  return j;
}

OracleReportRow oracle_row_from_json(const json& j) {
  OracleReportRow r;
  r.id = j.at("id").get<std::string>();
  if (!j.at("quadrature").is_null()) r.quadrature = j.at("quadrature").get<double>();
  if (!j.at("gamma_form").is_null()) r.gamma_form = j.at("gamma_form").get<double>();
  if (!j.at("reducer").is_null()) r.reducer = j.at("reducer").get<double>();
  r.max_rel_dev = j.at("max_rel_dev").get<double>();
  r.ok = j.at("ok").get<bool>();
  r.note = j.at("note").get<std::string>();
  return r;
}

}  // namespace

json VerificationReport::to_json() const {
  json orders_j = json::array();
  for (const auto& o : orders) orders_j.push_back(order_to_json(o));
  json j{{"report_version", report_version},
         {"engine_version", engine_version},
         {"transform", transform},
         {"omega", omega},
         {"a", a_mode},
         {"max_order", max_order},
         {"orders", orders_j},
         {"pass", pass},
         {"failure", failure}};
  j["oracle_requested"] = oracle_requested;
  json oracle_j = json::array();
  for (const auto& r : oracle) oracle_j.push_back(oracle_row_to_json(r));
  j["oracle"] = oracle_j;
  j["trace_requested"] = trace_requested;
  json trace_j = json::array();
  for (const auto& t : trace)
    trace_j.push_back(json{{"rule", t.rule}, {"before", t.before}, {"after", t.after}});
  j["trace"] = trace_j;
  return j;
}

VerificationReport VerificationReport::from_json(const json& j) {
  VerificationReport r;
  r.report_version = j.at("report_version").get<int>();
  r.engine_version = j.at("engine_version").get<std::string>();
  r.transform = j.at("transform").get<std::string>();
  r.omega = j.at("omega").get<std::string>();
  r.a_mode = j.at("a").get<std::string>();
  r.max_order = j.at("max_order").get<int>();
  for (const auto& o : j.at("orders")) r.orders.push_back(order_from_json(o));
  r.oracle_requested = j.at("oracle_requested").get<bool>();
  for (const auto& q : j.at("oracle")) r.oracle.push_back(oracle_row_from_json(q));
  r.trace_requested = j.at("trace_requested").get<bool>();
  for (const auto& t : j.at("trace")) {
    TraceRow tr;
    tr.rule = t.at("rule").get<std::string>();
    tr.before = t.at("before").get<std::string>();
    tr.after = t.at("after").get<std::vector<std::string>>();
    r.trace.push_back(std::move(tr));
  }
  r.pass = j.at("pass").get<bool>();
  r.failure = j.at("failure").get<std::string>();
  return r;
}

namespace {

void render_order_text(const OrderReport& o, std::ostream& os) {
  os << "order g^" << o.order << ": " << o.diagrams.size() << " diagram classes\n";
  std::size_t w_class = 5, w_sig = 9, w_mult = 12;
  for (const auto& d : o.diagrams) {
    w_class = std::max(w_class, d.diagram_class.size());
    w_sig = std::max(w_sig, d.signature.size());
    w_mult = std::max(w_mult, d.multiplicity.size());
  }
  os << "  " << std::left << std::setw(static_cast<int>(w_class) + 2) << "class"
     << std::setw(static_cast<int>(w_sig) + 2) << "signature"
     << std::setw(static_cast<int>(w_mult) + 2) << "multiplicity" << "value\n";
  for (const auto& d : o.diagrams) {
    os << "  " << std::setw(static_cast<int>(w_class) + 2) << d.diagram_class
       << std::setw(static_cast<int>(w_sig) + 2) << d.signature
       << std::setw(static_cast<int>(w_mult) + 2) << d.multiplicity << d.value;
    if (!d.note.empty()) os << "   [" << d.note << "]";
    os << "\n";
  }
  for (const auto& c : o.classes) {
    os << "  subtotal[" << c.diagram_class << "] = " << c.subtotal_pretty;
    if (c.value_at_d1) os << "   (at D=1: " << *c.value_at_d1;
    if (c.value_at_d1_decimal) os << " = " << format_decimal(*c.value_at_d1_decimal);
    if (c.value_at_d1) os << ")";
    os << "\n";
  }
  os << "  total[g^" << o.order << "] = " << o.total_pretty << "  -> "
     << (o.cancels ? "cancels" : "DOES NOT CANCEL") << "\n";
}

}  // namespace

void VerificationReport::render_text(std::ostream& os) const {
  os << "coordinate-independence verification (engine " << engine_version << ", report v"
     << report_version << ")\n";
  os << "transform: " << transform << "\n";
  os << "frequency: " << omega << "   checking parameter: " << a_mode
     << "   max order: " << max_order << "\n\n";
  for (const auto& o : orders) {
    render_order_text(o, os);
    os << "\n";
  }
  if (oracle_requested) {
    os << "oracle cross-checks at D=1:\n";
    std::size_t w_id = 4;
    for (const auto& r : oracle) w_id = std::max(w_id, r.id.size());
    os << "  " << std::left << std::setw(static_cast<int>(w_id) + 2) << "id"
       << std::setw(16) << "quadrature" << std::setw(16) << "gamma-form" << std::setw(16)
       << "reducer" << std::setw(13) << "max-rel-dev" << "status\n";
    for (const auto& r : oracle) {
      auto cell = [](const std::optional<double>& v) {
        return v ? format_decimal(*v) : std::string("-");
      };
      char dev[32];
      std::snprintf(dev, sizeof dev, "%.3g", r.max_rel_dev);
      os << "  " << std::setw(static_cast<int>(w_id) + 2) << r.id << std::setw(16)
         << cell(r.quadrature) << std::setw(16) << cell(r.gamma_form) << std::setw(16)
         << cell(r.reducer) << std::setw(13) << dev << (r.ok ? "ok" : "MISMATCH");
      if (!r.note.empty()) os << "   [" << r.note << "]";
      os << "\n";
    }
    os << "\n";
  }
  if (trace_requested) {
    os << "reduction trace (" << trace.size() << " steps):\n";
    for (const auto& t : trace) {
      os << "  [" << t.rule << "] " << t.before << " ->";
      for (std::size_t i = 0; i < t.after.size(); ++i) os << (i ? " + " : " ") << t.after[i];
      os << "\n";
    }
    os << "\n";
  }
  if (!failure.empty()) os << "failure: " << failure << "\n";
  os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
}

namespace {

ClassSummary summarize_class(const std::string& tag, const symexpr::CanonicalExpr& subtotal,
                             const Rational& omega) {
  ClassSummary c;
  c.diagram_class = tag;
  c.subtotal = subtotal.to_string_map();
  c.subtotal_pretty = subtotal.str();
  try {
    Rational v = subtotal.eval_at_d1(omega);
    c.value_at_d1 = v.str();
    c.value_at_d1_decimal = v.to_double();
  } catch (const std::exception&) {
    // Atom residue, pole, or parameter dependence: no one-dimensional value.
  }
  return c;
}

DiagramRow make_row(const wick::ContractionTerm& t, const symexpr::CanonicalExpr* value,
                    const std::string& note) {
  DiagramRow r;
  try {
    r.diagram_class = wick::diagram_class_str(wick::classify(t));
  } catch (const std::exception&) {
    r.diagram_class = "unclassified";
  }
  r.signature = t.signature();
  r.multiplicity = t.multiplicity.str();
  r.delta_power = t.delta_power;
  r.omega_power = t.omega_power;
  r.value = value ? value->str() : "-";
  r.note = note;
  if (t.delta_power > 0 && note.empty()) r.note = "eliminated by Veltman rule";
  return r;
}

}  // namespace

VerificationReport run_verify(const VerifyOptions& opts) {
  action::TransformSeries f = action::TransformSeries::parse(opts.transform);
  action::ModelParams params;
  params.omega = opts.omega;
  params.max_g_order = opts.max_order;
  params.a_value = opts.a_value;
  params.validate();

  VerificationReport rep;
  rep.report_version = kReportVersion;
  rep.engine_version = kEngineVersion;
  rep.transform = f.str();
  rep.omega = opts.omega.str();
  rep.a_mode = opts.a_value ? opts.a_value->str() : "symbolic";
  rep.max_order = opts.max_order;
  rep.oracle_requested = opts.with_oracle;
  rep.trace_requested = opts.with_trace;

  try {
    std::vector<action::VertexTerm> vertices = expand_interaction(f, params);
    for (const auto& v : expand_jacobian(f, params)) vertices.push_back(v);

    bool all_cancel = true;
    for (int order = 1; order <= opts.max_order; ++order) {
      auto terms = wick::free_energy_terms(vertices, order, opts.exec);
      reducer::TraceLog log;
      reducer::OrderResult res =
          reducer::reduce_order(terms, order, opts.exec, opts.with_trace ? &log : nullptr);

      OrderReport orep;
      orep.order = order;
      for (const auto& cr : res.classes)
        for (const auto& [term, value] : cr.contributions)
          orep.diagrams.push_back(make_row(term, &value, ""));
      for (const auto& cr : res.classes)
        orep.classes.push_back(
            summarize_class(wick::diagram_class_str(cr.cls), cr.subtotal, opts.omega));
      orep.total = res.total.to_string_map();
      orep.total_pretty = res.total.str();
      orep.cancels = res.total.is_zero();
      all_cancel = all_cancel && orep.cancels;
      rep.orders.push_back(std::move(orep));
      for (const auto& ra : log) rep.trace.push_back({ra.rule, ra.before, ra.after});
    }

    bool oracle_ok = true;
    if (opts.with_oracle) {
      auto rows = oracle::oracle_check(opts.omega.to_double());
      oracle_ok = oracle::all_ok(rows);
      for (const auto& r : rows)
        rep.oracle.push_back({r.id, r.quadrature, r.gamma_form, r.reducer, r.max_rel_dev, r.ok,
                              r.note});
    }

    rep.pass = all_cancel && oracle_ok;
    if (!all_cancel) rep.failure = "at least one perturbative order does not cancel";
    else if (!oracle_ok) rep.failure = "oracle cross-check mismatch";
  } catch (const std::exception& e) {
    rep.pass = false;
    rep.failure = e.what();
  }
  return rep;
}

OrderReport run_diagrams(const DiagramsOptions& opts) {
  action::TransformSeries f = action::TransformSeries::parse(opts.transform);
  action::ModelParams params;
  params.max_g_order = opts.order;
  params.a_value = opts.a_value;
  params.validate();

  std::vector<action::VertexTerm> vertices = expand_interaction(f, params);
  for (const auto& v : expand_jacobian(f, params)) vertices.push_back(v);
  auto terms = wick::free_energy_terms(vertices, opts.order, opts.exec);

  OrderReport orep;
  orep.order = opts.order;
  symexpr::CanonicalExpr total;
  std::vector<std::pair<std::string, symexpr::CanonicalExpr>> families;
  bool all_reduced = true;
  for (const auto& t : terms) {
    DiagramRow row;
    symexpr::CanonicalExpr v;
    bool reduced = true;
    try {
      v = reducer::reduce(reducer::from_contraction(t));
      row = make_row(t, &v, "");
    } catch (const std::exception& e) {
      reduced = false;
      row = make_row(t, nullptr, e.what());
    }
    if (opts.diagram_class && row.diagram_class != *opts.diagram_class) continue;
    if (reduced) {
      total = total + v;
      auto it = std::find_if(families.begin(), families.end(),
                             [&](const auto& f) { return f.first == row.diagram_class; });
      if (it == families.end()) families.emplace_back(row.diagram_class, v);
      else it->second = it->second + v;
    } else {
      all_reduced = false;
    }
    orep.diagrams.push_back(std::move(row));
  }
  for (const auto& [tag, subtotal] : families)
    orep.classes.push_back(summarize_class(tag, subtotal, Rational(1)));
  orep.total = total.to_string_map();
  orep.total_pretty = total.str();
  orep.cancels = all_reduced && total.is_zero();
  return orep;
}

void render_diagrams_text(const OrderReport& r, std::ostream& os) {
  for (const auto& d : r.diagrams) {
    os << "order=" << r.order << " class=" << d.diagram_class << " mult=" << d.multiplicity
       << " lines=" << d.signature << " value=" << d.value;
    if (!d.note.empty()) os << "   [" << d.note << "]";
    os << "\n";
  }
  os << r.diagrams.size() << " classes, total = " << r.total_pretty << "\n";
}

nlohmann::json diagrams_to_json(const OrderReport& r) {
  json j = order_to_json(r);
  j["report_version"] = kReportVersion;
  j["engine_version"] = kEngineVersion;
  return j;
}

}  // namespace pathint::report
