// Exit codes: 0 verification passed, 1 verification or reduction failure,
// 2 usage error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pathint/oracle.hpp"
#include "pathint/report.hpp"
#include "pathint/version.hpp"

namespace {

using pathint::Exec;
using pathint::symexpr::Rational;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  os << payload;
}

std::optional<Rational> parse_a(const std::string& s) {
  if (s == "symbolic") return std::nullopt;
  return Rational::parse(s);
}

struct CommonFlags {
  std::string transform = "paper-default";
  int order = 2;
  std::string omega = "1";
  std::string a = "symbolic";
  std::string format = "text";
  std::string out;
  bool serial = false;

  Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
};

int cmd_verify(const CommonFlags& f, bool trace, bool oracle) {
  pathint::report::VerifyOptions opts;
  opts.transform = f.transform;
  opts.max_order = f.order;
  opts.omega = Rational::parse(f.omega);
  opts.a_value = parse_a(f.a);
  opts.with_trace = trace;
  opts.with_oracle = oracle;
  opts.exec = trace ? Exec::Serial : f.exec();
  auto rep = pathint::report::run_verify(opts);
  std::ostringstream os;
  if (f.format == "json") os << rep.to_json().dump(2) << "\n";
  else rep.render_text(os);
  emit(os.str(), f.out);
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_diagrams(const CommonFlags& f, const std::string& klass) {
  pathint::report::DiagramsOptions opts;
  opts.transform = f.transform;
  opts.order = f.order;
  opts.a_value = parse_a(f.a);
  if (!klass.empty()) opts.diagram_class = klass;
  opts.exec = f.exec();
  auto rep = pathint::report::run_diagrams(opts);
  std::ostringstream os;
  if (f.format == "json") os << pathint::report::diagrams_to_json(rep).dump(2) << "\n";
  else pathint::report::render_diagrams_text(rep, os);
  emit(os.str(), f.out);
  for (const auto& d : rep.diagrams)
    if (d.value == "-") return kExitFail;
  return kExitPass;
}

int cmd_reduce_expr(const std::string& expr, const CommonFlags& f, bool trace) {
  auto term = pathint::reducer::IntegralTerm::parse(expr);
  pathint::reducer::TraceLog log;
  pathint::symexpr::CanonicalExpr value;
  try {
    value = pathint::reducer::reduce(term, trace ? &log : nullptr);
  } catch (const pathint::reducer::IrreducibleTerm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  std::ostringstream os;
  if (f.format == "json") {
    nlohmann::json j{{"input", term.str()}, {"value", value.str()}};
    nlohmann::json vm = nlohmann::json::object();
    for (const auto& [k, v] : value.to_string_map()) vm[k] = v;
    j["value_terms"] = vm;
    if (trace) {
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& s : log)
        steps.push_back({{"rule", s.rule}, {"before", s.before}, {"after", s.after}});
      j["trace"] = steps;
    }
    os << j.dump(2) << "\n";
  } else {
    if (trace)
      for (const auto& s : log) {
        os << "[" << s.rule << "] " << s.before << " ->";
        for (std::size_t i = 0; i < s.after.size(); ++i) os << (i ? " + " : " ") << s.after[i];
        os << "\n";
      }
    os << term.str() << " = " << value.str() << "\n";
  }
  emit(os.str(), f.out);
  return kExitPass;
}

int cmd_oracle_check(const std::string& omega, double tol, const CommonFlags& f) {
  Rational w = Rational::parse(omega);
  auto rows = pathint::oracle::oracle_check(w.to_double(), tol);
  std::ostringstream os;
  if (f.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"id", r.id}, {"max_rel_dev", r.max_rel_dev}, {"ok", r.ok},
                       {"note", r.note}};
      j["quadrature"] = r.quadrature ? nlohmann::json(*r.quadrature) : nlohmann::json();
      j["gamma_form"] = r.gamma_form ? nlohmann::json(*r.gamma_form) : nlohmann::json();
      j["reducer"] = r.reducer ? nlohmann::json(*r.reducer) : nlohmann::json();
      arr.push_back(j);
    }
    os << nlohmann::json{{"omega", w.str()}, {"tolerance", tol}, {"rows", arr},
                         {"all_ok", pathint::oracle::all_ok(rows)}}
              .dump(2)
       << "\n";
  } else {
    os << "oracle catalogue at D=1, omega=" << w.str() << ", tolerance " << tol << "\n";
    for (const auto& r : rows) {
      auto cell = [](const std::optional<double>& v) {
        return v ? pathint::report::format_decimal(*v) : std::string("-");
      };
      os << "  " << r.id << ": quadrature=" << cell(r.quadrature)
         << " gamma=" << cell(r.gamma_form) << " reducer=" << cell(r.reducer)
         << " max-rel-dev=" << pathint::report::format_decimal(r.max_rel_dev) << " "
         << (r.ok ? "ok" : "MISMATCH");
      if (!r.note.empty()) os << "   [" << r.note << "]";
      os << "\n";
    }
  }
  emit(os.str(), f.out);
  return pathint::oracle::all_ok(rows) ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifies coordinate-transform independence of the oscillator free energy "
               "through two loops, with dimensional-regularization bookkeeping"};
  app.set_version_flag("--version", std::string("pathint ") + pathint::kEngineVersion);
  app.require_subcommand(1);

  CommonFlags f;
  bool trace = false, oracle = false;
  std::string klass, expr, oc_omega = "1";
  double oc_tol = 1e-9;

  auto add_common = [&](CLI::App* c, bool with_omega) {
    c->add_option("--transform", f.transform,
                  "coordinate transform: paper-default, identity, or power:coeff pairs");
    c->add_option("--order", f.order, "perturbative order")->check(CLI::Range(1, 2));
    if (with_omega) c->add_option("--omega", f.omega, "oscillator frequency (rational)");
    c->add_option("--a", f.a, "fifth-order transform parameter: rational or 'symbolic'");
    c->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", f.out, "write the report to this file instead of stdout");
    c->add_flag("--serial", f.serial, "disable the parallel contraction and reduction paths");
  };

  auto* verify = app.add_subcommand("verify", "run the full cancellation check");
  add_common(verify, true);
  verify->add_flag("--trace", trace, "append the rule-application log (forces serial)");
  verify->add_flag("--oracle", oracle, "append the numeric oracle cross-check section");

  auto* diagrams = app.add_subcommand("diagrams", "list the contraction classes of one order");
  add_common(diagrams, false);
  diagrams->add_option("--class", klass, "keep only this diagram class")
      ->check(CLI::IsMember({"local", "three-bubble", "watermelon", "jacobian-nonlocal"}));

  auto* reduce = app.add_subcommand("reduce-expr", "reduce one integrand to canonical form");
  reduce->add_option("expr", expr, "integrand, e.g. Dm^2*D^2")->required();
  reduce->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  reduce->add_option("--out", f.out, "write the result to this file instead of stdout");
  reduce->add_flag("--trace", trace, "print every rule application");

  auto* oc = app.add_subcommand("oracle-check", "cross-check the integral catalogue at D=1");
  oc->add_option("--omega", oc_omega, "oscillator frequency (rational)");
  oc->add_option("--tol", oc_tol, "relative tolerance for cross-comparisons")
      ->check(CLI::PositiveNumber);
  oc->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  oc->add_option("--out", f.out, "write the table to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(f, trace, oracle);
    if (diagrams->parsed()) return cmd_diagrams(f, klass);
    if (reduce->parsed()) return cmd_reduce_expr(expr, f, trace);
    return cmd_oracle_check(oc_omega, oc_tol, f);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
