// qexp: degrees, simulations, factorizations and verification suites from the command line.
//
// Exit codes: 0 success, 1 criterion failure, 2 input error, 3 solver undetermined.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qexp/harness.hpp"

namespace {

using namespace qexp;

enum Exit { kOk = 0, kCriterion = 1, kInput = 2, kUndetermined = 3 };

/// JSON config: top-level keys are global flags, objects keyed by a subcommand name hold its flags.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    Json j;
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_configurable() && !opt->get_lnames().empty() && (opt->count() > 0 || default_also)) {
        j[opt->get_lnames().front()] = opt->as<std::string>();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> out;
    collect(j, {}, out);
    return out;
  }

 private:
  static void collect(const Json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      } else if (value.is_boolean()) {
        item.inputs.push_back(value.get<bool>() ? "true" : "false");
      } else {
        item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      }
      out.push_back(std::move(item));
    }
  }
};

struct Globals {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
  double tol = 1e-6;
  int d_max = -1;
};

struct CommandResult {
  RunReport report;
  int code = kOk;
  std::optional<std::string> csv;
};

PsdOptions psd_options(const Globals& g) {
  PsdOptions o;
  o.tol = std::min(o.tol, g.tol);
  return o;
}

Json globals_json(const Globals& g) { return Json{{"seed", g.seed}, {"tol", g.tol}, {"d_max", g.d_max}}; }

// ---- degree ----

CommandResult cmd_degree(const Globals& g, const std::string& kind, const std::string& spec) {
  const auto f = load_function(spec);
  CommandResult o;
  o.report.command = "degree";
  o.report.parameters = globals_json(g);
  o.report.parameters["kind"] = kind;
  o.report.parameters["spec"] = spec;
  const int cap = g.d_max < 0 ? f.n() : std::min(g.d_max, f.n());
  auto& res = o.report.results;
  if (kind == "nnl") {
    for (int d = 0; d <= cap; ++d) {
      auto r = nnl_feasible(f, d);
      if (auto* rep = std::get_if<NonnegLiteralRep>(&r)) {
        res["degree"] = d;
        o.report.certificates.push_back({{"type", "literal_representation"}, {"d", d}, {"certificate", to_json(*rep)}});
        return o;
      }
      o.report.certificates.push_back({{"type", "farkas"}, {"d", d}, {"certificate", to_json(std::get<FarkasCertificate>(r))}});
    }
    res["degree_lower_bound"] = cap + 1;
    return o;
  }
  if (kind != "sos") throw ParseError("--kind must be nnl or sos");
  for (int d = 0; d <= cap; ++d) {
    auto r = sos_feasible(f, d, psd_options(g));
    if (auto* dec = std::get_if<SosDecomposition>(&r)) {
      res["degree"] = d;
      res["tol"] = kSosVerifyTol;
      o.report.certificates.push_back({{"type", "sos_decomposition"}, {"d", d}, {"certificate", to_json(*dec)}});
      return o;
    }
    if (auto* w = std::get_if<SosWitness>(&r)) {
      o.report.certificates.push_back({{"type", "moment_witness"}, {"d", d}, {"certificate", to_json(*w)}});
      continue;
    }
    res["undetermined"] = {{"d", d}, {"detail", to_json(std::get<Undetermined>(r))}};
    res["degree_lower_bound"] = d;
    o.code = kUndetermined;
    return o;
  }
  res["degree_lower_bound"] = cap + 1;
  return o;
}

// ---- suite ----

CommandResult cmd_suite(const Globals& g, const std::string& name, std::int64_t trials) {
  SuiteOptions opt;
  opt.seed = g.seed;
  opt.tol = g.tol;
  opt.trials = trials;
  opt.psd = psd_options(g);
  CommandResult o;
  o.report.command = "suite";
  o.report.parameters = globals_json(g);
  o.report.parameters["name"] = name;
  o.report.parameters["trials"] = trials;
  Json suites = Json::array();
  bool passed = true;
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  std::ostringstream csv;
  csv << "criterion,passed,summary\n";
  for (const auto& s : names) {
    const auto rep = run_suite(s, opt);
    passed = passed && rep.passed();
    suites.push_back(rep.to_json());
    for (const auto& c : rep.criteria) csv << c.id << ',' << (c.passed ? "PASS" : "FAIL") << ",\"" << c.summary << "\"\n";
  }
  o.report.results = {{"suites", suites}, {"passed", passed}};
  o.csv = csv.str();
  o.code = passed ? kOk : kCriterion;
  return o;
}

// ---- simulate ----

CommandResult cmd_simulate(const Globals& g, const std::string& spec, const std::string& bits, bool quantum, std::int64_t trials) {
  const auto f = load_function(spec);
  const Point x = bits.empty() ? 0 : bits_to_point(bits, f.n());
  CommandResult o;
  o.report.command = "simulate";
  o.report.seed = g.seed;
  o.report.parameters = globals_json(g);
  o.report.parameters.update({{"spec", spec}, {"x", point_to_bits(x, f.n())}, {"algorithm", quantum ? "quantum" : "sampler"},
                              {"trials", trials}});
  ExpectationReport exp;
  MonteCarloResult mc;
  if (quantum) {
    const auto sos = sos_degree(f, psd_options(g));
    const auto alg = synthesize_quantum(sos.decomposition);
    exp = simulate_quantum_exact(alg, x);
    mc = monte_carlo(alg, x, trials, g.seed);
    o.report.results["algorithm"] = to_json(alg);
    o.report.certificates.push_back({{"type", "sos_decomposition"}, {"certificate", to_json(sos.decomposition)}});
  } else {
    const auto nnl = nnl_degree(f);
    const auto sampler = synthesize_sampler(nnl.rep);
    exp = simulate_sampler_exact(sampler, x);
    mc = monte_carlo(sampler, x, trials, g.seed);
    o.report.results["algorithm"] = to_json(sampler);
    o.report.certificates.push_back({{"type", "literal_representation"}, {"certificate", to_json(nnl.rep)}});
  }
  o.report.results["expectation"] = to_json(exp, g.seed);
  o.report.results["monte_carlo"] = to_json(mc);
  o.report.results["f(x)"] = rational_to_json(f(x));
  o.report.results["tol"] = quantum ? g.tol : 0.0;
  const double err = std::abs(exp.analytic - f(x).get_d());
  o.code = (quantum ? err <= g.tol : exp.exact == f(x)) ? kOk : kCriterion;
  return o;
}

// ---- factorize ----

CommandResult cmd_factorize(const Globals& g, const std::string& spec, const std::string& kind) {
  const auto f = load_function(spec);
  const auto m = and_compose(f);
  CommandResult o;
  o.report.command = "factorize";
  o.report.parameters = globals_json(g);
  o.report.parameters.update({{"spec", spec}, {"kind", kind}});
  o.report.results["rank"] = matrix_rank(m);
  if (kind == "psd") {
    const auto sos = sos_degree(f, psd_options(g));
    const auto fac = psd_factorize_from_sos(sos.decomposition);
    o.report.results["size"] = fac.size;
    o.report.results["max_error"] = fac.max_error;
    o.report.results["tol"] = g.tol;
    o.report.results["size_cap"] = std::pow(2.0 * f.n(), 2.0 * sos.decomposition.degree);
    o.report.certificates.push_back({{"type", "psd_factorization"}, {"certificate", to_json(fac)}});
  } else if (kind == "nonneg") {
    const auto fac = nonneg_factorize_from_rep(nnl_degree(f).rep);
    o.report.results["size"] = fac.size;
    o.report.certificates.push_back({{"type", "nonneg_factorization"}, {"certificate", to_json(fac)}});
  } else {
    throw ParseError("--kind must be psd or nonneg");
  }
  o.csv = matrix_to_csv(m);
  return o;
}

// ---- slack ----

CommandResult cmd_slack(const Globals& g, int n, std::optional<double> eps) {
  const auto d = matching_slack(n);
  CommandResult o;
  o.report.command = "slack";
  o.report.parameters = globals_json(g);
  o.report.parameters["n"] = n;
  o.report.results["slack"] = to_json(d, true);
  if (eps) {
    o.report.parameters["epsilon"] = *eps;
    const auto rep = matching_slack_approx(n, *eps);
    o.report.results["approximation"] = to_json(rep);
    o.report.results["approximate_entries"] = rep.approx;
    if (!rep.passed()) o.code = kCriterion;
  }
  o.csv = matrix_to_csv(d.matrix);
  return o;
}

// ---- hierarchy ----

CommandResult cmd_hierarchy(const Globals& g, const std::string& maxcut, const std::string& spec) {
  std::optional<PointFunction> f;
  if (!spec.empty()) f = load_function(spec);
  else if (maxcut == "triangle") f = library::triangle_max_cut();
  else if (maxcut == "c4") f = library::four_cycle_max_cut();
  else throw ParseError("--maxcut must be triangle or c4, or pass --spec");
  CommandResult o;
  o.report.command = "hierarchy";
  o.report.parameters = globals_json(g);
  if (spec.empty()) o.report.parameters["maxcut"] = maxcut;
  else o.report.parameters["spec"] = spec;
  const int cap = g.d_max < 0 ? f->n() : std::min(g.d_max, f->n());
  Json sa = Json::array(), las = Json::array();
  for (int d = 0; d <= cap; ++d) {
    const auto v = sherali_adams_value(*f, d);
    sa.push_back(v ? rational_to_json(*v) : Json(nullptr));
    las.push_back(to_json(lasserre_value(*f, d, psd_options(g))));
  }
  const auto las_level = lasserre_exact_level(*f, psd_options(g));
  o.report.results = {{"alpha", rational_to_json(f->max_value())},
                      {"sa_values", sa},
                      {"lasserre_values", las},
                      {"sa_exact_level", sa_exact_level(*f)},
                      {"lasserre_exact_level", {las_level.lower, las_level.upper}}};
  if (!las_level.exact()) o.code = kUndetermined;
  return o;
}

// ---- sweep ----

CommandResult cmd_sweep(const Globals& g, std::int64_t m_max, std::int64_t ell_max) {
  CommandResult o;
  o.report.command = "sweep";
  o.report.parameters = globals_json(g);
  o.report.parameters.update({{"m_max", m_max}, {"ell_max", ell_max}});
  std::vector<std::int64_t> ms, ells;
  for (std::int64_t m = 16; m <= m_max; m *= 2) ms.push_back(m);
  for (std::int64_t l = 1; l <= ell_max; l *= 2) ells.push_back(l);
  std::ostringstream csv;
  csv << "m,ell,k,p_fail,bound,queries\n";
  csv.precision(17);
  std::size_t violations = 0;
  for (auto m : ms) {
    for (auto ell : ells) {
      if (ell > m) continue;
      const auto plan = make_plan(m, ell);
      for (std::int64_t k = 0; k <= m; ++k) {
        const auto r = tailored_search(plan, k);
        if (k > ell && r.no_solution > r.bound) ++violations;
        csv << m << ',' << ell << ',' << k << ',' << r.no_solution << ',' << r.bound << ',' << r.total_queries << '\n';
      }
    }
  }
  o.report.results = {{"budget", to_json(query_budget_sweep(ms, ells))}, {"bound_violations", violations}};
  o.csv = csv.str();
  o.code = violations == 0 ? kOk : kCriterion;
  return o;
}

int emit(const Globals& g, CommandResult& o, double ms) {
  o.report.wall_time_ms = ms;
  if (o.report.seed == 0) o.report.seed = g.seed;
  std::string text;
  if (g.format == "csv") {
    if (!o.csv) throw ParseError("--format csv is not available for " + o.report.command);
    text = *o.csv;
  } else {
    text = o.report.to_json().dump(2) + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.out);
    if (!out) throw ParseError("cannot write " + g.out);
    out << text;
  }
  return o.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query complexity in expectation: certified degrees, simulations, factorizations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; flags override it");

  Globals g;
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--d-max", g.d_max, "Largest degree to probe");

  std::string spec, kind = "sos", fac_kind = "psd", bits, maxcut = "triangle", suite_name;
  std::int64_t trials = 100'000, m_max = 1024, ell_max = 16;
  int n = 6;
  std::optional<double> eps;
  bool quantum = false, sampler = false;

  auto* degree = app.add_subcommand("degree", "Certified nnl or sos degree of a function");
  degree->add_option("--kind", kind, "nnl | sos")->check(CLI::IsMember({"nnl", "sos"}));
  degree->add_option("--spec", spec, "Function spec file")->required();

  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  suite->add_option("name", suite_name, "Suite name or 'all'")->required();
  suite->add_option("--trials", trials, "Monte-Carlo trials");

  auto* simulate = app.add_subcommand("simulate", "Exact and Monte-Carlo simulation at one input");
  simulate->add_option("--spec", spec, "Function spec file")->required();
  simulate->add_option("--x", bits, "Input bits x1..xn (default all zeros)");
  auto* q_flag = simulate->add_flag("--quantum", quantum, "Quantum algorithm from an sos decomposition");
  simulate->add_flag("--sampler", sampler, "Sampler from a literal representation")->excludes(q_flag);
  simulate->add_option("--trials", trials, "Monte-Carlo trials");

  auto* factorize = app.add_subcommand("factorize", "Factorize M_f(x,y) = f(x AND y)");
  factorize->add_option("--spec", spec, "Function spec file")->required();
  factorize->add_option("--kind", fac_kind, "psd | nonneg")->check(CLI::IsMember({"psd", "nonneg"}));

  auto* slack = app.add_subcommand("slack", "Perfect matching slack matrix");
  slack->add_option("--n", n, "Even number of vertices, 4..10");
  slack->add_option("--eps", eps, "Also build the approximation for this epsilon");

  auto* hierarchy = app.add_subcommand("hierarchy", "Sherali-Adams and Lasserre values and exact levels");
  hierarchy->add_option("--maxcut", maxcut, "triangle | c4");
  hierarchy->add_option("--spec", spec, "Function spec file instead of a max-cut instance");

  auto* sweep = app.add_subcommand("sweep", "Tailored search sweep table");
  sweep->add_option("--m-max", m_max, "Largest m (powers of two from 16)");
  sweep->add_option("--ell-max", ell_max, "Largest ell (powers of two from 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    CommandResult o;
    if (*degree) o = cmd_degree(g, kind, spec);
    else if (*suite) o = cmd_suite(g, suite_name, trials);
    else if (*simulate) o = cmd_simulate(g, spec, bits, quantum, trials);
    else if (*factorize) o = cmd_factorize(g, spec, fac_kind);
    else if (*slack) o = cmd_slack(g, n, eps);
    else if (*hierarchy) o = cmd_hierarchy(g, maxcut, spec);
    else o = cmd_sweep(g, m_max, ell_max);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(g, o, ms);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::length_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCriterion;
  }
}
