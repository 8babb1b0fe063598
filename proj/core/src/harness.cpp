#include "qexp/harness.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qexp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::size_t binomial_sum(int n, int d) {
  std::size_t total = 0, c = 1;
  for (int k = 0; k <= d; ++k) {
    total += c;
    c = c * static_cast<std::size_t>(n - k) / static_cast<std::size_t>(k + 1);
  }
  return total;
}

std::vector<std::int64_t> sweep_ms() {
  std::vector<std::int64_t> ms;
  for (std::int64_t m = 16; m <= 1024; m *= 2) ms.push_back(m);
  return ms;
}

const std::vector<std::int64_t> kSweepElls{1, 2, 4, 8, 16};

CriterionResult criterion(int id, std::string title) {
  CriterionResult c;
  c.id = id;
  c.title = std::move(title);
  return c;
}

}  // namespace

Json RunReport::payload() const {
  return Json{{"command", command}, {"parameters", parameters}, {"results", results},
              {"certificates", certificates}, {"seed", seed}};
}

Json RunReport::to_json() const {
  auto j = payload();
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

RunReport RunReport::from_json(const Json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    r.certificates = j.at("certificates");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time_ms = j.value("wall_time_ms", 0.0);
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("run report: ") + e.what());
  }
}

bool SuiteReport::passed() const {
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

Json SuiteReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : criteria) {
    list.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"summary", c.summary}, {"data", c.data}});
  }
  return Json{{"suite", name}, {"passed", passed()}, {"criteria", list}};
}

PointFunction random_function(int n, CounterRng& rng) {
  std::vector<Rational> values;
  for (Point x = 0; x < cube_size(n); ++x) values.emplace_back(static_cast<long>(rng.next() % 7), 2);
  for (auto& v : values) v.canonicalize();
  return PointFunction(n, std::move(values));
}

PointFunction random_boolean_function(int n, CounterRng& rng) {
  std::vector<Rational> values;
  for (Point x = 0; x < cube_size(n); ++x) values.emplace_back(static_cast<long>(rng.next() & 1U));
  return PointFunction(n, std::move(values));
}

CriterionResult check_gap(const SuiteOptions& options) {
  const auto t0 = Clock::now();
  auto r = criterion(1, "gap example: deg_sos((|x|-1)^2) = 1, ldeg+ = n for n = 2..8");
  bool ok = true;
  Json rows = Json::array();
  for (int n = 2; n <= 8; ++n) {
    const auto f = library::shifted_weight_square(n);
    const auto one = sos_feasible(f, 1, options.psd);
    const auto* dec = std::get_if<SosDecomposition>(&one);
    const bool sos_ok = dec && verify_decomposition(*dec, f, options.tol);
    const auto zero = sos_feasible(f, 0, options.psd);
    const auto* w = std::get_if<SosWitness>(&zero);
    const bool excluded = !f.is_constant() && w && verify_sos_witness(*w, f);
    const auto nnl = nnl_degree(f);
    bool certs = verify_representation(nnl.rep, f) && nnl.lower_certificates.size() == static_cast<std::size_t>(nnl.degree);
    for (int d = 0; d < nnl.degree && certs; ++d) certs = verify_nnl_certificate(f, d, nnl.lower_certificates[d]);
    const bool row_ok = sos_ok && excluded && certs && nnl.degree == n;
    ok = ok && row_ok;
    rows.push_back({{"n", n}, {"deg_sos", sos_ok && excluded ? 1 : -1}, {"residual", dec ? dec->residual : -1.0},
                    {"ldeg_plus", nnl.degree}, {"certificates_verified", certs}, {"ok", row_ok}});
  }
  const double ms = elapsed_ms(t0);
  r.passed = ok && ms < 60'000.0;
  r.summary = "n=2..8 deg_sos=1, ldeg+=n " + std::string(ok ? "certified" : "NOT certified") + " in " + fmt(ms / 1000) + " s";
  r.data = {{"rows", rows}, {"tol", options.tol}, {"seconds", ms / 1000}, {"time_limit_seconds", 60}};
  return r;
}

CriterionResult check_expectation(const SuiteOptions& options) {
  auto r = criterion(2, "sampler and quantum algorithms compute f in expectation");
  CounterRng rng(options.seed);
  bool ok = true;
  int exact_fail = 0, quantum_fail = 0, mc_fail = 0;
  double worst_quantum = 0.0, worst_z = 0.0;
  Json rows = Json::array();
  for (int i = 0; i < options.random_functions; ++i) {
    const int n = 2 + i % 3;
    const auto f = random_function(n, rng);
    const auto sampler = synthesize_sampler(nnl_degree(f).rep);
    const auto sos = sos_degree(f, options.psd);
    const auto alg = synthesize_quantum(sos.decomposition);
    bool row_ok = true;
    for (Point x = 0; x < f.size(); ++x) {
      const auto s = simulate_sampler_exact(sampler, x);
      if (s.exact != f(x)) ++exact_fail, row_ok = false;
      const auto q = simulate_quantum_exact(alg, x);
      const double err = std::max(std::abs(q.analytic - f(x).get_d()), std::abs(q.simulated - f(x).get_d()));
      worst_quantum = std::max(worst_quantum, err);
      if (err > options.tol) ++quantum_fail, row_ok = false;
      const std::uint64_t seed = rng.next();
      for (const auto& mc : {monte_carlo(sampler, x, options.trials, seed), monte_carlo(alg, x, options.trials, seed + 1)}) {
        if (mc.standard_error > 0) worst_z = std::max(worst_z, std::abs(mc.mean - mc.analytic) / mc.standard_error);
        if (!mc.within(5.0)) ++mc_fail, row_ok = false;
      }
    }
    ok = ok && row_ok;
    rows.push_back({{"n", n}, {"f", function_to_json(f)["data"]}, {"ldeg_plus", sampler.query_cost},
                    {"sos_upper", sos.upper}, {"multiplier", alg.multiplier()}, {"ok", row_ok}});
  }
  r.passed = ok;
  r.summary = std::to_string(options.random_functions) + " functions: sampler exact mismatches " + std::to_string(exact_fail) +
              ", quantum max error " + fmt(worst_quantum) + ", Monte-Carlo max |z| " + fmt(worst_z) + " (" +
              std::to_string(mc_fail) + " beyond 5 se)";
  r.data = {{"rows", rows}, {"tol", options.tol}, {"trials", options.trials}, {"seed", options.seed},
            {"generator", CounterRng::name()}, {"quantum_failures", quantum_fail}, {"mc_failures", mc_fail}};
  return r;
}

CriterionResult check_cubic(const SuiteOptions& options) {
  auto r = criterion(3, "RE <= 16 QE^3 and deg(f) <= 2 QE on Boolean functions");
  auto run = [&](const PointFunction& f, Json& bad, int& undetermined) {
    const auto sos = sos_degree(f, options.psd);
    if (!sos.exact()) {
      ++undetermined;
      bad.push_back({{"f", function_to_json(f)["data"]}, {"sos_interval", {sos.lower, sos.upper}}});
      return true;
    }
    const int re = nnl_degree(f).degree;
    const int qe = sos.upper;
    const int deg = interpolate_multilinear(f).degree();
    const bool ok = re <= 16 * qe * qe * qe && deg <= 2 * qe;
    if (!ok) bad.push_back({{"f", function_to_json(f)["data"]}, {"RE", re}, {"QE", qe}, {"deg", deg}});
    return ok;
  };
  Json bad3 = Json::array(), bad4 = Json::array();
  int und3 = 0, und4 = 0, pass3 = 0, pass4 = 0;
  for (std::uint64_t table = 0; table < 256; ++table) {
    const auto f = library::boolean_from_table(3, table);
    if (run(f, bad3, und3)) ++pass3;
  }
  CounterRng rng(options.seed ^ 0xC0B1CULL);
  for (int i = 0; i < options.boolean_samples_n4; ++i) {
    if (run(random_boolean_function(4, rng), bad4, und4)) ++pass4;
  }
  const int n4 = options.boolean_samples_n4;
  r.passed = pass3 == 256 && und3 == 0 && pass4 == n4 && und4 * 20 <= n4;
  r.summary = "n=3: " + std::to_string(pass3 - und3) + "/256 certified, " + std::to_string(und3) + " undetermined; n=4: " +
              std::to_string(pass4 - und4) + "/" + std::to_string(n4) + " certified, " + std::to_string(und4) + " undetermined";
  r.data = {{"n3_failures", bad3}, {"n4_failures_or_undetermined", bad4}, {"n3_undetermined", und3}, {"n4_undetermined", und4}};
  return r;
}

CriterionResult check_lower_bound(const SuiteOptions& options) {
  auto r = criterion(4, "lower-bound replay for (|x|-1)(|x|-2), n = 3..8");
  bool ok = true;
  int prev = 0;
  Json rows = Json::array();
  std::string degrees;
  for (int n = 3; n <= 8; ++n) {
    const auto f = library::weight_quadratic(n, 1, 2);
    const auto sos = sos_degree(f, options.psd);
    bool row_ok = sos.exact() && sos.upper >= prev && sos.upper >= std::sqrt(n / 48.0);
    Json replay;
    try {
      const auto rep = replay_lower_bound(sos.decomposition, options.tol);
      replay = to_json(rep);
      row_ok = row_ok && rep.passed();
    } catch (const std::exception& e) {
      replay = {{"error", e.what()}};
      row_ok = false;
    }
    if (n == 3) row_ok = row_ok && sos.upper == 2;
    ok = ok && row_ok;
    prev = sos.upper;
    degrees += (degrees.empty() ? "" : ",") + std::to_string(sos.upper);
    rows.push_back({{"n", n}, {"deg_sos", {sos.lower, sos.upper}}, {"replay", replay}, {"ok", row_ok}});
  }
  r.passed = ok;
  r.summary = "deg_sos for n=3..8: [" + degrees + "], replays " + (ok ? "verified" : "FAILED");
  r.data = {{"rows", rows}, {"tol", options.tol}};
  return r;
}

CriterionResult check_tailored_search(const SuiteOptions&) {
  auto r = criterion(5, "tailored search: certainty for k <= ell, 2^{-sqrt(ell k)} beyond, budget constant");
  std::size_t checked = 0, violations = 0;
  for (auto m : sweep_ms()) {
    for (auto ell : kSweepElls) {
      const auto plan = make_plan(m, ell);
      if (plan.total_queries != plan.stage1_queries + plan.stage2_queries + plan.verification_queries) ++violations;
      for (std::int64_t k = 0; k <= m; ++k) {
        const auto o = tailored_search(plan, k);
        ++checked;
        const bool ok = k == 0 ? o.no_solution == 1.0 : k <= ell ? o.no_solution == 0.0 : o.no_solution <= o.bound;
        if (!ok) ++violations;
      }
    }
  }
  const auto budget = query_budget_sweep(sweep_ms(), kSweepElls);
  r.passed = violations == 0;
  r.summary = std::to_string(checked) + " (m, ell, k) cases, " + std::to_string(violations) +
              " violations; total queries <= C sqrt(m ell) log2 m with C = " + fmt(budget.constant);
  r.data = {{"budget", to_json(budget)}, {"cases", checked}, {"violations", violations}};
  return r;
}

CriterionResult check_approx_function(const SuiteOptions&) {
  auto r = criterion(6, "approximate counting: f(k) = k-1 for k <= ell, sandwich beyond");
  std::size_t checked = 0, violations = 0;
  double worst = 0.0;
  for (auto m : sweep_ms()) {
    for (auto ell : kSweepElls) {
      const auto plan = make_plan(m, ell);
      for (std::int64_t k = 0; k <= m; ++k) {
        const double f = approx_count_expectation(plan, k);
        ++checked;
        bool ok;
        if (k == 0) {
          ok = f == 0.0;
        } else if (k <= ell) {
          ok = f == static_cast<double>(k - 1);
        } else {
          const double gap = static_cast<double>(k - 1) - f;
          const double bound = static_cast<double>(k - 1) * std::exp2(-std::sqrt(static_cast<double>(ell * k)));
          worst = std::max(worst, bound > 0 ? gap / bound : 0.0);
          ok = gap >= 0.0 && gap <= bound;
        }
        if (!ok) ++violations;
      }
    }
  }
  r.passed = violations == 0;
  r.summary = std::to_string(checked) + " cases, " + std::to_string(violations) + " violations, max gap/bound " + fmt(worst);
  r.data = {{"cases", checked}, {"violations", violations}, {"max_gap_over_bound", worst}};
  return r;
}

CriterionResult check_factorizations(const SuiteOptions& options) {
  auto r = criterion(7, "psd factorizations from sos decompositions; rank of M_{(|x AND y|-1)^2}");
  std::vector<PointFunction> fs;
  for (int n = 2; n <= 5; ++n) fs.push_back(library::shifted_weight_square(n));
  for (int n = 3; n <= 5; ++n) fs.push_back(library::weight_quadratic(n, 1, 2));
  for (std::uint64_t t = 0; t < 256; ++t) fs.push_back(library::boolean_from_table(3, t));
  CounterRng rng(options.seed);
  for (int i = 0; i < 12; ++i) fs.push_back(random_function(2 + i % 3, rng));

  std::size_t verified = 0;
  double worst = 0.0;
  Json failures = Json::array();
  for (const auto& f : fs) {
    const auto sos = sos_degree(f, options.psd);
    const auto& dec = sos.decomposition;
    bool ok = false;
    try {
      const auto fac = psd_factorize_from_sos(dec);
      worst = std::max(worst, fac.max_error);
      ok = verify_psd_factorization(fac, and_compose(f), options.tol) && fac.size == binomial_sum(f.n(), dec.degree) &&
           static_cast<double>(fac.size) <= std::pow(2.0 * f.n(), 2.0 * dec.degree);
    } catch (const std::exception& e) {
      failures.push_back({{"f", function_to_json(f)}, {"error", e.what()}});
    }
    if (ok) ++verified;
  }
  Json ranks = Json::array();
  bool ranks_ok = true;
  std::string rank_text;
  for (int n : {4, 6, 8}) {
    const auto rank = matrix_rank(and_compose(library::shifted_weight_square(n)));
    const std::size_t claimed = static_cast<std::size_t>(n * n / 2 + 1);
    ranks_ok = ranks_ok && rank == claimed;
    ranks.push_back({{"n", n}, {"rank", rank}, {"claimed", claimed}, {"one_plus_n_plus_n_choose_2", 1 + n + n * (n - 1) / 2}});
    rank_text += (rank_text.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + std::to_string(rank) +
                 " vs " + std::to_string(claimed);
  }
  const bool psd_ok = verified == fs.size();
  r.passed = psd_ok && ranks_ok;
  r.summary = "psd factorizations " + std::to_string(verified) + "/" + std::to_string(fs.size()) + " verified (max error " +
              fmt(worst) + "); exact rank vs n^2/2+1: " + rank_text;
  r.data = {{"factorizations", fs.size()}, {"verified", verified}, {"max_error", worst}, {"tol", options.tol},
            {"failures", failures}, {"ranks", ranks}, {"psd_part_passed", psd_ok}, {"rank_part_passed", ranks_ok}};
  return r;
}

CriterionResult check_matching(const SuiteOptions& options) {
  auto r = criterion(8, "perfect matching slack matrix and its approximation, n = 4, 6, 8");
  bool ok = true;
  Json rows = Json::array();
  double n8_ms = 0.0;
  for (int n : {4, 6, 8}) {
    const auto t0 = Clock::now();
    const auto d = matching_slack(n);
    bool cuts = true, entries = true;
    for (const auto& m : d.matchings) {
      for (Subset u = 1; u + 1 < (Subset{1} << n); ++u) {
        if (weight(u) % 2 == 1 && cut_size(u, m) < 1) cuts = false;
      }
    }
    for (std::size_t j = 0; j < d.matchings.size(); ++j) {
      for (std::size_t i = 0; i < d.odd_sets.size(); ++i) {
        if (d.matrix.entries(i, j) != cut_size(d.odd_sets[i], d.matchings[j]) - 1) entries = false;
      }
    }
    Json approx = Json::array();
    bool approx_ok = true;
    for (double eps : options.epsilons) {
      const auto rep = matching_slack_approx(n, eps);
      bool copied = true;
      for (std::size_t i = d.odd_sets.size(); i < d.matrix.entries.rows(); ++i) {
        for (std::size_t j = 0; j < d.matchings.size(); ++j) {
          if (rep.approx[i][j] != d.matrix.entries(i, j).get_d()) copied = false;
        }
      }
      approx_ok = approx_ok && rep.passed() && copied;
      approx.push_back(to_json(rep));
    }
    const double ms = elapsed_ms(t0);
    if (n == 8) n8_ms = ms;
    const bool row_ok = cuts && entries && approx_ok;
    ok = ok && row_ok;
    rows.push_back({{"n", n}, {"matchings", d.matchings.size()}, {"odd_set_rows", d.odd_sets.size()},
                    {"odd_cut_fact", cuts}, {"entries_exact", entries}, {"approximations", approx}, {"ms", ms}, {"ok", row_ok}});
  }
  r.passed = ok && n8_ms < 60'000.0;
  r.summary = std::string("odd cuts, exact entries and sandwiches ") + (ok ? "verified" : "FAILED") + "; n=8 (105 matchings) in " +
              fmt(n8_ms / 1000) + " s";
  r.data = {{"rows", rows}};
  return r;
}

CriterionResult check_hierarchy(const SuiteOptions& options) {
  auto r = criterion(9, "Sherali-Adams and Lasserre exact levels for triangle and 4-cycle max-cut");
  bool ok = true;
  Json rows = Json::array();
  std::string text;
  const Rational width = rationalize(1e-6, 1'000'000);
  for (const auto& [name, f] : {std::pair{"triangle", library::triangle_max_cut()}, std::pair{"c4", library::four_cycle_max_cut()}}) {
    const Rational alpha = f.max_value();
    const int n = f.n();
    Json sa = Json::array(), las = Json::array();
    int sa_first = -1, las_first = -1;
    bool monotone = true;
    std::optional<Rational> prev_sa;
    std::optional<LasserreValue> prev_las;
    for (int d = 0; d <= n; ++d) {
      const auto v = sherali_adams_value(f, d);
      sa.push_back(v ? rational_to_json(*v) : Json(nullptr));
      if (v && *v == alpha && sa_first < 0) sa_first = d;
      if (prev_sa && (!v || *v > *prev_sa)) monotone = false;
      if (v) prev_sa = v;
      const auto l = lasserre_value(f, d, options.psd);
      las.push_back(to_json(l));
      if (l.bounded && l.lower <= alpha && alpha <= l.upper + width && las_first < 0) las_first = d;
      if (prev_las && prev_las->bounded && (!l.bounded || l.lower > prev_las->upper + width)) monotone = false;
      if (l.bounded) prev_las = l;
    }
    const int sa_level = sa_exact_level(f);
    const auto las_level = lasserre_exact_level(f, options.psd);
    const bool row_ok = monotone && sa_level == sa_first && las_level.exact() && las_level.upper == las_first;
    ok = ok && row_ok;
    text += (text.empty() ? "" : "; ") + std::string(name) + ": alpha=" + format_rational(alpha) + " SA level " +
            std::to_string(sa_level) + "/" + std::to_string(sa_first) + ", Lasserre level " + std::to_string(las_level.upper) +
            "/" + std::to_string(las_first);
    rows.push_back({{"instance", name}, {"alpha", rational_to_json(alpha)}, {"sa_values", sa}, {"lasserre_values", las},
                    {"sa_exact_level", sa_level}, {"sa_first_equal", sa_first},
                    {"lasserre_exact_level", {las_level.lower, las_level.upper}}, {"lasserre_first_containing", las_first},
                    {"monotone", monotone}, {"ok", row_ok}});
  }
  r.passed = ok;
  r.summary = text + " (level via certificates / via values)";
  r.data = {{"rows", rows}, {"width", kLasserreWidth}};
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gap", "expectation", "cubic", "lowerbound",
                                              "grover", "factorization", "matching", "hierarchy"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  using Check = std::function<CriterionResult(const SuiteOptions&)>;
  static const std::map<std::string, std::vector<Check>> suites{
      {"gap", {check_gap}},
      {"expectation", {check_expectation}},
      {"cubic", {check_cubic}},
      {"lowerbound", {check_lower_bound}},
      {"grover", {check_tailored_search, check_approx_function}},
      {"factorization", {check_factorizations}},
      {"matching", {check_matching}},
      {"hierarchy", {check_hierarchy}},
  };
  const auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite \"" + name + "\"");
  const auto t0 = Clock::now();
  SuiteReport rep{name, {}, 0.0};
  for (const auto& check : it->second) rep.criteria.push_back(check(options));
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  for (const auto& name : suite_names()) {
    for (auto& c : run_suite(name, options).criteria) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace qexp
