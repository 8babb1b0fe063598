#include "qexp/grover_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qexp {

namespace {

int floor_log2(std::int64_t v) {
  int e = 0;
  while ((std::int64_t{2} << e) <= v) ++e;
  return e;
}

std::int64_t ceil_sqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r < v) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  return r;
}

}  // namespace

double grover_success_prob(std::int64_t m, std::int64_t k, std::int64_t r) {
  if (m < 1 || k < 0 || k > m || r < 0) throw std::invalid_argument("grover_success_prob needs 0 <= k <= m and r >= 0");
  if (k == 0) return 0.0;
  const double theta = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(m)));
  const double s = std::sin(static_cast<double>(2 * r + 1) * theta);
  return s * s;
}

GroverPromiseRun make_run(std::int64_t m, std::int64_t t, GroverMode mode) {
  if (t < 1 || t > m) throw std::invalid_argument("promise parameter must satisfy 1 <= t <= m");
  const double steps = std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(m) / static_cast<double>(t));
  return GroverPromiseRun{m, t, mode, static_cast<std::int64_t>(std::floor(steps)),
                          static_cast<std::int64_t>(std::ceil(steps)) + 1};
}

double GroverPromiseRun::failure(std::int64_t k) const {
  if (k < 0 || k > m) throw std::invalid_argument("solution count out of range");
  if (k == 0) return 1.0;
  if (mode == GroverMode::Exact) return k == t ? 0.0 : 1.0;
  const double raw = 1.0 - grover_success_prob(m, k, iterations);
  if (k >= t && k <= 2 * t) return std::min(0.5, raw);
  return raw;
}

TailoredSearchPlan make_plan(std::int64_t m, std::int64_t ell) {
  if (m < 2 || ell < 1 || ell > m) throw std::invalid_argument("tailored search needs m >= 2 and 1 <= ell <= m");
  TailoredSearchPlan plan;
  plan.m = m;
  plan.ell = ell;
  for (std::int64_t t = 1; t <= ell; ++t) {
    plan.stage1.push_back(make_run(m, t, GroverMode::Exact));
    plan.stage1_queries += plan.stage1.back().cost;
    ++plan.total_runs;
  }
  for (int i = floor_log2(ell); i <= floor_log2(m); ++i) {
    const std::int64_t t = std::int64_t{1} << i;
    SearchBlock block{i, ceil_sqrt(ell * (t << 1)), make_run(m, t, GroverMode::Bounded)};
    plan.stage2_queries += block.repetitions * block.run.cost;
    plan.total_runs += block.repetitions;
    plan.stage2.push_back(block);
  }
  plan.verification_queries = plan.total_runs;
  plan.total_queries = plan.stage1_queries + plan.stage2_queries + plan.verification_queries;
  return plan;
}

SearchOutcome tailored_search(const TailoredSearchPlan& plan, std::int64_t k) {
  if (k < 0 || k > plan.m) throw std::invalid_argument("solution count out of range");
  SearchOutcome out;
  out.k = k;
  out.total_queries = plan.total_queries;
  double p = 1.0;
  for (const auto& run : plan.stage1) p *= run.failure(k);
  for (const auto& block : plan.stage2) p *= std::pow(block.run.failure(k), static_cast<double>(block.repetitions));
  out.no_solution = p;
  if (k > plan.ell) out.bound = std::exp2(-std::sqrt(static_cast<double>(plan.ell * k)));
  else out.bound = k == 0 ? 1.0 : 0.0;
  return out;
}

SearchOutcome tailored_search(std::int64_t m, std::int64_t ell, std::int64_t k) {
  return tailored_search(make_plan(m, ell), k);
}

double approx_count_expectation(const TailoredSearchPlan& plan, std::int64_t k) {
  if (k == 0) {
    tailored_search(plan, k);
    return 0.0;
  }
  const double find = 1.0 - tailored_search(plan, k).no_solution;
  return find * static_cast<double>(k - 1);
}

double approx_count_expectation(std::int64_t m, std::int64_t ell, std::int64_t k) {
  return approx_count_expectation(make_plan(m, ell), k);
}

std::int64_t ell_for_epsilon(std::int64_t m, double eps) {
  if (m < 1 || !(eps > 0.0)) throw std::invalid_argument("ell_for_epsilon needs m >= 1 and eps > 0");
  const double v = std::pow(static_cast<double>(m), 2.0 * eps);
  // Guard against pow landing just above an integer.
  const double rounded = std::round(v);
  const double c = std::abs(v - rounded) < 1e-12 * std::max(1.0, v) ? rounded : std::ceil(v);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}

BudgetRow query_budget(std::int64_t m, std::int64_t ell) {
  const auto plan = make_plan(m, ell);
  BudgetRow row{m, ell, plan.stage1_queries, plan.stage2_queries, plan.verification_queries, plan.total_queries, 0.0};
  row.ratio = static_cast<double>(row.total) /
              (std::sqrt(static_cast<double>(m * ell)) * std::log2(static_cast<double>(m)));
  return row;
}

BudgetReport query_budget_sweep(const std::vector<std::int64_t>& ms, const std::vector<std::int64_t>& ells) {
  BudgetReport rep;
  for (auto m : ms) {
    for (auto ell : ells) {
      if (ell > m) continue;
      rep.rows.push_back(query_budget(m, ell));
      rep.constant = std::max(rep.constant, rep.rows.back().ratio);
    }
  }
  return rep;
}

}  // namespace qexp
