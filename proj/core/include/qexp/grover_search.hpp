#pragma once

// Probability model of staged Grover search: exact runs for small solution
// counts, repeated bounded-error runs for doubling promise windows, and the
// resulting approximate counting function f(z) ~ |z| - 1.

#include <cstdint>
#include <vector>

namespace qexp {

/// sin^2((2r+1) asin(sqrt(k/m))); 0 when k = 0.
double grover_success_prob(std::int64_t m, std::int64_t k, std::int64_t r);

enum class GroverMode { Exact, Bounded };

struct GroverPromiseRun {
  std::int64_t m = 0;
  std::int64_t t = 0;
  GroverMode mode = GroverMode::Exact;
  std::int64_t iterations = 0;  // floor(pi/4 sqrt(m/t))
  std::int64_t cost = 0;        // ceil(pi/4 sqrt(m/t)) + 1

  /// Probability that one run returns no verified solution when |z| = k.
  double failure(std::int64_t k) const;
};

GroverPromiseRun make_run(std::int64_t m, std::int64_t t, GroverMode mode);

struct SearchBlock {
  int exponent = 0;  // t = 2^exponent
  std::int64_t repetitions = 0;
  GroverPromiseRun run;
};

struct TailoredSearchPlan {
  std::int64_t m = 0;
  std::int64_t ell = 0;
  std::vector<GroverPromiseRun> stage1;
  std::vector<SearchBlock> stage2;
  std::int64_t stage1_queries = 0;
  std::int64_t stage2_queries = 0;
  std::int64_t verification_queries = 0;  // one per run
  std::int64_t total_queries = 0;
  std::int64_t total_runs = 0;
};

/// Throws std::invalid_argument unless 1 <= ell <= m and m >= 2.
TailoredSearchPlan make_plan(std::int64_t m, std::int64_t ell);

struct SearchOutcome {
  std::int64_t k = 0;
  double no_solution = 0.0;
  double bound = 1.0;  // 2^{-sqrt(ell k)} for k > ell
  std::int64_t total_queries = 0;
};

SearchOutcome tailored_search(std::int64_t m, std::int64_t ell, std::int64_t k);
SearchOutcome tailored_search(const TailoredSearchPlan& plan, std::int64_t k);

/// p_find(k) (k - 1), with 0 at k = 0.
double approx_count_expectation(std::int64_t m, std::int64_t ell, std::int64_t k);
double approx_count_expectation(const TailoredSearchPlan& plan, std::int64_t k);

/// max(1, ceil(m^{2 eps})).
std::int64_t ell_for_epsilon(std::int64_t m, double eps);

struct BudgetRow {
  std::int64_t m = 0;
  std::int64_t ell = 0;
  std::int64_t stage1 = 0;
  std::int64_t stage2 = 0;
  std::int64_t verification = 0;
  std::int64_t total = 0;
  double ratio = 0.0;  // total / (sqrt(m ell) log2 m)
};

struct BudgetReport {
  std::vector<BudgetRow> rows;
  double constant = 0.0;  // max ratio over the sweep
};

BudgetRow query_budget(std::int64_t m, std::int64_t ell);
BudgetReport query_budget_sweep(const std::vector<std::int64_t>& ms, const std::vector<std::int64_t>& ells);

}  // namespace qexp
