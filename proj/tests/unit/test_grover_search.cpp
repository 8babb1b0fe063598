#include <gtest/gtest.h>

#include <cmath>

#include "qexp/grover_search.hpp"

using namespace qexp;

TEST(GroverProb, Examples) {
  for (int r = 0; r < 5; ++r) EXPECT_EQ(grover_success_prob(16, 0, r), 0.0);
  EXPECT_NEAR(grover_success_prob(4, 1, 1), 1.0, 1e-12);
  EXPECT_NEAR(grover_success_prob(16, 3, 0), 3.0 / 16.0, 1e-12);
  EXPECT_THROW(grover_success_prob(4, 5, 1), std::invalid_argument);
}

TEST(GroverRun, Modes) {
  const auto exact = make_run(16, 1, GroverMode::Exact);
  EXPECT_EQ(exact.cost, 5);
  EXPECT_EQ(exact.failure(1), 0.0);
  EXPECT_EQ(exact.failure(0), 1.0);
  const auto bounded = make_run(64, 4, GroverMode::Bounded);
  for (std::int64_t k = 4; k <= 8; ++k) EXPECT_LE(bounded.failure(k), 0.5);
}

TEST(TailoredSearch, PropertyExamples) {
  EXPECT_EQ(tailored_search(16, 4, 0).no_solution, 1.0);
  EXPECT_EQ(tailored_search(16, 4, 3).no_solution, 0.0);
  EXPECT_LE(tailored_search(16, 4, 9).no_solution, std::pow(2.0, -6.0));
}

TEST(TailoredSearch, RejectsBadParameters) {
  EXPECT_THROW(make_plan(16, 0), std::invalid_argument);
  EXPECT_THROW(make_plan(16, 17), std::invalid_argument);
  EXPECT_THROW(make_plan(1, 1), std::invalid_argument);
}

TEST(TailoredSearch, BoundDominanceSweep) {
  for (std::int64_t m : {16, 64, 256, 1024}) {
    for (std::int64_t ell : {1, 2, 4, 8, 16, 32}) {
      if (ell > m) continue;
      const auto plan = make_plan(m, ell);
      for (std::int64_t k = 0; k <= m; ++k) {
        const auto o = tailored_search(plan, k);
        if (k == 0) {
          EXPECT_EQ(o.no_solution, 1.0);
        } else if (k <= ell) {
          EXPECT_EQ(o.no_solution, 0.0);
        } else {
          ASSERT_LE(o.no_solution, std::pow(2.0, -std::sqrt(double(ell * k))) + 1e-15)
              << "m=" << m << " ell=" << ell << " k=" << k;
        }
      }
    }
  }
}

// Failure is not monotone in k above ell: an exact run at t = k can succeed
// with certainty while k + 1 leaves a small residual.
TEST(TailoredSearch, NoSolutionNotMonotoneAboveEll) {
  const auto a = tailored_search(16, 1, 4).no_solution;
  const auto b = tailored_search(16, 1, 5).no_solution;
  EXPECT_EQ(a, 0.0);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 1e-10);
}

TEST(ApproxCount, Examples) {
  EXPECT_EQ(approx_count_expectation(8, 2, 2), 1.0);
  EXPECT_EQ(approx_count_expectation(8, 2, 0), 0.0);
  const double f5 = approx_count_expectation(8, 2, 5);
  EXPECT_LE(f5, 4.0);
  EXPECT_GE(f5, 4.0 * (1.0 - std::pow(2.0, -std::sqrt(10.0))));
  EXPECT_NEAR(f5, 3.99958, 1e-5);
}

TEST(ApproxCount, Sandwich) {
  for (std::int64_t m : {8, 32, 128}) {
    for (std::int64_t ell : {1, 3, 8}) {
      const auto plan = make_plan(m, ell);
      for (std::int64_t k = 1; k <= m; ++k) {
        const double gap = double(k - 1) - approx_count_expectation(plan, k);
        EXPECT_GE(gap, 0.0);
        EXPECT_LE(gap, (k - 1) * std::pow(2.0, -std::sqrt(double(ell * k))) + 1e-12);
      }
    }
  }
}

TEST(Budget, Examples) {
  const auto one = make_plan(16, 1);
  ASSERT_FALSE(one.stage1.empty());
  EXPECT_EQ(one.stage1.front().cost, 5);
  EXPECT_EQ(query_budget(64, 4).total, 285);

  const auto full = make_plan(16, 16);
  ASSERT_EQ(full.stage2.size(), 1u);
  EXPECT_EQ(full.stage2.front().exponent, 4);
}

TEST(Budget, StageSumsAndConstant) {
  std::vector<std::int64_t> ms, ells{1, 2, 4, 8, 16, 32};
  for (std::int64_t m = 16; m <= 1024; m *= 2) ms.push_back(m);
  const auto rep = query_budget_sweep(ms, ells);
  EXPECT_FALSE(rep.rows.empty());
  EXPECT_LE(rep.constant, 8.0);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.total, r.stage1 + r.stage2 + r.verification);
    EXPECT_LE(r.ratio, rep.constant);
  }
}

TEST(Ell, ForEpsilon) {
  EXPECT_EQ(ell_for_epsilon(4, 0.3), 3);
  EXPECT_EQ(ell_for_epsilon(16, 0.25), 4);
  EXPECT_EQ(ell_for_epsilon(2, 0.01), 2);
  EXPECT_EQ(ell_for_epsilon(1, 0.3), 1);
  EXPECT_THROW(ell_for_epsilon(2, 0.0), std::invalid_argument);
}
