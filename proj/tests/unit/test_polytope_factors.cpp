#include <gtest/gtest.h>

#include <cmath>

#include "qexp/polytope_factors.hpp"

using namespace qexp;

namespace {

PointFunction from_values(int n, std::vector<Rational> v) { return PointFunction(n, std::move(v)); }

}  // namespace

TEST(AndCompose, Examples) {
  const auto m_or = and_compose(library::or_function(2));
  for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(m_or.entries(0, y), 0);

  const auto f = library::shifted_weight_square(3);
  const auto m = and_compose(f);
  for (Point x = 0; x < 8; ++x) EXPECT_EQ(m.entries(x, x), f(x));

  const auto g = and_compose(library::weight_quadratic(3, 1, 2));
  EXPECT_EQ(g.entries(0b111, 0b011), 0);
  EXPECT_NO_THROW(g.validate());
}

TEST(CorrelationSubmatrix, CandidateMatrix) {
  const auto d = corr_polytope_submatrix(2, -3, 1, 3);
  const auto& e = d.matrix.entries;
  for (Point x = 0; x < 8; ++x) {
    for (Point y = 0; y < 8; ++y) {
      const int z = weight(x & y);
      EXPECT_EQ(e(x, y), Rational((z - 1) * (z - 2)));
    }
  }
  ASSERT_EQ(d.inequalities.size(), 8u);
}

TEST(CorrelationSubmatrix, InequalitySlackIsProfile) {
  const auto d = corr_polytope_submatrix(2, -3, 1, 2);
  for (Point x = 0; x < 4; ++x) {
    const auto& ineq = d.inequalities[x];
    for (Point y = 0; y < 4; ++y) {
      Rational inner = 0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if ((y >> i & 1) && (y >> j & 1)) inner += ineq.lhs(i, j);
        }
      }
      EXPECT_EQ(ineq.rhs - inner, d.matrix.entries(x, y));
    }
  }
}

TEST(CorrelationSubmatrix, ConstantAndRejected) {
  const auto ones = corr_polytope_submatrix(1, 0, 0, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(ones.matrix.entries(i, j), 1);
  }
  EXPECT_THROW(corr_polytope_submatrix(0, -1, 0, 2), std::invalid_argument);
  EXPECT_THROW(corr_polytope_submatrix(2, -5, 2, 2), std::invalid_argument);
  EXPECT_TRUE(nonnegative_on_naturals({Rational(1, 10), Rational(-1), Rational(1)}));
  EXPECT_TRUE(nonnegative_on_naturals({Rational(0), Rational(-1), Rational(1)}));
  EXPECT_FALSE(nonnegative_on_naturals({Rational(0), Rational(0), Rational(-1)}));
}

TEST(PsdFactorize, SingleVariable) {
  const auto f = from_values(2, {0, 1, 0, 1});
  const auto fac = psd_factorize_from_sos(sos_degree(f).decomposition);
  EXPECT_EQ(fac.size, 3u);
  EXPECT_TRUE(verify_psd_factorization(fac, and_compose(f)));
}

TEST(PsdFactorize, ConstantAndShiftedSquare) {
  const auto c = PointFunction::constant(2, 3);
  const auto fc = psd_factorize_from_sos(sos_degree(c).decomposition);
  EXPECT_EQ(fc.size, 1u);
  EXPECT_NEAR(fc.row_factors[0](0, 0), 1.0, 1e-12);
  EXPECT_NEAR(fc.col_factors[0](0, 0), 3.0, 1e-9);

  const auto f = library::shifted_weight_square(4);
  const auto fac = psd_factorize_from_sos(sos_degree(f).decomposition);
  EXPECT_EQ(fac.size, 5u);
  EXPECT_LE(fac.size, 64u);
  EXPECT_TRUE(verify_psd_factorization(fac, and_compose(f)));
}

TEST(NonnegFactorize, Monomials) {
  NonnegLiteralRep and2{2, {LiteralTerm{0b11, 0, 1}}};
  const auto a = nonneg_factorize_from_rep(and2);
  EXPECT_EQ(a.size, 1u);
  EXPECT_TRUE(verify_nonneg_factorization(a, and_compose(library::and_function(2))));

  NonnegLiteralRep sum{2, {LiteralTerm{0b01, 0, 1}, LiteralTerm{0b10, 0, 2}}};
  const auto b = nonneg_factorize_from_rep(sum);
  EXPECT_EQ(b.size, 2u);
  EXPECT_TRUE(verify_nonneg_factorization(b, and_compose(from_values(2, {0, 1, 2, 3}))));
}

TEST(NonnegFactorize, NegatedLiteralRejected) {
  const auto rep = nnl_degree(library::shifted_weight_square(2)).rep;
  EXPECT_THROW(nonneg_factorize_from_rep(rep), std::domain_error);
}

TEST(Rank, AllOnesAndShiftedSquare) {
  EXPECT_EQ(matrix_rank(corr_polytope_submatrix(1, 0, 0, 3).matrix), 1u);
  // Span of 1, |x AND y| and |x AND y|^2 as functions of (x, y): 1 + n + C(n,2).
  EXPECT_EQ(matrix_rank(and_compose(library::shifted_weight_square(4))), 11u);
  EXPECT_EQ(matrix_rank(and_compose(library::shifted_weight_square(6))), 22u);
}

TEST(Matching, Shapes) {
  EXPECT_EQ(perfect_matchings(4).size(), 3u);
  EXPECT_EQ(perfect_matchings(6).size(), 15u);
  EXPECT_EQ(perfect_matchings(8).size(), 105u);
  EXPECT_THROW(matching_slack(5), std::invalid_argument);
  EXPECT_THROW(matching_slack(12), std::invalid_argument);

  const auto s4 = matching_slack(4);
  EXPECT_TRUE(s4.odd_sets.empty());
  EXPECT_EQ(s4.matrix.entries.rows(), 10u);
  EXPECT_EQ(s4.matrix.entries.cols(), 3u);
  const auto s6 = matching_slack(6);
  EXPECT_EQ(s6.matrix.entries.rows(), 31u);
}

TEST(Matching, TripleCutsOfKFour) {
  for (Subset u = 0; u < 16; ++u) {
    if (weight(u) != 3) continue;
    for (const auto& m : perfect_matchings(4)) EXPECT_EQ(cut_size(u, m), 1);
  }
}

TEST(Matching, SlackEntries) {
  for (int n : {6, 8}) {
    const auto s = matching_slack(n);
    const auto& e = s.matrix.entries;
    for (std::size_t r = 0; r < e.rows(); ++r) {
      for (std::size_t c = 0; c < e.cols(); ++c) ASSERT_GE(sgn(e(r, c)), 0);
    }
    for (std::size_t r = 0; r < s.odd_sets.size(); ++r) {
      for (std::size_t c = 0; c < s.matchings.size(); ++c) {
        const int k = cut_size(s.odd_sets[r], s.matchings[c]);
        ASSERT_GE(k, 1);
        EXPECT_EQ(e(r, c), k - 1);
        if (n == 6) {
          EXPECT_TRUE(e(r, c) == 0 || e(r, c) == 2);
        }
      }
    }
    for (std::size_t r = s.odd_sets.size(); r < s.odd_sets.size() + s.degree_rows; ++r) {
      for (std::size_t c = 0; c < e.cols(); ++c) EXPECT_EQ(e(r, c), 0);
    }
  }
}

TEST(Matching, OddCutFactAllOddSets) {
  for (int n : {4, 6, 8}) {
    const auto ms = perfect_matchings(n);
    for (Subset u = 0; u < (Subset{1} << n); ++u) {
      if (weight(u) % 2 == 0) continue;
      for (const auto& m : ms) ASSERT_GE(cut_size(u, m), 1);
    }
  }
}

TEST(MatchingApprox, EightPointThree) {
  const auto r = matching_slack_approx(8, 0.3);
  EXPECT_EQ(r.ell, 3);
  EXPECT_TRUE(r.passed());
  const auto& s = r.exact;
  for (std::size_t row = 0; row < s.odd_sets.size(); ++row) {
    for (std::size_t c = 0; c < s.matchings.size(); ++c) {
      const int k = cut_size(s.odd_sets[row], s.matchings[c]);
      const double exact = s.matrix.entries(row, c).get_d();
      const double gap = exact - r.approx[row][c];
      if (k <= r.ell) {
        EXPECT_EQ(gap, 0.0);
      }
      EXPECT_GE(gap, 0.0);
      EXPECT_LE(gap, std::pow(2.0, -std::sqrt(double(r.ell * k))) * (k - 1) + 1e-12);
    }
  }
  for (std::size_t row = s.odd_sets.size(); row < s.matrix.entries.rows(); ++row) {
    for (std::size_t c = 0; c < s.matchings.size(); ++c) EXPECT_EQ(r.approx[row][c], s.matrix.entries(row, c).get_d());
  }
}

TEST(MatchingApprox, EpsilonRange) {
  EXPECT_THROW(matching_slack_approx(6, 0.0), std::invalid_argument);
  EXPECT_THROW(matching_slack_approx(6, 0.5), std::invalid_argument);
}
