#include <gtest/gtest.h>

#include <random>

#include "qexp/nnl_degree.hpp"

using namespace qexp;

namespace {

PointFunction single_var(int n, const Rational& c) {
  std::vector<Rational> v;
  for (Point x = 0; x < cube_size(n); ++x) v.push_back(x & 1 ? c : Rational(0));
  return PointFunction(n, v);
}

PointFunction random_small(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<Rational> v;
  for (Point x = 0; x < cube_size(n); ++x) v.push_back(d(rng));
  return PointFunction(n, v);
}

}  // namespace

TEST(NnlFeasible, ShiftedWeightSquareDegreeTwo) {
  const auto f = library::shifted_weight_square(2);
  const auto r = nnl_feasible(f, 2);
  ASSERT_TRUE(std::holds_alternative<NonnegLiteralRep>(r));
  const auto& rep = std::get<NonnegLiteralRep>(r);
  EXPECT_TRUE(verify_representation(rep, f));
  EXPECT_LE(rep.degree(), 2);
  for (Point x = 0; x < 4; ++x) EXPECT_EQ(rep.evaluate(x), f(x));
}

TEST(NnlFeasible, OrDegreeOneInfeasible) {
  const auto f = library::or_function(2);
  const auto r = nnl_feasible(f, 1);
  ASSERT_TRUE(std::holds_alternative<FarkasCertificate>(r));
  EXPECT_TRUE(verify_nnl_certificate(f, 1, std::get<FarkasCertificate>(r)));
}

TEST(NnlFeasible, ZeroIsEmpty) {
  const auto r = nnl_feasible(PointFunction::constant(3, 0), 0);
  ASSERT_TRUE(std::holds_alternative<NonnegLiteralRep>(r));
  EXPECT_TRUE(std::get<NonnegLiteralRep>(r).terms.empty());
}

TEST(NnlFeasible, RangeAndGuard) {
  const auto f = library::or_function(2);
  EXPECT_THROW(nnl_feasible(f, -1), std::invalid_argument);
  EXPECT_THROW(nnl_feasible(f, 3), std::invalid_argument);
  EXPECT_EQ(literal_column_count(2, 1), 5u);
  EXPECT_EQ(literal_column_count(3, 3), 27u);
}

TEST(NnlDegree, ShiftedWeightSquareIsFull) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = library::shifted_weight_square(n);
    const auto r = nnl_degree(f);
    EXPECT_EQ(r.degree, n);
    EXPECT_TRUE(verify_representation(r.rep, f));
    ASSERT_EQ(r.lower_certificates.size(), static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) EXPECT_TRUE(verify_nnl_certificate(f, d, r.lower_certificates[d]));
  }
}

TEST(NnlDegree, ScaledVariable) {
  EXPECT_EQ(nnl_degree(single_var(3, Rational(5, 2))).degree, 1);
}

TEST(NnlDegree, WeightQuadraticNThree) {
  EXPECT_EQ(nnl_degree(library::weight_quadratic(3, 1, 2)).degree, 3);
}

TEST(NnlDegree, PermutationAndFlipInvariant) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const auto f = random_small(n, rng);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = (i + 1) % n;
    const Point mask = static_cast<Point>(rng() % cube_size(n));
    const int d = nnl_degree(f).degree;
    EXPECT_EQ(nnl_degree(permute_variables(f, perm)).degree, d);
    EXPECT_EQ(nnl_degree(flip_variables(f, mask)).degree, d);
  }
}

TEST(Sampler, ExpectationMatchesFunction) {
  const auto f = library::shifted_weight_square(2);
  const auto rep = nnl_degree(f).rep;
  const auto alg = synthesize_sampler(rep);
  EXPECT_EQ(alg.total_mass, 2);
  EXPECT_EQ(alg.query_cost, 2);
  Rational total = 0;
  for (const auto& p : alg.probabilities) total += p;
  EXPECT_EQ(total, 1);
  for (Point x = 0; x < 4; ++x) {
    Rational e = 0;
    for (std::size_t i = 0; i < alg.terms.size(); ++i) {
      if (alg.terms[i].value(x)) e += alg.probabilities[i] * alg.total_mass;
    }
    EXPECT_EQ(e, f(x));
  }
}

TEST(Sampler, ConstantTermHasNoQueries) {
  NonnegLiteralRep rep{2, {LiteralTerm{0, 0, Rational(7, 3)}}};
  const auto alg = synthesize_sampler(rep);
  EXPECT_EQ(alg.query_cost, 0);
  EXPECT_EQ(alg.total_mass, Rational(7, 3));
}

TEST(SheraliAdams, TriangleValues) {
  const auto f = library::triangle_max_cut();
  EXPECT_EQ(sherali_adams_value(f, 3), Rational(2));
  EXPECT_EQ(sherali_adams_value(f, 2), Rational(3));
  EXPECT_EQ(sa_exact_level(f), 3);
}

TEST(SheraliAdams, ConstantAndSingleVariable) {
  const auto c = PointFunction::constant(3, Rational(4, 3));
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(sherali_adams_value(c, d), Rational(4, 3));
  EXPECT_EQ(sa_exact_level(c), 0);
  EXPECT_EQ(sa_exact_level(single_var(2, 1)), 1);
}

TEST(SheraliAdams, ComplementOfShiftedSquare) {
  // g = 2|x| - |x|^2 has max 1 and 1 - g = (|x|-1)^2.
  std::vector<Rational> v;
  for (Point x = 0; x < 4; ++x) v.push_back(2 * weight(x) - weight(x) * weight(x));
  EXPECT_EQ(sa_exact_level(PointFunction(2, v)), 2);
}

TEST(SheraliAdams, NonincreasingAndAboveMax) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const auto f = random_small(n, rng);
    std::optional<Rational> prev;
    for (int d = 0; d <= n; ++d) {
      const auto c = sherali_adams_value(f, d);
      if (!c) {
        EXPECT_FALSE(prev.has_value()) << "unbounded after bounded at d=" << d;
        continue;
      }
      EXPECT_GE(*c, f.max_value());
      if (prev) {
        EXPECT_LE(*c, *prev);
      }
      prev = c;
    }
    ASSERT_TRUE(prev.has_value());
    EXPECT_EQ(*prev, f.max_value());
  }
}
