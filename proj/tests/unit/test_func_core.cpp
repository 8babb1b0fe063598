#include <gtest/gtest.h>

#include <random>

#include "qexp/func_core.hpp"

using namespace qexp;

namespace {

PointFunction random_function(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(0, 9), den(1, 4);
  std::vector<Rational> v;
  for (Point x = 0; x < cube_size(n); ++x) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return PointFunction(n, v);
}

MultilinearPoly random_poly(int n, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  MultilinearPoly p(n);
  for (Subset s = 0; s < cube_size(n); ++s) {
    if (weight(s) <= max_deg) p.coeff(s) = c(rng);
  }
  return p;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_EQ(format_rational(Rational(-1, 3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Rational, RationalizeContinuedFraction) {
  EXPECT_EQ(rationalize(0.333333333, 1000), Rational(1, 3));
  EXPECT_EQ(rationalize(3.14159265358979, 1000), Rational(355, 113));
  EXPECT_EQ(rational_from_double(0.375), Rational(3, 8));
}

TEST(Rational, ExactRank) {
  RationalMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rational(static_cast<long>(i + j));
  }
  EXPECT_EQ(exact_rank(m), 2u);
  EXPECT_EQ(exact_rank(RationalMatrix::identity(4)), 4u);
}

TEST(PointFunction, RejectsNegativeAndWrongSize) {
  EXPECT_THROW(PointFunction(2, {1, 0, -1, 0}), std::invalid_argument);
  EXPECT_THROW(PointFunction(2, {1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(PointFunction(0, {1}), std::invalid_argument);
}

TEST(Interpolate, AndOnTwoVariables) {
  const auto p = interpolate_multilinear(library::and_function(2));
  for (Subset s = 0; s < 4; ++s) EXPECT_EQ(p.coeff(s), s == 3 ? 1 : 0);
}

TEST(Interpolate, Constant) {
  const auto p = interpolate_multilinear(PointFunction::constant(3, Rational(5, 2)));
  EXPECT_EQ(p.coeff(0), Rational(5, 2));
  EXPECT_EQ(p.degree(), 0);
}

TEST(Interpolate, ShiftedWeightSquareTwoVariables) {
  const auto p = interpolate_multilinear(library::shifted_weight_square(2));
  EXPECT_EQ(p.coeff(0b00), 1);
  EXPECT_EQ(p.coeff(0b01), -1);
  EXPECT_EQ(p.coeff(0b10), -1);
  EXPECT_EQ(p.coeff(0b11), 2);
}

TEST(Interpolate, ReproducesRandomFunctions) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    const auto f = random_function(n, rng);
    const auto p = interpolate_multilinear(f);
    for (Point x = 0; x < f.size(); ++x) ASSERT_EQ(p.evaluate(x), f(x)) << "n=" << n << " x=" << x;
  }
}

TEST(Fourier, SingleVariable) {
  MultilinearPoly p(1);
  p.coeff(1) = 1;
  const auto f = to_fourier(p);
  EXPECT_EQ(f[0], Rational(1, 2));
  EXPECT_EQ(f[1], Rational(-1, 2));
}

TEST(Fourier, Constant) {
  MultilinearPoly p(3);
  p.coeff(0) = 7;
  const auto f = to_fourier(p);
  EXPECT_EQ(f[0], 7);
  for (Subset s = 1; s < 8; ++s) EXPECT_EQ(f[s], 0);
}

TEST(Fourier, AffineSum) {
  MultilinearPoly p(2, {-1, 1, 1, 0});
  const auto f = to_fourier(p);
  EXPECT_EQ(f[0], 0);
  EXPECT_EQ(f[1], Rational(-1, 2));
  EXPECT_EQ(f[2], Rational(-1, 2));
  EXPECT_EQ(f[3], 0);
}

TEST(Fourier, RoundTripAndPointwiseAgreement) {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 6; ++n) {
    const auto p = random_poly(n, n, rng);
    const auto f = to_fourier(p);
    EXPECT_EQ(from_fourier(n, f), p);
    for (Point x = 0; x < cube_size(n); ++x) {
      Rational v = 0;
      for (Subset s = 0; s < cube_size(n); ++s) v += weight(s & x) % 2 ? -f[s] : f[s];
      ASSERT_EQ(v, p.evaluate(x));
    }
  }
}

TEST(Symmetrize, SingleVariable) {
  MultilinearPoly p(3);
  p.coeff(1) = 1;
  const auto q = symmetrize(p);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(q.evaluate(Rational(k)), Rational(k) / 3);
}

TEST(Symmetrize, PairProduct) {
  MultilinearPoly p(3);
  p.coeff(0b011) = 1;
  const auto w = weight_averages(p);
  EXPECT_EQ(w, (std::vector<Rational>{0, 0, Rational(1, 3), 1}));
  const auto q = symmetrize(p);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(q.evaluate(Rational(k)), Rational(k * (k - 1)) / 6);
}

TEST(Symmetrize, SymmetricInputKeepsProfile) {
  const auto f = library::weight_quadratic(5, 1, 2);
  const auto q = symmetrize(interpolate_multilinear(f));
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(q.evaluate(Rational(k)), Rational((k - 1) * (k - 2)));
}

TEST(Symmetrize, LinearAndDegreeNonincreasing) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const int d = trial % (n + 1);
    const auto p = random_poly(n, d, rng);
    const auto r = random_poly(n, n, rng);
    const Rational a(3, 2), b(-2);
    EXPECT_EQ(symmetrize(p * a + r * b), symmetrize(p) * a + symmetrize(r) * b);
    EXPECT_LE(symmetrize(p).degree(), p.degree());
  }
}

TEST(Symmetric, ProfileRoundTrip) {
  SymmetricProfile prof{4, {1, 0, 1, 4, 9}};
  const auto f = from_symmetric(prof);
  EXPECT_EQ(f, library::shifted_weight_square(4));
  EXPECT_EQ(to_symmetric(f).profile, prof.profile);
  EXPECT_THROW(to_symmetric(library::boolean_from_table(2, 0b0010)), std::invalid_argument);
}

TEST(UnivariatePoly, DivisionAndDerivative) {
  const UnivariatePoly p({2, -3, 1});  // (k-1)(k-2)
  const UnivariatePoly d({-1, 1});
  const auto div = p.divide(d);
  EXPECT_EQ(div.quotient, UnivariatePoly({-2, 1}));
  EXPECT_EQ(div.remainder.degree(), -1);
  EXPECT_EQ(p.derivative(), UnivariatePoly({-3, 2}));
}

TEST(DecisionTree, SmallCases) {
  EXPECT_EQ(decision_tree_depth(PointFunction::constant(3, 1)), 0);
  EXPECT_EQ(decision_tree_depth(library::boolean_from_table(2, 0b1010)), 1);
  EXPECT_EQ(decision_tree_depth(library::and_function(3)), 3);
  EXPECT_THROW(decision_tree_depth(library::shifted_weight_square(3)), std::invalid_argument);
}

TEST(Library, MaxCutValues) {
  EXPECT_EQ(library::triangle_max_cut().max_value(), 2);
  EXPECT_EQ(library::four_cycle_max_cut().max_value(), 4);
  EXPECT_EQ(point_to_bits(bits_to_point("1011", 4), 4), "1011");
}

TEST(Transforms, PermutationAndFlipPreserveValuesMultiset) {
  const auto f = library::weight_quadratic(3, 1, 2);
  const std::vector<int> perm{2, 0, 1};
  EXPECT_EQ(permute_variables(f, perm), f);
  const auto g = flip_variables(f, 0b111);
  for (Point x = 0; x < 8; ++x) EXPECT_EQ(g(x), f(x ^ 0b111));
}
