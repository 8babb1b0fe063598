#include <gtest/gtest.h>

#include <cmath>

#include "qexp/sos_degree.hpp"

using namespace qexp;

TEST(SosFeasible, ShiftedWeightSquareSingleSquare) {
  for (int n = 2; n <= 6; ++n) {
    const auto f = library::shifted_weight_square(n);
    const auto r = sos_feasible(f, 1);
    ASSERT_TRUE(std::holds_alternative<SosDecomposition>(r)) << "n=" << n;
    const auto& dec = std::get<SosDecomposition>(r);
    EXPECT_TRUE(verify_decomposition(dec, f));
    ASSERT_EQ(dec.squares.size(), 1u);
    const auto p = dec.square_poly(0);
    const Rational sign = p.coeff(0) < 0 ? 1 : -1;
    EXPECT_NEAR(Rational(p.coeff(0) * sign).get_d(), -1.0, 1e-9);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(Rational(p.coeff(Subset{1} << i) * sign).get_d(), 1.0, 1e-9);
  }
}

TEST(SosFeasible, OrDegreeOne) {
  const auto f = library::or_function(2);
  const auto r = sos_feasible(f, 1);
  ASSERT_TRUE(std::holds_alternative<SosDecomposition>(r));
  EXPECT_TRUE(verify_decomposition(std::get<SosDecomposition>(r), f));
}

TEST(SosFeasible, WeightQuadraticNeedsDegreeTwo) {
  const auto f = library::weight_quadratic(3, 1, 2);
  const auto r = sos_feasible(f, 1);
  ASSERT_TRUE(std::holds_alternative<SosWitness>(r));
  EXPECT_TRUE(verify_sos_witness(std::get<SosWitness>(r), f));
}

TEST(SosFeasible, Errors) {
  const auto f = library::or_function(2);
  EXPECT_THROW(sos_feasible(f, 3), std::invalid_argument);
  EXPECT_EQ(monomial_basis(3, 1), (std::vector<Subset>{0, 1, 2, 4}));
}

TEST(SosDegree, KnownValues) {
  const auto a = sos_degree(library::shifted_weight_square(4));
  EXPECT_EQ(a.lower, 1);
  EXPECT_EQ(a.upper, 1);

  const auto b = sos_degree(PointFunction::constant(3, Rational(9, 4)));
  EXPECT_EQ(b.lower, 0);
  EXPECT_EQ(b.upper, 0);

  const auto f = library::weight_quadratic(3, 1, 2);
  const auto c = sos_degree(f);
  EXPECT_TRUE(c.exact());
  EXPECT_EQ(c.upper, 2);
  EXPECT_TRUE(verify_decomposition(c.decomposition, f));
  ASSERT_EQ(c.witnesses.size(), 2u);
  for (const auto& w : c.witnesses) EXPECT_TRUE(verify_sos_witness(w, f));
}

TEST(SosDegree, WitnessBelowEveryExactAnswer) {
  for (const auto& f : {library::and_function(3), library::or_function(3), library::triangle_max_cut()}) {
    const auto r = sos_degree(f);
    EXPECT_TRUE(verify_decomposition(r.decomposition, f));
    EXPECT_LE(r.lower, r.upper);
    for (const auto& w : r.witnesses) EXPECT_TRUE(verify_sos_witness(w, f));
  }
}

TEST(Lasserre, SingleVariableAndConstant) {
  std::vector<Rational> v{0, 1, 0, 1};
  const PointFunction x1(2, v);
  EXPECT_EQ(lasserre_exact_level(x1).upper, 1);
  EXPECT_EQ(lasserre_exact_level(PointFunction::constant(2, 3)).upper, 0);
}

TEST(Lasserre, TriangleValueBracketsMaxCut) {
  const auto f = library::triangle_max_cut();
  const auto v = lasserre_value(f, 2);
  ASSERT_TRUE(v.bounded);
  EXPECT_TRUE(v.converged);
  EXPECT_LE(v.lower, 2);
  EXPECT_GE(v.upper, 2);
  EXPECT_LE(Rational(v.upper - v.lower).get_d(), kLasserreWidth);
  EXPECT_EQ(lasserre_exact_level(f).upper, 2);
}

TEST(Markov, Examples) {
  EXPECT_NEAR(markov_bound(UnivariatePoly({0, 1}), 2).value, std::sqrt(0.5), 1e-9);
  EXPECT_DOUBLE_EQ(markov_bound(UnivariatePoly({3}), 5).value, 0.0);
  EXPECT_NEAR(markov_bound(UnivariatePoly({0, 0, 1}), 4).value, 1.0, 1e-9);
  EXPECT_THROW(markov_bound(UnivariatePoly(), 3), std::invalid_argument);
}

TEST(LowerBound, ReplayNThree) {
  const auto f = library::weight_quadratic(3, 1, 2);
  const auto r = sos_degree(f);
  const auto rep = replay_lower_bound(r.decomposition);
  EXPECT_NEAR(rep.big_q_0, 2.0, 1e-6);
  EXPECT_NEAR(rep.big_q_1, 0.0, 1e-6);
  EXPECT_NEAR(rep.big_q_2, 0.0, 1e-6);
  EXPECT_TRUE(rep.passed());
}

TEST(LowerBound, RejectsOtherFunction) {
  const auto r = sos_degree(library::shifted_weight_square(3));
  EXPECT_THROW(replay_lower_bound(r.decomposition), std::invalid_argument);
}
