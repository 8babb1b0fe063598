#include <gtest/gtest.h>

#include "qexp/solver_core.hpp"
#include "qexp/sos_degree.hpp"

using namespace qexp;

namespace {

RationalLPInstance single(const Rational& a, const Rational& b) {
  return RationalLPInstance(1, {SparseColumn{{{0, a}}}}, {b});
}

PsdFeasibilityInstance scalar(const Rational& target) {
  PsdFeasibilityInstance inst;
  inst.dim = 1;
  inst.constraints.push_back(PsdConstraint{{SymmetricEntry{0, 0, 1}}, target});
  return inst;
}

RationalMatrix matrix2(long a, long b, long c, long d) {
  RationalMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST(Lp, FeasibleScalar) {
  const auto r = solve_lp(single(1, 1));
  ASSERT_TRUE(std::holds_alternative<LPFeasible>(r));
  EXPECT_EQ(std::get<LPFeasible>(r).x, std::vector<Rational>{1});
}

TEST(Lp, InfeasibleScalarFarkas) {
  const auto inst = single(1, -1);
  const auto r = solve_lp(inst);
  ASSERT_TRUE(std::holds_alternative<LPInfeasible>(r));
  const auto& cert = std::get<LPInfeasible>(r).certificate;
  EXPECT_TRUE(verify_farkas(inst, cert));
  ASSERT_EQ(cert.y.size(), 1u);
  EXPECT_LT(sgn(cert.y[0]), 0);
}

TEST(Lp, FeasibleAndInfeasibleNeverBothVerify) {
  // x1 + x2 = 1, x1 - x2 = 3 has no nonnegative solution (x2 = -1).
  RationalLPInstance bad(2, {SparseColumn{{{0, 1}, {1, 1}}}, SparseColumn{{{0, 1}, {1, -1}}}}, {1, 3});
  const auto r = solve_lp(bad);
  ASSERT_TRUE(std::holds_alternative<LPInfeasible>(r));
  EXPECT_TRUE(verify_farkas(bad, std::get<LPInfeasible>(r).certificate));
  EXPECT_FALSE(verify_lp_point(bad, std::vector<Rational>{2, -1}));

  RationalLPInstance good(2, {SparseColumn{{{0, 1}, {1, 1}}}, SparseColumn{{{0, 1}, {1, -1}}}}, {3, 1});
  const auto g = solve_lp(good);
  ASSERT_TRUE(std::holds_alternative<LPFeasible>(g));
  EXPECT_TRUE(verify_lp_point(good, std::get<LPFeasible>(g).x));
  EXPECT_FALSE(verify_farkas(good, FarkasCertificate{{1, 0}}));
}

TEST(Lp, MinimizeExactValue) {
  // min x1 + 2 x2 subject to x1 + x2 = 3.
  RationalLPInstance inst(1, {SparseColumn{{{0, 1}}}, SparseColumn{{{0, 1}}}}, {3});
  const std::vector<Rational> cost{1, 2};
  const auto r = minimize_lp(inst, cost);
  ASSERT_TRUE(std::holds_alternative<LPOptimal>(r));
  EXPECT_EQ(std::get<LPOptimal>(r).value, 3);
}

TEST(Psd, RationalCheck) {
  EXPECT_TRUE(rational_psd_check(RationalMatrix::identity(3)));
  EXPECT_FALSE(rational_psd_check(matrix2(0, 1, 1, 0)));
  EXPECT_TRUE(rational_psd_check(matrix2(2, 1, 1, 2)));
  EXPECT_TRUE(rational_psd_check(matrix2(1, 1, 1, 1)));
  EXPECT_FALSE(rational_psd_check(matrix2(1, 2, 2, 1)));
}

TEST(Psd, ScalarFeasible) {
  const auto r = solve_psd(scalar(1));
  ASSERT_TRUE(std::holds_alternative<ApproxFeasible>(r));
  EXPECT_NEAR(std::get<ApproxFeasible>(r).gram(0, 0), 1.0, 1e-8);
}

TEST(Psd, ScalarInfeasibleWitness) {
  const auto inst = scalar(-1);
  const auto r = solve_psd(inst);
  ASSERT_TRUE(std::holds_alternative<MomentWitness>(r));
  const auto& w = std::get<MomentWitness>(r);
  EXPECT_TRUE(verify_moment_witness(inst, w));
  EXPECT_LT(sgn(w.value), 0);
  EXPECT_TRUE(rational_psd_check(w.moment_matrix));
}

TEST(Psd, GramInstanceWithNoAffineSquareRoot) {
  const auto inst = gram_instance(library::weight_quadratic(3, 1, 2), 1);
  const auto r = solve_psd(inst);
  ASSERT_TRUE(std::holds_alternative<MomentWitness>(r));
  EXPECT_TRUE(verify_moment_witness(inst, std::get<MomentWitness>(r)));
}

TEST(Psd, ResidualTraceNonincreasing) {
  PsdOptions opt;
  opt.keep_residual_trace = true;
  const auto inst = gram_instance(PointFunction(2, {3, 2, 2, 3}), 1);
  const auto r = solve_psd(inst, opt);
  ASSERT_TRUE(std::holds_alternative<ApproxFeasible>(r));
  const auto& trace = std::get<ApproxFeasible>(r).residual_trace;
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] + 1e-12) << "iteration " << i;
}

TEST(Psd, ValidateRejectsLowerTriangle) {
  PsdFeasibilityInstance inst;
  inst.dim = 2;
  inst.constraints.push_back(PsdConstraint{{SymmetricEntry{1, 0, 1}}, 1});
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(Psd, DumpInstanceHeader) {
  const auto text = dump_instance(scalar(1));
  EXPECT_EQ(text.substr(0, text.find('\n')), "dim 1 1");
}
