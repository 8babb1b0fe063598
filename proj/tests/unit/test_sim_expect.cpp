#include <gtest/gtest.h>

#include <cmath>

#include "qexp/sim_expect.hpp"

using namespace qexp;

namespace {

SosDecomposition decompose(const PointFunction& f) {
  const auto r = sos_degree(f);
  return r.decomposition;
}

}  // namespace

TEST(SynthesizeQuantum, ShiftedWeightSquare) {
  const auto alg = synthesize_quantum(decompose(library::shifted_weight_square(2)));
  ASSERT_EQ(alg.components.size(), 1u);
  EXPECT_EQ(alg.query_cost, 1);
  const auto& c = alg.components[0];
  const Rational sign = c.fourier[1] < 0 ? 1 : -1;
  EXPECT_NEAR(Rational(c.fourier[1] * sign).get_d(), -0.5, 1e-9);
  EXPECT_NEAR(Rational(c.fourier[2] * sign).get_d(), -0.5, 1e-9);
  EXPECT_EQ(c.fourier[3], 0);
  EXPECT_NEAR(c.normalizer, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(c.payout, 2.0, 1e-9);
}

TEST(SynthesizeQuantum, ConstantHasNoQueries) {
  const auto alg = synthesize_quantum(decompose(PointFunction::constant(2, 5)));
  EXPECT_EQ(alg.query_cost, 0);
  for (Point x = 0; x < 4; ++x) EXPECT_NEAR(simulate_quantum_exact(alg, x).simulated, 5.0, 1e-9);
}

TEST(SynthesizeQuantum, RejectsUnverified) {
  auto dec = decompose(library::or_function(2));
  dec.target[0] = 3;
  EXPECT_THROW(synthesize_quantum(dec), std::invalid_argument);
}

TEST(SimulateQuantum, ShiftedWeightSquareValues) {
  const auto alg = synthesize_quantum(decompose(library::shifted_weight_square(2)));
  const auto r00 = simulate_quantum_exact(alg, 0b00);
  EXPECT_NEAR(r00.simulated, 1.0, 1e-9);
  EXPECT_NEAR(r00.exact.get_d(), 1.0, 1e-9);
  const auto r10 = simulate_quantum_exact(alg, 0b01);
  EXPECT_NEAR(r10.simulated, 0.0, 1e-9);
  EXPECT_THROW(simulate_quantum_exact(alg, 4), std::invalid_argument);
}

TEST(SimulateQuantum, UnitarityAndAmplitudeIdentity) {
  for (const auto& f : {library::or_function(3), library::weight_quadratic(3, 1, 2), library::triangle_max_cut()}) {
    const auto alg = synthesize_quantum(decompose(f));
    for (Point x = 0; x < f.size(); ++x) {
      const auto r = simulate_quantum_exact(alg, x);
      EXPECT_LE(r.max_norm_error, 1e-9);
      EXPECT_LE(r.max_amplitude_error, 1e-9);
      EXPECT_NEAR(r.simulated, r.analytic, 1e-9);
      EXPECT_NEAR(r.analytic, f(x).get_d(), 1e-6);
      for (const auto& o : r.outcomes) EXPECT_GE(sgn(o.value), 0);
    }
  }
}

TEST(Hadamard, PreservesNorm) {
  StateVector s(8);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {std::cos(i * 0.3), std::sin(i * 0.7)};
  double before = 0.0;
  for (const auto& a : s) before += std::norm(a);
  hadamard_transform(s);
  double after = 0.0;
  for (const auto& a : s) after += std::norm(a);
  EXPECT_NEAR(before, after, 1e-12);
  StateVector e(4);
  e[0] = 1;
  hadamard_transform(e);
  for (const auto& a : e) EXPECT_NEAR(a.real(), 0.5, 1e-15);
}

TEST(SimulateSampler, ExactExpectation) {
  const auto f = library::shifted_weight_square(3);
  const auto sampler = synthesize_sampler(nnl_degree(f).rep);
  for (Point x = 0; x < 8; ++x) {
    const auto r = simulate_sampler_exact(sampler, x);
    EXPECT_EQ(r.exact, f(x));
    EXPECT_EQ(r.queries, 3);
    for (const auto& o : r.outcomes) EXPECT_GE(sgn(o.value), 0);
  }
}

TEST(CounterRng, Reproducible) {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const auto va = a.next();
    EXPECT_EQ(va, b.next());
    EXPECT_NE(va, c.next());
  }
  CounterRng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(MonteCarlo, ConstantIsExact) {
  const auto alg = synthesize_quantum(decompose(PointFunction::constant(2, 3)));
  const auto r = monte_carlo(alg, 1, 1000, 7);
  EXPECT_DOUBLE_EQ(r.mean, 3.0);
  EXPECT_DOUBLE_EQ(r.standard_error, 0.0);
  EXPECT_TRUE(r.within(5));
}

TEST(MonteCarlo, QuantumAndSamplerConverge) {
  const auto f = library::shifted_weight_square(2);
  const auto q = monte_carlo(synthesize_quantum(decompose(f)), 0, 100000, 1);
  EXPECT_TRUE(q.within(5)) << q.mean << " +- " << q.standard_error;
  const auto s = monte_carlo(synthesize_sampler(nnl_degree(f).rep), 0, 100000, 1);
  EXPECT_TRUE(s.within(5)) << s.mean << " +- " << s.standard_error;
  EXPECT_EQ(s.generator, "splitmix64-counter");
  EXPECT_THROW(monte_carlo(synthesize_sampler(nnl_degree(f).rep), 0, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, SameSeedSameMean) {
  const auto alg = synthesize_quantum(decompose(library::or_function(2)));
  EXPECT_EQ(monte_carlo(alg, 3, 5000, 11).mean, monte_carlo(alg, 3, 5000, 11).mean);
}
