#pragma once

// Executable forms of the two computation-in-expectation algorithms and
// their simulation: the literal-term sampler, and the Fourier-state
// phase-query algorithm built from a sum-of-squares decomposition.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qexp/func_core.hpp"
#include "qexp/nnl_degree.hpp"
#include "qexp/sos_degree.hpp"

namespace qexp {

struct QuantumComponent {
  MultilinearPoly poly{1};       // p_i, coefficients exact as stored in binary
  std::vector<Rational> fourier;  // p^_i(s)
  std::vector<double> fourier_d;
  int support_degree = 0;         // max |s| with p^_i(s) != 0
  double normalizer = 0.0;        // c_i = 1 / sqrt(sum_s p^_i(s)^2)
  double payout = 0.0;            // 2^n / c_i^2
};

struct QuantumExpAlgorithm {
  int n = 0;
  std::vector<QuantumComponent> components;
  int query_cost = 0;
  /// The d-query phase oracle |s> -> (-1)^{x.s}|s> is charged, not built.
  bool phase_oracle_assumed = true;

  std::size_t multiplier() const { return components.size(); }
};

/// Throws std::invalid_argument when the decomposition does not verify.
QuantumExpAlgorithm synthesize_quantum(const SosDecomposition& sos);

using StateVector = std::vector<std::complex<double>>;

/// In-place normalized Walsh-Hadamard transform on n qubits.
void hadamard_transform(StateVector& state);

struct Outcome {
  Rational value;
  double probability = 0.0;
};

struct ExpectationReport {
  Point x = 0;
  Rational exact;             // analytic expectation, exact
  double analytic = 0.0;
  double simulated = 0.0;
  std::vector<Outcome> outcomes;
  int queries = 0;
  double max_norm_error = 0.0;       // | ||psi|| - 1 | over all evolutions
  double max_amplitude_error = 0.0;  // |<0^n|psi> - (c/sqrt(2^n)) p(x)|
};

/// Throws std::invalid_argument when x is not an n-bit point.
ExpectationReport simulate_quantum_exact(const QuantumExpAlgorithm& alg, Point x);
ExpectationReport simulate_sampler_exact(const SamplerAlgorithm& sampler, Point x);

/// SplitMix64 evaluated at counter k: stream element k depends only on (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  static constexpr const char* name() { return "splitmix64-counter"; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator = CounterRng::name();

  /// |mean - analytic| within k standard errors (exact match when stderr is 0).
  bool within(double k) const;
};

/// Throws std::invalid_argument for trials < 1.
MonteCarloResult monte_carlo(const QuantumExpAlgorithm& alg, Point x, std::int64_t trials, std::uint64_t seed);
MonteCarloResult monte_carlo(const SamplerAlgorithm& sampler, Point x, std::int64_t trials, std::uint64_t seed);

}  // namespace qexp
