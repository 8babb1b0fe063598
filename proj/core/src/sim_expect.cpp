#include "qexp/sim_expect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qexp {

QuantumExpAlgorithm synthesize_quantum(const SosDecomposition& sos) {
  const PointFunction f(sos.n, sos.target);
  if (!verify_decomposition(sos, f)) throw std::invalid_argument("decomposition does not verify; refusing to synthesize");
  QuantumExpAlgorithm alg;
  alg.n = sos.n;
  for (std::size_t i = 0; i < sos.squares.size(); ++i) {
    QuantumComponent c;
    c.poly = sos.square_poly(i);
    c.fourier = to_fourier(c.poly);
    Rational mass = 0;
    for (Subset s = 0; s < c.fourier.size(); ++s) {
      if (sgn(c.fourier[s]) == 0) continue;
      mass += c.fourier[s] * c.fourier[s];
      c.support_degree = std::max(c.support_degree, weight(s));
    }
    if (sgn(mass) == 0) continue;
    c.fourier_d.reserve(c.fourier.size());
    for (const auto& v : c.fourier) c.fourier_d.push_back(v.get_d());
    c.normalizer = 1.0 / std::sqrt(mass.get_d());
    c.payout = std::ldexp(mass.get_d(), sos.n);
    alg.query_cost = std::max(alg.query_cost, c.support_degree);
    alg.components.push_back(std::move(c));
  }
  if (alg.query_cost > sos.degree) throw std::logic_error("Fourier support exceeds the decomposition degree");
  return alg;
}

void hadamard_transform(StateVector& state) {
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t len = 1; len < state.size(); len <<= 1) {
    for (std::size_t i = 0; i < state.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const auto a = state[j];
        const auto b = state[j + len];
        state[j] = h * (a + b);
        state[j + len] = h * (a - b);
      }
    }
  }
}

namespace {

double norm(const StateVector& s) {
  double t = 0.0;
  for (const auto& a : s) t += std::norm(a);
  return std::sqrt(t);
}

struct ComponentRun {
  double zero_probability = 0.0;
  double norm_error = 0.0;
  double amplitude_error = 0.0;
};

ComponentRun run_component(const QuantumComponent& c, int n, Point x) {
  StateVector psi(cube_size(n));
  for (Subset s = 0; s < psi.size(); ++s) psi[s] = c.normalizer * c.fourier_d[s];
  ComponentRun out;
  out.norm_error = std::abs(norm(psi) - 1.0);
  for (Subset s = 0; s < psi.size(); ++s) {
    if (weight(s & x) % 2 == 1) psi[s] = -psi[s];
  }
  out.norm_error = std::max(out.norm_error, std::abs(norm(psi) - 1.0));
  hadamard_transform(psi);
  out.norm_error = std::max(out.norm_error, std::abs(norm(psi) - 1.0));
  const double expected = c.normalizer / std::sqrt(static_cast<double>(psi.size())) * c.poly.evaluate(x).get_d();
  out.amplitude_error = std::abs(psi[0] - std::complex<double>(expected, 0.0));
  out.zero_probability = std::norm(psi[0]);
  return out;
}

void check_point(int n, Point x) {
  if (x >= cube_size(n)) throw std::invalid_argument("input point has more than n bits");
}

std::vector<Outcome> collect(const std::map<Rational, double>& dist) {
  std::vector<Outcome> out;
  for (const auto& [v, p] : dist) out.push_back(Outcome{v, p});
  return out;
}

}  // namespace

ExpectationReport simulate_quantum_exact(const QuantumExpAlgorithm& alg, Point x) {
  check_point(alg.n, x);
  ExpectationReport rep;
  rep.x = x;
  rep.queries = alg.query_cost;
  std::map<Rational, double> dist;
  const std::size_t count = alg.components.size();
  if (count == 0) dist[Rational(0)] = 1.0;
  for (const auto& c : alg.components) {
    const Rational px = c.poly.evaluate(x);
    rep.exact += px * px;
    const auto run = run_component(c, alg.n, x);
    rep.max_norm_error = std::max(rep.max_norm_error, run.norm_error);
    rep.max_amplitude_error = std::max(rep.max_amplitude_error, run.amplitude_error);
    const double pick = 1.0 / static_cast<double>(count);
    if (c.support_degree == 0) {
      const Rational out = c.fourier[0] * c.fourier[0];
      rep.simulated += out.get_d();
      dist[out * static_cast<long>(count)] += pick;
      continue;
    }
    Rational payout = 0;
    for (const auto& v : c.fourier) payout += v * v;
    payout *= Rational(mpz_class(1) << alg.n);
    rep.simulated += run.zero_probability * payout.get_d();
    dist[payout * static_cast<long>(count)] += pick * run.zero_probability;
    dist[Rational(0)] += pick * (1.0 - run.zero_probability);
  }
  rep.analytic = rep.exact.get_d();
  rep.outcomes = collect(dist);
  return rep;
}

ExpectationReport simulate_sampler_exact(const SamplerAlgorithm& sampler, Point x) {
  check_point(sampler.n, x);
  ExpectationReport rep;
  rep.x = x;
  rep.queries = sampler.query_cost;
  Rational satisfied = 0;
  for (std::size_t j = 0; j < sampler.terms.size(); ++j) {
    if (sampler.terms[j].value(x)) satisfied += sampler.probabilities[j];
  }
  rep.exact = satisfied * sampler.total_mass;
  rep.analytic = rep.exact.get_d();
  rep.simulated = rep.analytic;
  std::map<Rational, double> dist;
  if (sgn(sampler.total_mass) == 0) {
    dist[Rational(0)] = 1.0;
  } else {
    dist[sampler.total_mass] += satisfied.get_d();
    dist[Rational(0)] += Rational(1 - satisfied).get_d();
  }
  for (auto it = dist.begin(); it != dist.end();) it = it->second == 0.0 ? dist.erase(it) : std::next(it);
  rep.outcomes = collect(dist);
  return rep;
}

std::uint64_t CounterRng::next() {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

bool MonteCarloResult::within(double k) const {
  if (standard_error == 0.0) return std::abs(mean - analytic) <= 1e-12 * std::max(1.0, std::abs(analytic));
  return std::abs(mean - analytic) <= k * standard_error;
}

namespace {

template <class Draw>
MonteCarloResult accumulate(std::int64_t trials, std::uint64_t seed, double analytic, Draw draw) {
  if (trials < 1) throw std::invalid_argument("Monte-Carlo needs at least one trial");
  CounterRng rng(seed);
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t t = 1; t <= trials; ++t) {
    const double v = draw(rng);
    const double delta = v - mean;
    mean += delta / static_cast<double>(t);
    m2 += delta * (v - mean);
  }
  MonteCarloResult r;
  r.mean = mean;
  r.trials = trials;
  r.seed = seed;
  r.analytic = analytic;
  r.standard_error = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  return r;
}

}  // namespace

MonteCarloResult monte_carlo(const QuantumExpAlgorithm& alg, Point x, std::int64_t trials, std::uint64_t seed) {
  const auto report = simulate_quantum_exact(alg, x);
  const std::size_t count = alg.components.size();
  std::vector<double> prob, value;
  for (const auto& c : alg.components) {
    Rational payout = 0;
    for (const auto& v : c.fourier) payout += v * v;
    if (c.support_degree == 0) {
      prob.push_back(1.0);
      value.push_back(Rational(c.fourier[0] * c.fourier[0]).get_d() * static_cast<double>(count));
    } else {
      prob.push_back(run_component(c, alg.n, x).zero_probability);
      value.push_back(std::ldexp(payout.get_d(), alg.n) * static_cast<double>(count));
    }
  }
  return accumulate(trials, seed, report.analytic, [&](CounterRng& rng) {
    if (count == 0) return 0.0;
    const auto i = std::min(count - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(count)));
    return rng.uniform() < prob[i] ? value[i] : 0.0;
  });
}

MonteCarloResult monte_carlo(const SamplerAlgorithm& sampler, Point x, std::int64_t trials, std::uint64_t seed) {
  check_point(sampler.n, x);
  std::vector<double> cumulative;
  double run = 0.0;
  for (const auto& p : sampler.probabilities) cumulative.push_back(run += p.get_d());
  const double mass = sampler.total_mass.get_d();
  const double analytic = simulate_sampler_exact(sampler, x).analytic;
  return accumulate(trials, seed, analytic, [&](CounterRng& rng) {
    if (sampler.terms.empty()) return 0.0;
    const double u = rng.uniform() * run;
    const auto j = std::min<std::size_t>(sampler.terms.size() - 1,
                                         static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()));
    return sampler.terms[j].value(x) ? mass : 0.0;
  });
}

}  // namespace qexp
