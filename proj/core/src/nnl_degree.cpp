#include "qexp/nnl_degree.hpp"

#include <stdexcept>

namespace qexp {

namespace {

// Sub-masks of s in increasing numeric order.
std::vector<Subset> submasks_ascending(Subset s) {
  std::vector<Subset> out;
  Subset sub = 0;
  do {
    out.push_back(sub);
    sub = (sub - s) & s;
  } while (sub != 0);
  return out;
}

// All literal terms of degree <= d: by degree, then set mask, then negation mask.
std::vector<LiteralTerm> literal_columns(int n, int d) {
  std::vector<LiteralTerm> cols;
  const Subset full = static_cast<Subset>(cube_size(n));
  for (int k = 0; k <= d; ++k) {
    for (Subset s = 0; s < full; ++s) {
      if (weight(s) != k) continue;
      for (Subset neg : submasks_ascending(s)) cols.push_back(LiteralTerm{s, neg, Rational(0)});
    }
  }
  return cols;
}

void check_degree(const PointFunction& f, int d) {
  if (d < 0 || d > f.n()) {
    throw std::invalid_argument("degree " + std::to_string(d) + " outside [0, " + std::to_string(f.n()) + "]");
  }
  if (literal_column_count(f.n(), d) > kLiteralColumnGuard) {
    throw std::length_error("literal LP exceeds the column guard at n=" + std::to_string(f.n()) +
                            ", d=" + std::to_string(d));
  }
}

SparseColumn column_of(const LiteralTerm& t, int n) {
  SparseColumn c;
  for (Point x = 0; x < cube_size(n); ++x) {
    if (t.value(x)) c.entries.emplace_back(x, Rational(1));
  }
  return c;
}

}  // namespace

int NonnegLiteralRep::degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.degree());
  return d;
}

Rational NonnegLiteralRep::evaluate(Point x) const {
  Rational s = 0;
  for (const auto& t : terms) {
    if (t.value(x)) s += t.alpha;
  }
  return s;
}

bool verify_representation(const NonnegLiteralRep& rep, const PointFunction& f) {
  if (rep.n != f.n()) return false;
  const Subset full = static_cast<Subset>(cube_size(f.n()) - 1);
  for (const auto& t : rep.terms) {
    if (sgn(t.alpha) < 0 || (t.set & ~full) != 0 || (t.negated & ~t.set) != 0) return false;
  }
  for (Point x = 0; x < f.size(); ++x) {
    if (rep.evaluate(x) != f(x)) return false;
  }
  return true;
}

bool verify_nnl_certificate(const PointFunction& f, int d, const FarkasCertificate& cert) {
  if (cert.y.size() != f.size() || d < 0 || d > f.n()) return false;
  for (const auto& t : literal_columns(f.n(), d)) {
    Rational s = 0;
    for (Point x = 0; x < f.size(); ++x) {
      if (t.value(x)) s += cert.y[x];
    }
    if (sgn(s) > 0) return false;
  }
  Rational yb = 0;
  for (Point x = 0; x < f.size(); ++x) yb += cert.y[x] * f(x);
  return sgn(yb) > 0;
}

std::size_t literal_column_count(int n, int d) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (int k = 0; k <= d && k <= n; ++k) {
    total += binom << k;
    binom = binom * static_cast<std::size_t>(n - k) / static_cast<std::size_t>(k + 1);
  }
  return total;
}

NnlFeasibility nnl_feasible(const PointFunction& f, int d) {
  check_degree(f, d);
  const int n = f.n();
  const auto terms = literal_columns(n, d);
  std::vector<SparseColumn> cols;
  cols.reserve(terms.size());
  for (const auto& t : terms) cols.push_back(column_of(t, n));
  const RationalLPInstance lp(f.size(), std::move(cols), f.values());
  auto result = solve_lp(lp);
  if (auto* inf = std::get_if<LPInfeasible>(&result)) {
    if (!verify_nnl_certificate(f, d, inf->certificate)) throw std::logic_error("literal LP certificate failed");
    return std::move(inf->certificate);
  }
  const auto& x = std::get<LPFeasible>(result).x;
  NonnegLiteralRep rep{n, {}};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (sgn(x[j]) == 0) continue;
    rep.terms.push_back(LiteralTerm{terms[j].set, terms[j].negated, x[j]});
  }
  if (!verify_representation(rep, f)) throw std::logic_error("literal LP representation failed");
  return rep;
}

NnlDegreeResult nnl_degree(const PointFunction& f) {
  NnlDegreeResult out;
  for (int d = 0; d <= f.n(); ++d) {
    if (!out.lower_certificates.empty() && verify_nnl_certificate(f, d, out.lower_certificates.back())) {
      out.lower_certificates.push_back(out.lower_certificates.back());
      continue;
    }
    auto r = nnl_feasible(f, d);
    if (auto* rep = std::get_if<NonnegLiteralRep>(&r)) {
      out.degree = d;
      out.rep = std::move(*rep);
      return out;
    }
    out.lower_certificates.push_back(std::get<FarkasCertificate>(std::move(r)));
  }
  throw std::logic_error("literal representation missing at d = n");
}

SamplerAlgorithm synthesize_sampler(const NonnegLiteralRep& rep) {
  SamplerAlgorithm alg;
  alg.n = rep.n;
  alg.query_cost = rep.degree();
  for (const auto& t : rep.terms) {
    if (sgn(t.alpha) < 0) throw std::invalid_argument("literal representation has a negative weight");
    if (sgn(t.alpha) == 0) continue;
    alg.total_mass += t.alpha;
    alg.terms.push_back(t);
  }
  for (const auto& t : alg.terms) alg.probabilities.push_back(t.alpha / alg.total_mass);
  return alg;
}

std::optional<Rational> sherali_adams_value(const PointFunction& f, int d) {
  check_degree(f, d);
  const int n = f.n();
  const auto terms = literal_columns(n, d);
  std::vector<SparseColumn> cols;
  cols.reserve(terms.size() + 1);
  for (const auto& t : terms) cols.push_back(column_of(t, n));
  SparseColumn c_col;
  for (Point x = 0; x < f.size(); ++x) c_col.entries.emplace_back(x, Rational(-1));
  cols.push_back(std::move(c_col));
  std::vector<Rational> rhs(f.size());
  for (Point x = 0; x < f.size(); ++x) rhs[x] = -f(x);
  const RationalLPInstance lp(f.size(), std::move(cols), std::move(rhs));
  std::vector<Rational> cost(lp.cols());
  cost.back() = 1;
  auto result = minimize_lp(lp, cost);
  if (std::holds_alternative<LPInfeasible>(result)) return std::nullopt;
  return std::get<LPOptimal>(result).value;
}

int sa_exact_level(const PointFunction& f) { return nnl_degree(f.complement_from(f.max_value())).degree; }

}  // namespace qexp
