#pragma once

// Nonnegative literal degree: f as a nonnegative combination of products of
// literals x_i and (1 - x_i), decided exactly by LP, with the matching
// sampling algorithm and Sherali-Adams values.

#include <optional>
#include <variant>
#include <vector>

#include "qexp/func_core.hpp"
#include "qexp/solver_core.hpp"

namespace qexp {

/// alpha * prod_{i in set, not negated} x_i * prod_{i in negated} (1 - x_i).
struct LiteralTerm {
  Subset set = 0;
  Subset negated = 0;  // subset of `set`
  Rational alpha;

  bool value(Point x) const { return (x & set) == (set & ~negated); }
  int degree() const { return weight(set); }
};

struct NonnegLiteralRep {
  int n = 0;
  std::vector<LiteralTerm> terms;

  int degree() const;
  Rational evaluate(Point x) const;
};

/// Exact pointwise equality with f plus alpha >= 0 and well-formed terms.
bool verify_representation(const NonnegLiteralRep& rep, const PointFunction& f);

/// Checks y over cube points: sum_{x in term} y_x <= 0 for every literal term
/// of degree <= d, and sum_x y_x f(x) > 0.
bool verify_nnl_certificate(const PointFunction& f, int d, const FarkasCertificate& cert);

/// Number of LP columns sum_{k<=d} C(n,k) 2^k.
std::size_t literal_column_count(int n, int d);
inline constexpr std::size_t kLiteralColumnGuard = 100'000;

using NnlFeasibility = std::variant<NonnegLiteralRep, FarkasCertificate>;

/// Throws std::invalid_argument for d outside [0, n] and std::length_error
/// when the column guard is exceeded.
NnlFeasibility nnl_feasible(const PointFunction& f, int d);

struct NnlDegreeResult {
  int degree = 0;
  NonnegLiteralRep rep;
  std::vector<FarkasCertificate> lower_certificates;  // one per d' < degree
};

NnlDegreeResult nnl_degree(const PointFunction& f);

struct SamplerAlgorithm {
  int n = 0;
  Rational total_mass;
  std::vector<LiteralTerm> terms;
  std::vector<Rational> probabilities;  // alpha / M
  int query_cost = 0;
};

SamplerAlgorithm synthesize_sampler(const NonnegLiteralRep& rep);

/// min{c : c - f has a degree-d literal representation}; nullopt when no c
/// works (c - f must have multilinear degree <= d).
std::optional<Rational> sherali_adams_value(const PointFunction& f, int d);

/// ldeg+(max f - f).
int sa_exact_level(const PointFunction& f);

}  // namespace qexp
