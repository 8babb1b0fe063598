#pragma once

// Sum-of-squares degree on the cube: f = sum_i p_i^2 with deg p_i <= d as
// functions on {0,1}^n. Feasibility goes through a Gram-matrix SDP imposed
// pointwise; infeasibility is certified by an exact moment witness.

#include <Eigen/Dense>

#include <optional>
#include <variant>
#include <vector>

#include "qexp/func_core.hpp"
#include "qexp/solver_core.hpp"

namespace qexp {

/// Monomials of degree <= d ordered by degree, then by mask.
std::vector<Subset> monomial_basis(int n, int d);
inline constexpr std::size_t kGramBasisGuard = 300;

struct SosDecomposition {
  int n = 0;
  int degree = 0;
  std::vector<Subset> basis;
  Eigen::MatrixXd gram;
  /// Coefficients of each p_i over `basis`.
  std::vector<Eigen::VectorXd> squares;
  double residual = 0.0;  // max_x |sum_i p_i(x)^2 - f(x)|
  std::vector<Rational> target;

  double square_value(std::size_t i, Point x) const;
  double evaluate(Point x) const;
  /// p_i as a monomial-basis polynomial with the exact binary value of each coefficient.
  MultilinearPoly square_poly(std::size_t i) const;
};

/// Multipliers y over cube points with W = sum_x y_x m(x) m(x)^T psd and
/// sum_x y_x f(x) < 0.
struct SosWitness {
  int n = 0;
  int degree = 0;
  std::vector<Rational> multipliers;
  RationalMatrix moment_matrix;
  Rational value;
};

inline constexpr double kSosVerifyTol = 1e-6;

double sos_residual(const SosDecomposition& dec, const PointFunction& f);
/// Residual within tol, squares of degree <= d, Gram symmetric with min eigenvalue >= -tol.
bool verify_decomposition(const SosDecomposition& dec, const PointFunction& f, double tol = kSosVerifyTol);
bool verify_sos_witness(const SosWitness& w, const PointFunction& f);

/// The pointwise Gram instance m(x)^T Q m(x) = f(x), one constraint per point.
PsdFeasibilityInstance gram_instance(const PointFunction& f, int d);

using SosFeasibility = std::variant<SosDecomposition, SosWitness, Undetermined>;

/// Throws std::invalid_argument for d outside [0, n], std::length_error past the basis guard.
SosFeasibility sos_feasible(const PointFunction& f, int d, const PsdOptions& options = {});

struct SosDegreeResult {
  int lower = 0;
  int upper = 0;
  SosDecomposition decomposition;       // at degree `upper`
  std::vector<SosWitness> witnesses;    // certify every d < lower
  std::vector<int> undetermined_levels;

  bool exact() const { return lower == upper; }
};

SosDegreeResult sos_degree(const PointFunction& f, const PsdOptions& options = {});

/// Value of the degree-d Lasserre relaxation, min{c : c - f is a degree-d sos}.
struct LasserreValue {
  bool bounded = false;    // false: no c works at this level
  Rational lower;          // certified by a witness or by c >= max f
  Rational upper;          // some c with a verified decomposition
  bool converged = false;  // upper - lower <= width
  int probes = 0;
};

inline constexpr double kLasserreWidth = 1e-6;

LasserreValue lasserre_value(const PointFunction& f, int d, const PsdOptions& options = {});
/// deg_sos(max f - f) as a certified interval.
SosDegreeResult lasserre_exact_level(const PointFunction& f, const PsdOptions& options = {});

struct MarkovBound {
  double value = 0.0;
  double max_derivative = 0.0;
  double max_value = 0.0;
  std::size_t grid_points = 0;
};

/// sqrt((n/2) max|q'| / max|q|) over a grid of 10^4 deg(q) points on [0, n]
/// plus endpoints. Throws std::invalid_argument for q = 0.
MarkovBound markov_bound(const UnivariatePoly& q, int n);

struct LowerBoundReport {
  int n = 0;
  int sos_degree_upper = 0;
  std::vector<UnivariatePoly> symmetrized;  // q_i
  UnivariatePoly big_q;                     // Q(k) = sum_i q_i(k)^2
  UnivariatePoly quotient;                  // q = Q / ((k-1)^2 (k-2)^2)
  double remainder_norm = 0.0;
  double big_q_0 = 0.0, big_q_1 = 0.0, big_q_2 = 0.0;
  std::vector<std::pair<int, double>> pointwise;    // (k, q(k)) at k in {0, 3..n}
  std::vector<bool> pointwise_ok;
  MarkovBound markov;
  double sqrt_n_over_48 = 0.0;
  double tol = kSosVerifyTol;

  bool values_ok() const;
  bool remainder_ok() const { return remainder_norm <= tol; }
  bool bounds_ok() const;
  bool degree_consistent() const { return quotient.degree() <= 2 * sos_degree_upper; }
  bool passed() const { return values_ok() && remainder_ok() && bounds_ok() && degree_consistent(); }
};

/// Replays the symmetrization argument on a decomposition of (|x|-1)(|x|-2).
/// Throws std::invalid_argument when the decomposition is for another
/// function or n < 3, std::runtime_error when the remainder exceeds tol.
LowerBoundReport replay_lower_bound(const SosDecomposition& dec, double tol = kSosVerifyTol);

}  // namespace qexp
