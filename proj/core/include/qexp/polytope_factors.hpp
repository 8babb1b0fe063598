#pragma once

// Matrices built from cube functions and polytopes, with verified psd and
// nonnegative factorizations, exact rank, and the perfect matching slack
// matrix together with its query-based approximation.

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "qexp/func_core.hpp"
#include "qexp/nnl_degree.hpp"
#include "qexp/sos_degree.hpp"

namespace qexp {

struct NonnegMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  RationalMatrix entries;

  /// Throws std::invalid_argument on a negative entry or label mismatch.
  void validate() const;
};

/// M_f(x, y) = f(x AND y) over all x, y in {0,1}^n.
NonnegMatrix and_compose(const PointFunction& f);

/// p(z) = a + b z + c z^2.
struct QuadraticProfile {
  Rational a, b, c;
  Rational operator()(const Rational& z) const { return a + b * z + c * z * z; }
};

/// Row inequality <lhs, Y> <= rhs on the correlation polytope with slack p(|x AND y|) at Y = y y^T.
struct CorrelationInequality {
  RationalMatrix lhs;
  Rational rhs;
};

struct SlackMatrixDescriptor {
  enum class Polytope { Matching, CorrelationSubmatrix };

  Polytope polytope = Polytope::Matching;
  int n = 0;
  NonnegMatrix matrix;

  // Matching: rows are odd sets, then vertex degree rows, then edge nonnegativity rows.
  std::vector<Subset> odd_sets;
  std::size_t degree_rows = 0;
  std::size_t nonneg_rows = 0;
  std::vector<std::vector<std::pair<int, int>>> matchings;

  // Correlation submatrix.
  QuadraticProfile profile;
  std::vector<CorrelationInequality> inequalities;
};

/// True when p >= 0 on every nonnegative integer.
bool nonnegative_on_naturals(const QuadraticProfile& p);

/// Throws std::invalid_argument when p is negative at some nonnegative integer.
SlackMatrixDescriptor corr_polytope_submatrix(const Rational& a, const Rational& b, const Rational& c, int n);

struct PsdFactorization {
  std::size_t size = 0;
  std::vector<Eigen::MatrixXd> row_factors;  // A_x
  std::vector<Eigen::MatrixXd> col_factors;  // B_y
  double max_error = 0.0;
  double min_eigenvalue = 0.0;
};

/// max |Tr(A_x B_y) - M(x,y)| <= tol and every factor psd up to 1e-8.
bool verify_psd_factorization(const PsdFactorization& fac, const NonnegMatrix& m, double tol = 1e-6);

/// A_x = u_x u_x^T, B_y = sum_i w_i w_i^T with (w_i)_S = c_{i,S} m_S(y).
/// Throws std::invalid_argument for an unverified decomposition.
PsdFactorization psd_factorize_from_sos(const SosDecomposition& sos);

struct NonnegFactorization {
  std::size_t size = 0;
  std::vector<std::vector<Rational>> row_vectors;  // a_x
  std::vector<std::vector<Rational>> col_vectors;  // b_y
};

bool verify_nonneg_factorization(const NonnegFactorization& fac, const NonnegMatrix& m);

/// Pure-monomial representations only; throws std::domain_error otherwise.
NonnegFactorization nonneg_factorize_from_rep(const NonnegLiteralRep& rep);

std::size_t matrix_rank(const NonnegMatrix& m);

/// Canonical order: the smallest unmatched vertex is paired first.
std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int n);
int cut_size(Subset u, const std::vector<std::pair<int, int>>& matching);

/// Throws std::invalid_argument unless n is even and 4 <= n <= 10.
SlackMatrixDescriptor matching_slack(int n);

struct MatchingApproxReport {
  SlackMatrixDescriptor exact;
  double epsilon = 0.0;
  std::int64_t ell = 0;
  double ell_unrounded = 0.0;  // (n/2)^{2 eps}
  std::vector<std::vector<double>> approx;
  std::size_t exact_class_entries = 0;          // cut size <= ell
  std::size_t exact_class_entries_unrounded = 0;  // cut size <= (n/2)^{2 eps}
  std::size_t sandwich_entries = 0;
  std::size_t violations = 0;
  std::int64_t query_cost = 0;
  std::string rank_bound = "2^{O(n^{1/2+eps} (log n)^2)}";

  bool passed() const { return violations == 0; }
};

/// Throws std::invalid_argument unless 0 < eps < 1/2.
MatchingApproxReport matching_slack_approx(int n, double eps);

}  // namespace qexp
