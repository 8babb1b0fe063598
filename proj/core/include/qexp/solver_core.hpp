#pragma once

// Feasibility backends.
//
//  * Exact rational LP in the form {x >= 0 : A x = b}, solved with a revised
//    primal simplex under Bland's rule. Every answer carries a certificate that
//    is re-checked exactly before it is returned: a feasible point, or a Farkas
//    vector y with y^T A <= 0 and y^T b > 0.
//  * PSD feasibility {Q >= 0 : <C_j, Q> = b_j} by alternating projections. A
//    floating-point Q is returned when the projections meet; infeasibility is
//    only reported with an exactly verified dual (moment) witness.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qexp/rational.hpp"

namespace qexp {

// ---------------------------------------------------------------- LP ----

struct SparseColumn {
  std::vector<std::pair<std::uint32_t, Rational>> entries;  // (row, value), rows strictly increasing
};

class RationalLPInstance {
 public:
  RationalLPInstance(std::size_t rows, std::vector<SparseColumn> columns, std::vector<Rational> rhs);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseColumn& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseColumn>& columns() const { return columns_; }
  const std::vector<Rational>& rhs() const { return rhs_; }

 private:
  std::size_t rows_;
  std::vector<SparseColumn> columns_;
  std::vector<Rational> rhs_;
};

struct FarkasCertificate {
  std::vector<Rational> y;
};

struct LPFeasible {
  std::vector<Rational> x;
};

struct LPInfeasible {
  FarkasCertificate certificate;
};

using LPResult = std::variant<LPFeasible, LPInfeasible>;

struct LPOptimal {
  std::vector<Rational> x;
  Rational value;
};

using LPOptimizeResult = std::variant<LPOptimal, LPInfeasible>;

/// Feasibility of {x >= 0 : A x = b}. Deterministic (Bland's rule).
LPResult solve_lp(const RationalLPInstance& instance);

/// min c^T x over {x >= 0 : A x = b}. Throws std::domain_error when unbounded.
LPOptimizeResult minimize_lp(const RationalLPInstance& instance, std::span<const Rational> cost);

/// Independent exact checkers.
bool verify_lp_point(const RationalLPInstance& instance, std::span<const Rational> x);
bool verify_farkas(const RationalLPInstance& instance, const FarkasCertificate& certificate);

// --------------------------------------------------------------- PSD ----

struct SymmetricEntry {
  std::uint32_t row;
  std::uint32_t col;  // row <= col; an off-diagonal entry stands for both (row,col) and (col,row)
  Rational value;
};

struct PsdConstraint {
  std::vector<SymmetricEntry> coefficients;
  Rational target;
};

struct PsdFeasibilityInstance {
  std::size_t dim = 0;
  std::vector<PsdConstraint> constraints;
  /// Optional multipliers y0 with sum_j y0_j C_j positive definite; used to
  /// push rounded witnesses into the interior of the psd cone.
  std::optional<std::vector<Rational>> interior_multipliers;

  /// Throws std::invalid_argument on out-of-range or lower-triangular entries.
  void validate() const;
  /// Dense exact sum_j y_j C_j.
  RationalMatrix combine(std::span<const Rational> multipliers) const;
};

struct PsdOptions {
  double tol = 1e-8;
  long max_iterations = 100'000;
  std::int64_t max_denominator = 1'000'000;
  int shrink_steps = 10;
  bool keep_residual_trace = false;
};

struct ApproxFeasible {
  Eigen::MatrixXd gram;
  double residual = 0.0;  // max_j |<C_j, Q> - b_j|
  double distance = 0.0;  // Frobenius distance from Q to the affine set
  double min_eigenvalue = 0.0;
  long iterations = 0;
  std::vector<double> residual_trace;  // distances, one per iteration
};

/// Dual certificate of psd infeasibility: W = sum_j y_j C_j is psd and
/// sum_j y_j b_j < 0, both exact.
struct MomentWitness {
  std::vector<Rational> multipliers;
  RationalMatrix moment_matrix;
  Rational value;
};

struct Undetermined {
  double residual = 0.0;
  long iterations = 0;
  std::string reason;
};

using PsdResult = std::variant<ApproxFeasible, MomentWitness, Undetermined>;

PsdResult solve_psd(const PsdFeasibilityInstance& instance, const PsdOptions& options = {});

/// Exact psd test by symmetric pivoted LDL^T. Throws on non-symmetric input.
bool rational_psd_check(const RationalMatrix& w);

/// Re-checks a witness against an instance exactly.
bool verify_moment_witness(const PsdFeasibilityInstance& instance, const MomentWitness& witness);

/// Plain-text dump: "dim k", then per constraint "target nnz" and "r c value" lines.
std::string dump_instance(const PsdFeasibilityInstance& instance);

}  // namespace qexp
