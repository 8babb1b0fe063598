#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qexp/solver_core.hpp"

namespace qexp {

void PsdFeasibilityInstance::validate() const {
  if (dim == 0) throw std::invalid_argument("psd instance dimension must be positive");
  for (const auto& c : constraints) {
    for (const auto& e : c.coefficients) {
      if (e.row >= dim || e.col >= dim) throw std::invalid_argument("psd constraint entry out of range");
      if (e.row > e.col) throw std::invalid_argument("psd constraint entries must lie on or above the diagonal");
    }
  }
  if (interior_multipliers && interior_multipliers->size() != constraints.size()) {
    throw std::invalid_argument("interior multiplier count differs from constraint count");
  }
}

RationalMatrix PsdFeasibilityInstance::combine(std::span<const Rational> multipliers) const {
  if (multipliers.size() != constraints.size()) throw std::invalid_argument("multiplier count mismatch");
  RationalMatrix w(dim, dim);
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    if (sgn(multipliers[j]) == 0) continue;
    for (const auto& e : constraints[j].coefficients) {
      const Rational v = multipliers[j] * e.value;
      w(e.row, e.col) += v;
      if (e.row != e.col) w(e.col, e.row) += v;
    }
  }
  return w;
}

bool rational_psd_check(const RationalMatrix& w) {
  if (!w.is_symmetric()) throw std::invalid_argument("rational_psd_check needs a symmetric matrix");
  RationalMatrix a = w;
  const std::size_t m = a.rows();
  std::vector<bool> done(m, false);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t pivot = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const int s = sgn(a(i, i));
      if (s < 0) return false;
      if (s > 0 && pivot == m) pivot = i;
    }
    if (pivot == m) {
      // Remaining diagonal is zero, so the remaining block must vanish.
      for (std::size_t i = 0; i < m; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < m; ++j) {
          if (!done[j] && sgn(a(i, j)) != 0) return false;
        }
      }
      return true;
    }
    done[pivot] = true;
    const Rational inv = 1 / a(pivot, pivot);
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i] || sgn(a(i, pivot)) == 0) continue;
      const Rational f = a(i, pivot) * inv;
      for (std::size_t j = 0; j < m; ++j) {
        if (done[j] || sgn(a(pivot, j)) == 0) continue;
        a(i, j) -= f * a(pivot, j);
      }
    }
  }
  return true;
}

bool verify_moment_witness(const PsdFeasibilityInstance& instance, const MomentWitness& witness) {
  if (witness.multipliers.size() != instance.constraints.size()) return false;
  const RationalMatrix w = instance.combine(witness.multipliers);
  if (!(w == witness.moment_matrix)) return false;
  Rational value = 0;
  for (std::size_t j = 0; j < instance.constraints.size(); ++j) {
    value += witness.multipliers[j] * instance.constraints[j].target;
  }
  if (value != witness.value || sgn(value) >= 0) return false;
  return rational_psd_check(w);
}

std::string dump_instance(const PsdFeasibilityInstance& instance) {
  std::ostringstream out;
  out << "dim " << instance.dim << " " << instance.constraints.size() << "\n";
  for (const auto& c : instance.constraints) {
    out << format_rational(c.target) << " " << c.coefficients.size() << "\n";
    for (const auto& e : c.coefficients) out << e.row << " " << e.col << " " << format_rational(e.value) << "\n";
  }
  return out.str();
}

namespace {

// Gaussian elimination over Q for A y = b; returns one solution or nothing.
std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a(i, c)) != 0) {
        p = i;
        break;
      }
    }
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
      std::swap(b[p], b[r]);
    }
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
      }
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (sgn(b[i]) != 0) return std::nullopt;
  }
  std::vector<Rational> y(cols);
  for (std::size_t i = 0; i < r; ++i) y[pivot_col[i]] = b[i];
  return y;
}

// Exact y with sum_j y_j C_j = 0 and b^T y = -1, if the equalities alone are inconsistent.
std::optional<MomentWitness> linear_inconsistency(const PsdFeasibilityInstance& inst) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> slot;
  for (const auto& c : inst.constraints) {
    for (const auto& e : c.coefficients) slot.emplace(std::make_pair(e.row, e.col), slot.size());
  }
  const std::size_t k = inst.constraints.size();
  RationalMatrix sys(slot.size() + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& e : inst.constraints[j].coefficients) sys(slot.at({e.row, e.col}), j) += e.value;
    sys(slot.size(), j) = inst.constraints[j].target;
  }
  std::vector<Rational> rhs(slot.size() + 1);
  rhs.back() = -1;
  auto y = solve_exact(std::move(sys), std::move(rhs));
  if (!y) return std::nullopt;
  MomentWitness w{*y, inst.combine(*y), Rational(-1)};
  if (!verify_moment_witness(inst, w)) return std::nullopt;
  return w;
}

class AffineSet {
 public:
  explicit AffineSet(const PsdFeasibilityInstance& inst) : m_(inst.dim), n_(m_ * (m_ + 1) / 2) {
    const std::size_t k = inst.constraints.size();
    a_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n_));
    b_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = inst.constraints[j];
      for (const auto& e : c.coefficients) {
        const double scale = e.row == e.col ? 1.0 : std::sqrt(2.0);
        a_(static_cast<Eigen::Index>(j), index(e.row, e.col)) += scale * e.value.get_d();
      }
      b_(static_cast<Eigen::Index>(j)) = c.target.get_d();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    u_ = svd.matrixU().leftCols(r);
    sigma_ = sv.head(r);
    basis_ = svd.matrixV().leftCols(r);
    q0_ = basis_ * (u_.transpose() * b_).cwiseQuotient(sigma_);
  }

  Eigen::Index index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return static_cast<Eigen::Index>(i * m_ - i * (i + 1) / 2 + j);
  }

  double violation(const Eigen::VectorXd& v) const {
    return b_.size() ? (a_ * v - b_).cwiseAbs().maxCoeff() : 0.0;
  }

  bool consistent() const {
    const double scale = std::max(1.0, b_.size() ? b_.cwiseAbs().maxCoeff() : 0.0);
    return (a_ * q0_ - b_).norm() <= 1e-9 * scale;
  }

  Eigen::VectorXd project(const Eigen::VectorXd& v) const {
    const Eigen::VectorXd d = v - q0_;
    return v - basis_ * (basis_.transpose() * d);
  }

  /// Least-squares y with A^T y = g.
  Eigen::VectorXd multipliers_for(const Eigen::VectorXd& g) const {
    return u_ * (basis_.transpose() * g).cwiseQuotient(sigma_);
  }

  Eigen::VectorXd svec(const Eigen::MatrixXd& q) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i; j < m_; ++j) {
        const double s = i == j ? 1.0 : std::sqrt(2.0);
        v(index(i, j)) = s * q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    return v;
  }

  Eigen::MatrixXd smat(const Eigen::VectorXd& v) const {
    Eigen::MatrixXd q(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i; j < m_; ++j) {
        const double s = i == j ? 1.0 : 1.0 / std::sqrt(2.0);
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        q(ii, jj) = q(jj, ii) = s * v(index(i, j));
      }
    }
    return q;
  }

  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  std::size_t m_;
  std::size_t n_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd u_;
  Eigen::VectorXd sigma_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd q0_;
};

Eigen::MatrixXd psd_part(const Eigen::MatrixXd& q, double* min_eig) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (min_eig) *min_eig = lam.size() ? lam.minCoeff() : 0.0;
  const Eigen::VectorXd clamped = lam.cwiseMax(0.0);
  return es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<Rational> round_vector(const Eigen::VectorXd& v, std::int64_t cap) {
  const double scale = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Rational> out(static_cast<std::size_t>(v.size()));
  if (scale == 0.0) return out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = rationalize(v(i) / scale, cap);
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& w) {
  if (w.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::VectorXd to_eigen(const std::vector<Rational>& y) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
  for (std::size_t j = 0; j < y.size(); ++j) v(static_cast<Eigen::Index>(j)) = y[j].get_d();
  return v;
}

// Rounds the multipliers, mixes in the interior point by 10^-k for growing k,
// and runs the exact check only on candidates that look psd in floating point.
std::optional<MomentWitness> try_witness(const PsdFeasibilityInstance& inst, const AffineSet& aff,
                                         const Eigen::VectorXd& lam, const std::vector<Rational>& interior,
                                         const PsdOptions& opt) {
  const Eigen::VectorXd interior_d = to_eigen(interior);
  const Eigen::VectorXd b = [&] {
    Eigen::VectorXd t(static_cast<Eigen::Index>(inst.constraints.size()));
    for (std::size_t j = 0; j < inst.constraints.size(); ++j) t(static_cast<Eigen::Index>(j)) = inst.constraints[j].target.get_d();
    return t;
  }();
  for (std::int64_t cap : {std::int64_t{100}, std::int64_t{10'000}, opt.max_denominator}) {
    if (cap > opt.max_denominator) continue;
    const auto y = round_vector(lam, cap);
    const Eigen::VectorXd yd = to_eigen(y);
    std::vector<Rational> weights{Rational(0)};
    if (!interior.empty()) {
      Rational t(1, 1);
      for (int s = 0; s < opt.shrink_steps; ++s) t /= 10;
      for (int s = 0; s < opt.shrink_steps; ++s, t *= 10) weights.push_back(t);
    }
    for (const auto& t : weights) {
      const double td = t.get_d();
      const Eigen::VectorXd cd = (1.0 - td) * yd + td * (interior.empty() ? Eigen::VectorXd::Zero(yd.size()) : interior_d);
      if (cd.dot(b) >= 0.0) break;
      const Eigen::MatrixXd wd = aff.smat(aff.matrix().transpose() * cd);
      const double scale = std::max(1.0, wd.cwiseAbs().maxCoeff());
      if (min_eigenvalue(wd) < -1e-12 * scale) continue;
      std::vector<Rational> cand(y.size());
      for (std::size_t j = 0; j < y.size(); ++j) cand[j] = sgn(t) == 0 ? y[j] : (1 - t) * y[j] + t * interior[j];
      Rational value = 0;
      for (std::size_t j = 0; j < cand.size(); ++j) value += cand[j] * inst.constraints[j].target;
      if (sgn(value) >= 0) break;
      RationalMatrix w = inst.combine(cand);
      if (rational_psd_check(w)) return MomentWitness{std::move(cand), std::move(w), std::move(value)};
    }
  }
  return std::nullopt;
}

std::vector<Rational> default_interior(const PsdFeasibilityInstance& inst, const AffineSet& aff, std::int64_t cap) {
  if (inst.interior_multipliers) {
    std::vector<Rational> y = *inst.interior_multipliers;
    Rational big = 0;
    for (const auto& v : y) big = std::max(big, Rational(abs(v)));
    if (sgn(big) > 0) {
      for (auto& v : y) v /= big;
    }
    return y;
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(inst.dim),
                                                       static_cast<Eigen::Index>(inst.dim));
  return round_vector(aff.multipliers_for(aff.svec(id)), cap);
}

}  // namespace

PsdResult solve_psd(const PsdFeasibilityInstance& instance, const PsdOptions& options) {
  instance.validate();
  if (options.max_iterations <= 0) throw std::invalid_argument("psd iteration budget must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("psd tolerance must be positive");

  const AffineSet aff(instance);
  if (!aff.consistent()) {
    if (auto w = linear_inconsistency(instance)) return *w;
  }
  const std::vector<Rational> interior = default_interior(instance, aff, options.max_denominator);

  Eigen::VectorXd v = aff.project(Eigen::VectorXd::Zero(aff.matrix().cols()));
  std::vector<double> trace;
  long next_check = 16;
  double residual = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= options.max_iterations; ++it) {
    double min_eig = 0.0;
    const Eigen::MatrixXd p = psd_part(aff.smat(v), nullptr);
    const Eigen::VectorXd pv = aff.svec(p);
    const Eigen::VectorXd next = aff.project(pv);
    residual = (pv - next).norm();
    if (options.keep_residual_trace) trace.push_back(residual);
    if (residual <= options.tol) {
      const double violation = aff.violation(pv);
      if (violation <= options.tol) {
        psd_part(p, &min_eig);
        return ApproxFeasible{p, violation, residual, min_eig, it, std::move(trace)};
      }
    }
    if (it == next_check || it == options.max_iterations) {
      next_check *= 2;
      const Eigen::VectorXd lam = aff.multipliers_for(pv - next);
      if (auto w = try_witness(instance, aff, lam, interior, options)) return *w;
    }
    v = next;
  }
  return Undetermined{residual, options.max_iterations, "iteration budget exhausted without convergence or witness"};
}

}  // namespace qexp
