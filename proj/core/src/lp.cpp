#include <optional>
#include <stdexcept>

#include "qexp/solver_core.hpp"

namespace qexp {

RationalLPInstance::RationalLPInstance(std::size_t rows, std::vector<SparseColumn> columns,
                                       std::vector<Rational> rhs)
    : rows_(rows), columns_(std::move(columns)), rhs_(std::move(rhs)) {
  if (rhs_.size() != rows_) throw std::invalid_argument("LP right-hand side length differs from row count");
  for (const auto& col : columns_) {
    std::int64_t prev = -1;
    for (const auto& [r, v] : col.entries) {
      if (r >= rows_) throw std::invalid_argument("LP column entry row out of range");
      if (static_cast<std::int64_t>(r) <= prev) throw std::invalid_argument("LP column rows must be increasing");
      prev = r;
    }
  }
}

bool verify_lp_point(const RationalLPInstance& instance, std::span<const Rational> x) {
  if (x.size() != instance.cols()) return false;
  std::vector<Rational> ax(instance.rows());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(x[j]) < 0) return false;
    if (sgn(x[j]) == 0) continue;
    for (const auto& [r, v] : instance.column(j).entries) ax[r] += v * x[j];
  }
  return ax == instance.rhs();
}

bool verify_farkas(const RationalLPInstance& instance, const FarkasCertificate& certificate) {
  const auto& y = certificate.y;
  if (y.size() != instance.rows()) return false;
  for (const auto& col : instance.columns()) {
    Rational s = 0;
    for (const auto& [r, v] : col.entries) s += y[r] * v;
    if (sgn(s) > 0) return false;
  }
  Rational yb = 0;
  for (std::size_t r = 0; r < y.size(); ++r) yb += y[r] * instance.rhs()[r];
  return sgn(yb) > 0;
}

namespace {

// Rows b_r = 0 whose entries are all >= 0 force every column with a positive
// entry there to zero. Those columns and rows are removed before the simplex.
struct Presolve {
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  std::vector<bool> forcing_row;
  std::optional<std::size_t> contradiction_row;
};

Presolve presolve(const RationalLPInstance& in) {
  const std::size_t m = in.rows();
  Presolve p;
  std::vector<bool> nonneg(m, true), has_entry(m, false);
  for (const auto& col : in.columns()) {
    for (const auto& [r, v] : col.entries) {
      if (sgn(v) < 0) nonneg[r] = false;
      if (sgn(v) != 0) has_entry[r] = true;
    }
  }
  p.forcing_row.assign(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    p.forcing_row[r] = has_entry[r] && nonneg[r] && sgn(in.rhs()[r]) == 0;
  }
  std::vector<std::size_t> live_count(m, 0);
  for (std::size_t j = 0; j < in.cols(); ++j) {
    bool removed = false;
    for (const auto& [r, v] : in.column(j).entries) {
      if (p.forcing_row[r] && sgn(v) > 0) {
        removed = true;
        break;
      }
    }
    if (removed) continue;
    p.kept_cols.push_back(j);
    for (const auto& [r, v] : in.column(j).entries) {
      if (sgn(v) != 0) ++live_count[r];
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (p.forcing_row[r]) continue;
    if (live_count[r] == 0) {
      if (sgn(in.rhs()[r]) != 0 && !p.contradiction_row) p.contradiction_row = r;
      continue;
    }
    p.kept_rows.push_back(r);
  }
  return p;
}

// Extends a certificate for the reduced rows to the full instance by putting
// a large negative multiplier on the forcing rows.
FarkasCertificate lift_farkas(const RationalLPInstance& in, const Presolve& p, std::vector<Rational> y) {
  Rational big = 0;
  for (const auto& col : in.columns()) {
    Rational live = 0, forced = 0;
    for (const auto& [r, v] : col.entries) {
      if (p.forcing_row[r]) {
        forced += v;
      } else {
        live += y[r] * v;
      }
    }
    if (sgn(live) > 0) {
      if (sgn(forced) <= 0) throw std::logic_error("presolve lift: column with positive reduced weight is not forced");
      const Rational need = live / forced;
      if (need > big) big = need;
    }
  }
  for (std::size_t r = 0; r < in.rows(); ++r) {
    if (p.forcing_row[r]) y[r] = -big;
  }
  return FarkasCertificate{std::move(y)};
}

enum class Status { Optimal, Unbounded };

// Revised simplex with an explicit rational basis inverse. Rows have b >= 0;
// artificial variable ncols + r starts basic in row r.
class Simplex {
 public:
  Simplex(std::vector<SparseColumn> cols, std::vector<Rational> b)
      : m_(b.size()), ncols_(cols.size()), cols_(std::move(cols)), xb_(std::move(b)) {
    binv_.assign(m_ * m_, Rational(0));
    basis_.resize(m_);
    is_basic_.assign(ncols_ + m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      binv_[r * m_ + r] = 1;
      basis_[r] = ncols_ + r;
      is_basic_[ncols_ + r] = true;
    }
  }

  Status run(const std::vector<Rational>& cost, bool allow_artificial) {
    std::vector<Rational> u(m_);
    for (;;) {
      compute_pi(cost);
      std::optional<std::size_t> entering;
      const std::size_t limit = allow_artificial ? ncols_ + m_ : ncols_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_basic_[j]) continue;
        Rational d = cost[j] - dot_pi(j);
        if (sgn(d) < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return Status::Optimal;
      column_in_basis(*entering, u);
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (sgn(u[r]) <= 0) continue;
        Rational ratio = xb_[r] / u[r];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave) return Status::Unbounded;
      pivot(*leave, *entering, u);
    }
  }

  // Pivot basic artificials at zero level out of the basis where possible.
  void drive_out_artificials() {
    std::vector<Rational> u(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < ncols_) continue;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (is_basic_[j]) continue;
        Rational s = 0;
        for (const auto& [row, v] : cols_[j].entries) s += binv_[r * m_ + row] * v;
        if (sgn(s) == 0) continue;
        column_in_basis(j, u);
        pivot(r, j, u);
        break;
      }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational total = 0;
    for (std::size_t r = 0; r < m_; ++r) total += cost[basis_[r]] * xb_[r];
    return total;
  }

  const std::vector<Rational>& pi() const { return pi_; }

  std::vector<Rational> structural_solution() const {
    std::vector<Rational> x(ncols_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < ncols_) x[basis_[r]] = xb_[r];
    }
    return x;
  }

  std::size_t artificial_count() const { return m_; }

 private:
  void compute_pi(const std::vector<Rational>& cost) {
    pi_.assign(m_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& c = cost[basis_[r]];
      if (sgn(c) == 0) continue;
      const Rational* row = &binv_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) {
        if (sgn(row[k]) != 0) pi_[k] += c * row[k];
      }
    }
  }

  Rational dot_pi(std::size_t j) const {
    if (j >= ncols_) return pi_[j - ncols_];
    Rational s = 0;
    for (const auto& [r, v] : cols_[j].entries) {
      if (sgn(pi_[r]) != 0) s += pi_[r] * v;
    }
    return s;
  }

  void column_in_basis(std::size_t j, std::vector<Rational>& u) const {
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational* row = &binv_[r * m_];
      if (j >= ncols_) {
        u[r] = row[j - ncols_];
        continue;
      }
      Rational s = 0;
      for (const auto& [k, v] : cols_[j].entries) {
        if (sgn(row[k]) != 0) s += row[k] * v;
      }
      u[r] = std::move(s);
    }
  }

  void pivot(std::size_t r, std::size_t entering, const std::vector<Rational>& u) {
    const Rational inv = 1 / u[r];
    Rational* prow = &binv_[r * m_];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < m_; ++k) {
      if (sgn(prow[k]) != 0) {
        prow[k] *= inv;
        nz.push_back(k);
      }
    }
    xb_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(u[i]) == 0) continue;
      Rational* row = &binv_[i * m_];
      const Rational& f = u[i];
      for (std::size_t k : nz) row[k] -= f * prow[k];
      xb_[i] -= f * xb_[r];
    }
    is_basic_[basis_[r]] = false;
    basis_[r] = entering;
    is_basic_[entering] = true;
  }

  std::size_t m_;
  std::size_t ncols_;
  std::vector<SparseColumn> cols_;
  std::vector<Rational> xb_;
  std::vector<Rational> binv_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<Rational> pi_;
};

struct Reduced {
  std::vector<SparseColumn> cols;
  std::vector<Rational> b;
  std::vector<bool> flipped;
};

Reduced build_reduced(const RationalLPInstance& in, const Presolve& p) {
  std::vector<std::int64_t> row_map(in.rows(), -1);
  for (std::size_t i = 0; i < p.kept_rows.size(); ++i) row_map[p.kept_rows[i]] = static_cast<std::int64_t>(i);
  Reduced red;
  red.b.resize(p.kept_rows.size());
  red.flipped.resize(p.kept_rows.size());
  for (std::size_t i = 0; i < p.kept_rows.size(); ++i) {
    red.b[i] = in.rhs()[p.kept_rows[i]];
    red.flipped[i] = sgn(red.b[i]) < 0;
    if (red.flipped[i]) red.b[i] = -red.b[i];
  }
  red.cols.reserve(p.kept_cols.size());
  for (std::size_t j : p.kept_cols) {
    SparseColumn c;
    for (const auto& [r, v] : in.column(j).entries) {
      const auto mapped = row_map[r];
      if (mapped < 0 || sgn(v) == 0) continue;
      const auto i = static_cast<std::size_t>(mapped);
      c.entries.emplace_back(static_cast<std::uint32_t>(i), red.flipped[i] ? Rational(-v) : v);
    }
    red.cols.push_back(std::move(c));
  }
  return red;
}

std::optional<FarkasCertificate> presolve_contradiction(const RationalLPInstance& in, const Presolve& p) {
  if (!p.contradiction_row) return std::nullopt;
  std::vector<Rational> y(in.rows());
  y[*p.contradiction_row] = sgn(in.rhs()[*p.contradiction_row]);
  return lift_farkas(in, p, std::move(y));
}

// Phase 1 on the reduced problem. Returns the Farkas vector in full-row
// coordinates when infeasible.
std::optional<FarkasCertificate> phase_one(const RationalLPInstance& in, const Presolve& p, const Reduced& red,
                                           Simplex& simplex) {
  const std::size_t ncols = red.cols.size();
  const std::size_t m = red.b.size();
  std::vector<Rational> cost(ncols + m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) cost[ncols + r] = 1;
  simplex.run(cost, true);
  if (sgn(simplex.objective(cost)) == 0) return std::nullopt;
  std::vector<Rational> y(in.rows());
  const auto& pi = simplex.pi();
  for (std::size_t i = 0; i < m; ++i) y[p.kept_rows[i]] = red.flipped[i] ? Rational(-pi[i]) : pi[i];
  return lift_farkas(in, p, std::move(y));
}

std::vector<Rational> expand_solution(const RationalLPInstance& in, const Presolve& p,
                                      const std::vector<Rational>& reduced_x) {
  std::vector<Rational> x(in.cols());
  for (std::size_t k = 0; k < p.kept_cols.size(); ++k) x[p.kept_cols[k]] = reduced_x[k];
  return x;
}

LPInfeasible checked_infeasible(const RationalLPInstance& in, FarkasCertificate cert) {
  if (!verify_farkas(in, cert)) throw std::logic_error("simplex produced a Farkas vector that fails verification");
  return LPInfeasible{std::move(cert)};
}

}  // namespace

LPResult solve_lp(const RationalLPInstance& instance) {
  const Presolve p = presolve(instance);
  if (auto cert = presolve_contradiction(instance, p)) return checked_infeasible(instance, std::move(*cert));
  Reduced red = build_reduced(instance, p);
  Simplex simplex(red.cols, red.b);
  if (auto cert = phase_one(instance, p, red, simplex)) return checked_infeasible(instance, std::move(*cert));
  auto x = expand_solution(instance, p, simplex.structural_solution());
  if (!verify_lp_point(instance, x)) throw std::logic_error("simplex produced a point that fails verification");
  return LPFeasible{std::move(x)};
}

LPOptimizeResult minimize_lp(const RationalLPInstance& instance, std::span<const Rational> cost) {
  if (cost.size() != instance.cols()) throw std::invalid_argument("cost vector length differs from column count");
  const Presolve p = presolve(instance);
  if (auto cert = presolve_contradiction(instance, p)) return checked_infeasible(instance, std::move(*cert));
  Reduced red = build_reduced(instance, p);
  Simplex simplex(red.cols, red.b);
  if (auto cert = phase_one(instance, p, red, simplex)) return checked_infeasible(instance, std::move(*cert));
  simplex.drive_out_artificials();
  std::vector<Rational> phase2(red.cols.size() + red.b.size(), Rational(0));
  for (std::size_t k = 0; k < p.kept_cols.size(); ++k) phase2[k] = cost[p.kept_cols[k]];
  if (simplex.run(phase2, false) == Status::Unbounded) throw std::domain_error("LP objective is unbounded below");
  auto x = expand_solution(instance, p, simplex.structural_solution());
  if (!verify_lp_point(instance, x)) throw std::logic_error("simplex produced a point that fails verification");
  Rational value = 0;
  for (std::size_t j = 0; j < x.size(); ++j) value += cost[j] * x[j];
  return LPOptimal{std::move(x), std::move(value)};
}

}  // namespace qexp
