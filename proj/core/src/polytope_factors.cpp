#include "qexp/polytope_factors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qexp/grover_search.hpp"

namespace qexp {

void NonnegMatrix::validate() const {
  if (row_labels.size() != entries.rows() || col_labels.size() != entries.cols()) {
    throw std::invalid_argument("label count does not match matrix shape");
  }
  for (std::size_t r = 0; r < entries.rows(); ++r) {
    for (std::size_t c = 0; c < entries.cols(); ++c) {
      if (sgn(entries(r, c)) < 0) {
        throw std::invalid_argument("negative entry at (" + row_labels[r] + ", " + col_labels[c] + ")");
      }
    }
  }
}

namespace {

std::vector<std::string> point_labels(int n) {
  std::vector<std::string> out;
  for (Point x = 0; x < cube_size(n); ++x) out.push_back(point_to_bits(x, n));
  return out;
}

std::string matching_label(const std::vector<std::pair<int, int>>& m) {
  std::string s;
  for (const auto& [a, b] : m) {
    if (!s.empty()) s += '|';
    s += std::to_string(a + 1) + "-" + std::to_string(b + 1);
  }
  return s;
}

std::string set_label(Subset u, int n) {
  std::string s = "U{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!(u >> i & 1U)) continue;
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace

NonnegMatrix and_compose(const PointFunction& f) {
  const std::size_t size = f.size();
  NonnegMatrix m{point_labels(f.n()), point_labels(f.n()), RationalMatrix(size, size)};
  for (Point x = 0; x < size; ++x) {
    for (Point y = 0; y < size; ++y) m.entries(x, y) = f(x & y);
  }
  m.validate();
  return m;
}

bool nonnegative_on_naturals(const QuadraticProfile& p) {
  if (sgn(p.c) < 0) return false;
  if (sgn(p.c) == 0) return sgn(p.a) >= 0 && sgn(p.b) >= 0;
  Rational vertex = -p.b / (2 * p.c);
  if (sgn(vertex) < 0) vertex = 0;
  const mpz_class lo = vertex.get_num() / vertex.get_den();
  const Rational lo_q(lo);
  return sgn(p(lo_q)) >= 0 && sgn(p(lo_q + 1)) >= 0;
}

SlackMatrixDescriptor corr_polytope_submatrix(const Rational& a, const Rational& b, const Rational& c, int n) {
  if (n < 1 || n > kMaxVariables) throw std::invalid_argument("n out of range");
  const QuadraticProfile p{a, b, c};
  if (!nonnegative_on_naturals(p)) {
    throw std::invalid_argument("a + b z + c z^2 is negative at some nonnegative integer");
  }
  const std::size_t size = cube_size(n);
  SlackMatrixDescriptor d;
  d.polytope = SlackMatrixDescriptor::Polytope::CorrelationSubmatrix;
  d.n = n;
  d.profile = p;
  d.matrix = NonnegMatrix{point_labels(n), point_labels(n), RationalMatrix(size, size)};
  for (Point x = 0; x < size; ++x) {
    CorrelationInequality ineq{RationalMatrix(n, n), a};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const bool xi = x >> i & 1U, xj = x >> j & 1U;
        Rational v = 0;
        if (xi && xj) v -= c;
        if (i == j && xi) v -= b;
        ineq.lhs(i, j) = v;
      }
    }
    for (Point y = 0; y < size; ++y) {
      d.matrix.entries(x, y) = p(Rational(weight(x & y)));
      Rational inner = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if ((y >> i & 1U) && (y >> j & 1U)) inner += ineq.lhs(i, j);
        }
      }
      if (ineq.rhs - inner != d.matrix.entries(x, y)) throw std::logic_error("inequality slack does not match entry");
    }
    d.inequalities.push_back(std::move(ineq));
  }
  d.matrix.validate();
  return d;
}

bool verify_psd_factorization(const PsdFactorization& fac, const NonnegMatrix& m, double tol) {
  if (fac.row_factors.size() != m.entries.rows() || fac.col_factors.size() != m.entries.cols()) return false;
  auto psd = [&](const Eigen::MatrixXd& a) {
    if (a.rows() != static_cast<Eigen::Index>(fac.size) || a.cols() != a.rows()) return false;
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-8;
  };
  if (!std::all_of(fac.row_factors.begin(), fac.row_factors.end(), psd)) return false;
  if (!std::all_of(fac.col_factors.begin(), fac.col_factors.end(), psd)) return false;
  for (std::size_t x = 0; x < m.entries.rows(); ++x) {
    for (std::size_t y = 0; y < m.entries.cols(); ++y) {
      const double tr = fac.row_factors[x].cwiseProduct(fac.col_factors[y]).sum();
      if (std::abs(tr - m.entries(x, y).get_d()) > tol) return false;
    }
  }
  return true;
}

PsdFactorization psd_factorize_from_sos(const SosDecomposition& sos) {
  const PointFunction f(sos.n, sos.target);
  if (!verify_decomposition(sos, f)) throw std::invalid_argument("decomposition does not verify");
  const std::size_t size = sos.basis.size();
  const std::size_t cube = cube_size(sos.n);
  PsdFactorization fac;
  fac.size = size;
  fac.min_eigenvalue = 0.0;
  for (Point x = 0; x < cube; ++x) {
    Eigen::VectorXd u(size);
    for (std::size_t k = 0; k < size; ++k) u[k] = monomial_value(sos.basis[k], x) ? 1.0 : 0.0;
    fac.row_factors.push_back(u * u.transpose());
  }
  for (Point y = 0; y < cube; ++y) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(size, size);
    for (const auto& c : sos.squares) {
      Eigen::VectorXd w(size);
      for (std::size_t k = 0; k < size; ++k) w[k] = monomial_value(sos.basis[k], y) ? c[k] : 0.0;
      b += w * w.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
    fac.min_eigenvalue = std::min(fac.min_eigenvalue, es.eigenvalues().minCoeff());
    fac.col_factors.push_back(std::move(b));
  }
  const auto m = and_compose(f);
  for (Point x = 0; x < cube; ++x) {
    for (Point y = 0; y < cube; ++y) {
      const double tr = fac.row_factors[x].cwiseProduct(fac.col_factors[y]).sum();
      fac.max_error = std::max(fac.max_error, std::abs(tr - m.entries(x, y).get_d()));
    }
  }
  if (!verify_psd_factorization(fac, m)) throw std::logic_error("psd factorization failed verification");
  const double cap = std::pow(2.0 * sos.n, 2.0 * sos.degree);
  if (static_cast<double>(size) > cap) throw std::logic_error("factorization size exceeds (2n)^{2d}");
  if (matrix_rank(m) > size * size) throw std::logic_error("rank exceeds squared psd factorization size");
  return fac;
}

bool verify_nonneg_factorization(const NonnegFactorization& fac, const NonnegMatrix& m) {
  if (fac.row_vectors.size() != m.entries.rows() || fac.col_vectors.size() != m.entries.cols()) return false;
  auto ok = [&](const std::vector<Rational>& v) {
    return v.size() == fac.size && std::all_of(v.begin(), v.end(), [](const Rational& e) { return sgn(e) >= 0; });
  };
  if (!std::all_of(fac.row_vectors.begin(), fac.row_vectors.end(), ok)) return false;
  if (!std::all_of(fac.col_vectors.begin(), fac.col_vectors.end(), ok)) return false;
  for (std::size_t x = 0; x < m.entries.rows(); ++x) {
    for (std::size_t y = 0; y < m.entries.cols(); ++y) {
      Rational dot = 0;
      for (std::size_t k = 0; k < fac.size; ++k) dot += fac.row_vectors[x][k] * fac.col_vectors[y][k];
      if (dot != m.entries(x, y)) return false;
    }
  }
  return true;
}

NonnegFactorization nonneg_factorize_from_rep(const NonnegLiteralRep& rep) {
  for (const auto& t : rep.terms) {
    if (t.negated != 0) throw std::domain_error("not factorable by this construction: negated literal present");
  }
  std::vector<Rational> values;
  for (Point x = 0; x < cube_size(rep.n); ++x) values.push_back(rep.evaluate(x));
  const PointFunction f(rep.n, values);
  if (!verify_representation(rep, f)) throw std::invalid_argument("malformed representation");
  NonnegFactorization fac;
  fac.size = rep.terms.size();
  for (Point x = 0; x < cube_size(rep.n); ++x) {
    std::vector<Rational> a, b;
    for (const auto& t : rep.terms) {
      const bool on = monomial_value(t.set, x);
      a.push_back(on ? t.alpha : Rational(0));
      b.push_back(on ? 1 : 0);
    }
    fac.row_vectors.push_back(std::move(a));
    fac.col_vectors.push_back(std::move(b));
  }
  const auto m = and_compose(f);
  if (!verify_nonneg_factorization(fac, m)) throw std::logic_error("nonnegative factorization failed verification");
  if (fac.size < matrix_rank(m)) throw std::logic_error("factorization smaller than rank");
  return fac;
}

std::size_t matrix_rank(const NonnegMatrix& m) { return exact_rank(m.entries); }

std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int n) {
  if (n < 2 || n % 2 != 0 || n > 16) throw std::invalid_argument("perfect matchings need an even n in [2, 16]");
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t used) {
    if (used == (std::uint32_t{1} << n) - 1) {
      out.push_back(cur);
      return;
    }
    const int a = std::countr_one(used);
    for (int b = a + 1; b < n; ++b) {
      if (used >> b & 1U) continue;
      cur.emplace_back(a, b);
      rec(used | (1U << a) | (1U << b));
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int cut_size(Subset u, const std::vector<std::pair<int, int>>& matching) {
  int k = 0;
  for (const auto& [a, b] : matching) k += ((u >> a & 1U) != (u >> b & 1U)) ? 1 : 0;
  return k;
}

SlackMatrixDescriptor matching_slack(int n) {
  if (n < 4 || n > 10 || n % 2 != 0) throw std::invalid_argument("matching slack needs an even n with 4 <= n <= 10");
  SlackMatrixDescriptor d;
  d.polytope = SlackMatrixDescriptor::Polytope::Matching;
  d.n = n;
  d.matchings = perfect_matchings(n);
  for (const auto& m : d.matchings) d.matrix.col_labels.push_back(matching_label(m));

  for (Subset u = 1; u < (Subset{1} << n); u += 2) {
    const int w = weight(u);
    if (w % 2 == 1 && w >= 3 && w <= n - 3) d.odd_sets.push_back(u);
  }
  for (Subset u : d.odd_sets) d.matrix.row_labels.push_back(set_label(u, n));
  for (int v = 0; v < n; ++v) d.matrix.row_labels.push_back("deg " + std::to_string(v + 1));
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      edges.emplace_back(a, b);
      d.matrix.row_labels.push_back("x" + std::to_string(a + 1) + "-" + std::to_string(b + 1) + ">=0");
    }
  }
  d.degree_rows = n;
  d.nonneg_rows = edges.size();

  const std::size_t cols = d.matchings.size();
  d.matrix.entries = RationalMatrix(d.matrix.row_labels.size(), cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& m = d.matchings[j];
    for (std::size_t i = 0; i < d.odd_sets.size(); ++i) {
      const int k = cut_size(d.odd_sets[i], m);
      if (k < 1) throw std::logic_error("perfect matching misses an odd cut");
      d.matrix.entries(i, j) = k - 1;
    }
    std::size_t row = d.odd_sets.size();
    for (int v = 0; v < n; ++v, ++row) {
      int deg = 0;
      for (const auto& [a, b] : m) deg += (a == v || b == v) ? 1 : 0;
      d.matrix.entries(row, j) = 1 - deg;
    }
    for (const auto& e : edges) {
      d.matrix.entries(row++, j) = std::find(m.begin(), m.end(), e) != m.end() ? 1 : 0;
    }
  }
  d.matrix.validate();
  return d;
}

MatchingApproxReport matching_slack_approx(int n, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  MatchingApproxReport rep;
  rep.exact = matching_slack(n);
  rep.epsilon = eps;
  const std::int64_t m = n / 2;
  rep.ell = ell_for_epsilon(m, eps);
  rep.ell_unrounded = std::pow(static_cast<double>(m), 2.0 * eps);
  const auto plan = make_plan(m, rep.ell);
  rep.query_cost = plan.total_queries;

  const auto& s = rep.exact.matrix.entries;
  rep.approx.assign(s.rows(), std::vector<double>(s.cols(), 0.0));
  std::vector<double> by_k(m + 1);
  for (std::int64_t k = 0; k <= m; ++k) by_k[k] = approx_count_expectation(plan, k);

  for (std::size_t j = 0; j < s.cols(); ++j) {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      const double exact = s(i, j).get_d();
      if (i >= rep.exact.odd_sets.size()) {
        rep.approx[i][j] = exact;
        continue;
      }
      const std::int64_t k = cut_size(rep.exact.odd_sets[i], rep.exact.matchings[j]);
      const double approx = by_k[k];
      rep.approx[i][j] = approx;
      if (k <= rep.ell) ++rep.exact_class_entries;
      if (static_cast<double>(k) <= rep.ell_unrounded) ++rep.exact_class_entries_unrounded;
      if (k <= rep.ell) {
        if (approx != exact) ++rep.violations;
      } else {
        ++rep.sandwich_entries;
        const double gap = exact - approx;
        const double bound = std::exp2(-std::sqrt(static_cast<double>(rep.ell * k))) * (exact);
        if (gap < -1e-12 || gap > bound + 1e-12) ++rep.violations;
      }
    }
  }
  return rep;
}

}  // namespace qexp
