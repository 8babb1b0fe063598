#include "qexp/sos_degree.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qexp {

namespace {

void check_degree(const PointFunction& f, int d) {
  if (d < 0 || d > f.n()) {
    throw std::invalid_argument("degree " + std::to_string(d) + " outside [0, " + std::to_string(f.n()) + "]");
  }
}

RationalMatrix moment_combination(const std::vector<Subset>& basis, int n, std::span<const Rational> y) {
  const std::size_t m = basis.size();
  RationalMatrix w(m, m);
  for (Point x = 0; x < cube_size(n); ++x) {
    if (sgn(y[x]) == 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      if (!monomial_value(basis[i], x)) continue;
      for (std::size_t j = i; j < m; ++j) {
        if (monomial_value(basis[j], x)) w(i, j) += y[x];
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) w(i, j) = w(j, i);
  }
  return w;
}

Rational pairing(std::span<const Rational> y, const PointFunction& f) {
  Rational s = 0;
  for (Point x = 0; x < f.size(); ++x) s += y[x] * f(x);
  return s;
}

std::optional<SosWitness> make_witness(const PointFunction& f, int d, const std::vector<Subset>& basis,
                                       std::vector<Rational> y) {
  SosWitness w{f.n(), d, std::move(y), {}, 0};
  w.value = pairing(w.multipliers, f);
  if (sgn(w.value) >= 0) return std::nullopt;
  w.moment_matrix = moment_combination(basis, f.n(), w.multipliers);
  if (!rational_psd_check(w.moment_matrix)) return std::nullopt;
  return w;
}

SosDecomposition from_squares(const PointFunction& f, int d, std::vector<Subset> basis,
                              std::vector<Eigen::VectorXd> squares) {
  SosDecomposition dec;
  dec.n = f.n();
  dec.degree = d;
  const auto m = static_cast<Eigen::Index>(basis.size());
  dec.basis = std::move(basis);
  dec.gram = Eigen::MatrixXd::Zero(m, m);
  for (const auto& p : squares) dec.gram += p * p.transpose();
  dec.squares = std::move(squares);
  dec.target = f.values();
  dec.residual = sos_residual(dec, f);
  return dec;
}

std::vector<Eigen::VectorXd> factor_psd(const Eigen::MatrixXd& q) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  std::vector<Eigen::VectorXd> out;
  const double top = es.eigenvalues().size() ? std::max(0.0, es.eigenvalues().maxCoeff()) : 0.0;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 1e-15 * std::max(1.0, top)) continue;
    out.push_back(std::sqrt(lam) * es.eigenvectors().col(i));
  }
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (sgn(v) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), v.get_den_mpz_t());
  return Rational(num, den);
}

// f = p^2 with p the multilinear interpolation of sqrt(f), when that exists at degree <= d.
std::optional<SosDecomposition> single_square(const PointFunction& f, int d, const std::vector<Subset>& basis) {
  std::vector<Rational> roots(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    auto r = exact_sqrt(f(x));
    if (!r) return std::nullopt;
    roots[x] = *r;
  }
  const MultilinearPoly p = interpolate_multilinear(f.n(), roots);
  if (p.degree() > d) return std::nullopt;
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Eigen::Index>(i)) = p.coeff(basis[i]).get_d();
  std::vector<Eigen::VectorXd> squares;
  if (!p.is_zero()) squares.push_back(c);
  return from_squares(f, d, basis, std::move(squares));
}

// f = sum_x f(x) delta_x^2 with the point indicators delta_x (degree n).
SosDecomposition indicator_squares(const PointFunction& f) {
  const int n = f.n();
  auto basis = monomial_basis(n, n);
  std::vector<std::size_t> pos(cube_size(n));
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  std::vector<Eigen::VectorXd> squares;
  for (Point x = 0; x < f.size(); ++x) {
    if (sgn(f(x)) == 0) continue;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
    const double root = std::sqrt(f(x).get_d());
    for (Subset s = 0; s < cube_size(n); ++s) {
      if ((s & x) != x) continue;
      c(static_cast<Eigen::Index>(pos[s])) = (weight(s ^ x) % 2 == 0) ? root : -root;
    }
    squares.push_back(std::move(c));
  }
  return from_squares(f, n, std::move(basis), std::move(squares));
}

// Rational basis (columns) of {v : m(z)^T v = 0 for every zero z of f}.
std::vector<std::vector<Rational>> zero_face(const PointFunction& f, const std::vector<Subset>& basis) {
  const auto zeros = f.zeros();
  const std::size_t m = basis.size();
  RationalMatrix a(zeros.size(), m);
  for (std::size_t r = 0; r < zeros.size(); ++r) {
    for (std::size_t j = 0; j < m; ++j) a(r, j) = monomial_value(basis[j], zeros[r]) ? 1 : 0;
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < zeros.size(); ++c) {
    std::size_t p = zeros.size();
    for (std::size_t i = row; i < zeros.size(); ++i) {
      if (sgn(a(i, c)) != 0) {
        p = i;
        break;
      }
    }
    if (p == zeros.size()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m; ++j) std::swap(a(p, j), a(row, j));
    }
    const Rational inv = 1 / a(row, c);
    for (std::size_t j = c; j < m; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (i == row || sgn(a(i, c)) == 0) continue;
      const Rational factor = a(i, c);
      for (std::size_t j = c; j < m; ++j) {
        if (sgn(a(row, j)) != 0) a(i, j) -= factor * a(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(m, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    out.push_back(std::move(v));
  }
  return out;
}

struct ReducedProblem {
  PsdFeasibilityInstance instance;
  std::vector<Point> points;  // cube point of each constraint
};

ReducedProblem reduce(const PointFunction& f, const std::vector<Subset>& basis,
                      const std::vector<std::vector<Rational>>& face) {
  ReducedProblem red;
  const std::size_t r = face.size();
  red.instance.dim = r;
  for (Point x = 0; x < f.size(); ++x) {
    if (sgn(f(x)) == 0) continue;
    std::vector<Rational> u(r);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (monomial_value(basis[j], x)) u[k] += face[k][j];
      }
    }
    PsdConstraint c;
    c.target = f(x);
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(u[i]) == 0) continue;
      for (std::size_t j = i; j < r; ++j) {
        if (sgn(u[j]) != 0) c.coefficients.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), u[i] * u[j]});
      }
    }
    red.instance.constraints.push_back(std::move(c));
    red.points.push_back(x);
  }
  red.instance.interior_multipliers = std::vector<Rational>(red.points.size(), Rational(1));
  return red;
}

// Extends multipliers on the nonzero points by a large weight on the zeros of f.
std::optional<SosWitness> lift_witness(const PointFunction& f, int d, const std::vector<Subset>& basis,
                                       const ReducedProblem& red, const std::vector<Rational>& reduced_y) {
  const auto zeros = f.zeros();
  std::vector<std::vector<Rational>> candidates{reduced_y};
  Rational t(1, 1000000000);
  for (int s = 0; s < 8; ++s, t *= 10) {
    std::vector<Rational> mixed(reduced_y.size());
    for (std::size_t j = 0; j < mixed.size(); ++j) mixed[j] = (1 - t) * reduced_y[j] + t;
    candidates.push_back(std::move(mixed));
  }
  const auto m = static_cast<Eigen::Index>(basis.size());
  auto outer = [&](Point x) {
    Eigen::VectorXd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = monomial_value(basis[static_cast<std::size_t>(i)], x) ? 1.0 : 0.0;
    return Eigen::MatrixXd(v * v.transpose());
  };
  Eigen::MatrixXd zero_part = Eigen::MatrixXd::Zero(m, m);
  for (Point z : zeros) zero_part += outer(z);
  for (const auto& cand : candidates) {
    std::vector<Rational> y(f.size());
    Eigen::MatrixXd live = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t j = 0; j < red.points.size(); ++j) {
      y[red.points[j]] = cand[j];
      live += cand[j].get_d() * outer(red.points[j]);
    }
    if (sgn(pairing(y, f)) >= 0) continue;
    Rational big = 1;
    for (int k = 0; k <= 40; ++k, big *= 4) {
      const Eigen::MatrixXd wd = live + big.get_d() * zero_part;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(wd, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, wd.cwiseAbs().maxCoeff())) continue;
      for (Point z : zeros) y[z] = big;
      if (auto w = make_witness(f, d, basis, y)) return w;
      if (zeros.empty()) break;
    }
  }
  return std::nullopt;
}

// Fourier character of weight > 2d carried by f.
std::optional<SosWitness> high_degree_witness(const PointFunction& f, int d, const std::vector<Subset>& basis) {
  const auto fourier = to_fourier(interpolate_multilinear(f));
  std::optional<Subset> top;
  for (Subset s = 0; s < fourier.size(); ++s) {
    if (sgn(fourier[s]) != 0 && weight(s) > 2 * d && (!top || weight(s) > weight(*top))) top = s;
  }
  if (!top) return std::nullopt;
  const int sign = sgn(fourier[*top]);
  std::vector<Rational> y(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    const bool odd = weight(x & *top) % 2 == 1;
    y[x] = (odd ? 1 : -1) * sign;
  }
  return make_witness(f, d, basis, std::move(y));
}

std::optional<SosWitness> constant_level_witness(const PointFunction& f, const std::vector<Subset>& basis) {
  Point lo = 0, hi = 0;
  for (Point x = 0; x < f.size(); ++x) {
    if (f(x) < f(lo)) lo = x;
    if (f(x) > f(hi)) hi = x;
  }
  std::vector<Rational> y(f.size());
  y[lo] = 1;
  y[hi] = -1;
  return make_witness(f, 0, basis, std::move(y));
}

}  // namespace

std::vector<Subset> monomial_basis(int n, int d) {
  std::vector<Subset> out;
  for (int k = 0; k <= d; ++k) {
    for (Subset s = 0; s < cube_size(n); ++s) {
      if (weight(s) == k) out.push_back(s);
    }
  }
  return out;
}

double SosDecomposition::square_value(std::size_t i, Point x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (monomial_value(basis[j], x)) v += squares[i](static_cast<Eigen::Index>(j));
  }
  return v;
}

double SosDecomposition::evaluate(Point x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const double v = square_value(i, x);
    s += v * v;
  }
  return s;
}

MultilinearPoly SosDecomposition::square_poly(std::size_t i) const {
  MultilinearPoly p(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    p.coeff(basis[j]) = rational_from_double(squares[i](static_cast<Eigen::Index>(j)));
  }
  return p;
}

double sos_residual(const SosDecomposition& dec, const PointFunction& f) {
  double worst = 0.0;
  for (Point x = 0; x < f.size(); ++x) worst = std::max(worst, std::abs(dec.evaluate(x) - f(x).get_d()));
  return worst;
}

bool verify_decomposition(const SosDecomposition& dec, const PointFunction& f, double tol) {
  if (dec.n != f.n() || dec.target != f.values()) return false;
  for (Subset s : dec.basis) {
    if (weight(s) > dec.degree || s >= cube_size(f.n())) return false;
  }
  for (const auto& p : dec.squares) {
    if (static_cast<std::size_t>(p.size()) != dec.basis.size()) return false;
  }
  if (sos_residual(dec, f) > tol) return false;
  const auto m = static_cast<Eigen::Index>(dec.basis.size());
  if (dec.gram.rows() != m || dec.gram.cols() != m) return false;
  if ((dec.gram - dec.gram.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if (m == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dec.gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool verify_sos_witness(const SosWitness& w, const PointFunction& f) {
  if (w.n != f.n() || w.multipliers.size() != f.size() || w.degree < 0 || w.degree > f.n()) return false;
  const auto basis = monomial_basis(f.n(), w.degree);
  const RationalMatrix recomputed = moment_combination(basis, f.n(), w.multipliers);
  if (!(recomputed == w.moment_matrix)) return false;
  const Rational value = pairing(w.multipliers, f);
  if (value != w.value || sgn(value) >= 0) return false;
  return rational_psd_check(recomputed);
}

PsdFeasibilityInstance gram_instance(const PointFunction& f, int d) {
  check_degree(f, d);
  const auto basis = monomial_basis(f.n(), d);
  PsdFeasibilityInstance inst;
  inst.dim = basis.size();
  for (Point x = 0; x < f.size(); ++x) {
    PsdConstraint c;
    c.target = f(x);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!monomial_value(basis[i], x)) continue;
      for (std::size_t j = i; j < basis.size(); ++j) {
        if (monomial_value(basis[j], x)) c.coefficients.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Rational(1)});
      }
    }
    inst.constraints.push_back(std::move(c));
  }
  inst.interior_multipliers = std::vector<Rational>(f.size(), Rational(1));
  return inst;
}

SosFeasibility sos_feasible(const PointFunction& f, int d, const PsdOptions& options) {
  check_degree(f, d);
  auto basis = monomial_basis(f.n(), d);
  if (basis.size() > kGramBasisGuard) {
    throw std::length_error("Gram basis of size " + std::to_string(basis.size()) + " exceeds the guard");
  }
  if (auto dec = single_square(f, d, basis)) return std::move(*dec);
  if (d == 0) {
    if (f.is_constant()) {
      Eigen::VectorXd c(1);
      c(0) = std::sqrt(f(0).get_d());
      return from_squares(f, 0, basis, {c});
    }
    if (auto w = constant_level_witness(f, basis)) return std::move(*w);
  }
  if (auto w = high_degree_witness(f, d, basis)) return std::move(*w);
  if (d == f.n()) return indicator_squares(f);

  const auto face = zero_face(f, basis);
  const ReducedProblem red = reduce(f, basis, face);
  if (face.empty()) {
    // Q must vanish; any point with f(x) > 0 is a contradiction.
    std::vector<Rational> y(red.points.size());
    y[0] = -1;
    if (auto w = lift_witness(f, d, basis, red, y)) return std::move(*w);
    return Undetermined{0.0, 0, "witness lift failed on a trivial face"};
  }

  PsdOptions opt = options;
  PsdResult result;
  for (int attempt = 0; attempt < 3; ++attempt, opt.tol /= 100) {
    result = solve_psd(red.instance, opt);
    if (auto* mw = std::get_if<MomentWitness>(&result)) {
      if (auto w = lift_witness(f, d, basis, red, mw->multipliers)) return std::move(*w);
      return Undetermined{0.0, 0, "reduced witness could not be lifted"};
    }
    if (auto* und = std::get_if<Undetermined>(&result)) return *und;
    const auto& approx = std::get<ApproxFeasible>(result);
    // p_i = V (sqrt(lambda) w) from the reduced Gram matrix R = sum w w^T.
    const auto reduced_squares = factor_psd(approx.gram);
    std::vector<Eigen::VectorXd> squares;
    for (const auto& w : reduced_squares) {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
      for (std::size_t k = 0; k < face.size(); ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
          if (sgn(face[k][j]) != 0) p(static_cast<Eigen::Index>(j)) += w(static_cast<Eigen::Index>(k)) * face[k][j].get_d();
        }
      }
      squares.push_back(std::move(p));
    }
    SosDecomposition dec = from_squares(f, d, basis, std::move(squares));
    if (dec.residual <= kSosVerifyTol) return dec;
  }
  const auto& approx = std::get<ApproxFeasible>(result);
  return Undetermined{approx.residual, approx.iterations, "decomposition residual above verification tolerance"};
}

SosDegreeResult sos_degree(const PointFunction& f, const PsdOptions& options) {
  SosDegreeResult out;
  for (int d = 0; d <= f.n(); ++d) {
    auto r = sos_feasible(f, d, options);
    if (auto* dec = std::get_if<SosDecomposition>(&r)) {
      out.upper = d;
      out.decomposition = std::move(*dec);
      return out;
    }
    if (auto* w = std::get_if<SosWitness>(&r)) {
      if (out.lower == d) out.lower = d + 1;
      out.witnesses.push_back(std::move(*w));
    } else {
      out.undetermined_levels.push_back(d);
    }
  }
  throw std::logic_error("no sum-of-squares decomposition at d = n");
}

LasserreValue lasserre_value(const PointFunction& f, int d, const PsdOptions& options) {
  check_degree(f, d);
  LasserreValue out;
  const Rational alpha = f.max_value();
  out.lower = alpha;
  bool excluded_everywhere = false;
  // A witness y for c - f also rules out every c' < sum y f / sum y.
  auto probe = [&](const Rational& c) -> std::optional<bool> {
    ++out.probes;
    auto r = sos_feasible(f.complement_from(c), d, options);
    if (std::holds_alternative<SosDecomposition>(r)) return true;
    if (auto* w = std::get_if<SosWitness>(&r)) {
      Rational mass = 0, fy = 0;
      for (Point x = 0; x < f.size(); ++x) {
        mass += w->multipliers[x];
        fy += w->multipliers[x] * f(x);
      }
      if (sgn(mass) <= 0) {
        excluded_everywhere = true;
        return false;
      }
      out.lower = std::max(out.lower, Rational(fy / mass));
      return false;
    }
    return std::nullopt;
  };

  const auto at_alpha = probe(alpha);
  if (!at_alpha) throw std::runtime_error("Lasserre bracket failure: solver undetermined at c = max f");
  if (excluded_everywhere) return out;
  out.bounded = true;
  if (*at_alpha) {
    out.upper = alpha;
    out.converged = true;
    return out;
  }
  Rational step = std::max(Rational(1), alpha);
  std::optional<Rational> hi;
  for (int k = 0; k < 40 && !hi; ++k, step *= 2) {
    const Rational c = std::max(out.lower, alpha) + step;
    const auto r = probe(c);
    if (r && *r) hi = c;
  }
  if (!hi) throw std::runtime_error("Lasserre bracket failure: no feasible upper bound found");
  out.upper = *hi;

  const Rational width = rational_from_double(kLasserreWidth);
  while (out.upper - out.lower > width && out.probes < 200) {
    const Rational mid = (out.lower + out.upper) / 2;
    const auto r = probe(mid);
    if (!r) break;
    if (*r) out.upper = mid;
  }
  out.converged = out.upper - out.lower <= width;
  return out;
}

SosDegreeResult lasserre_exact_level(const PointFunction& f, const PsdOptions& options) {
  return sos_degree(f.complement_from(f.max_value()), options);
}

MarkovBound markov_bound(const UnivariatePoly& q, int n) {
  if (q.degree() < 0) throw std::invalid_argument("Markov bound needs a nonzero polynomial");
  if (n < 1) throw std::invalid_argument("Markov bound needs n >= 1");
  const UnivariatePoly dq = q.derivative();
  MarkovBound out;
  const std::size_t inner = 10'000 * static_cast<std::size_t>(q.degree());
  out.grid_points = inner + 2;
  auto visit = [&](double k) {
    out.max_value = std::max(out.max_value, std::abs(q.evaluate(k)));
    out.max_derivative = std::max(out.max_derivative, std::abs(dq.evaluate(k)));
  };
  visit(0.0);
  visit(static_cast<double>(n));
  for (std::size_t i = 1; i <= inner; ++i) visit(static_cast<double>(n) * static_cast<double>(i) / static_cast<double>(inner + 1));
  out.value = out.max_value > 0.0 ? std::sqrt((n / 2.0) * out.max_derivative / out.max_value) : 0.0;
  return out;
}

bool LowerBoundReport::values_ok() const {
  return std::abs(big_q_0 - 2.0) <= tol && std::abs(big_q_1) <= tol && std::abs(big_q_2) <= tol;
}

bool LowerBoundReport::bounds_ok() const {
  return std::all_of(pointwise_ok.begin(), pointwise_ok.end(), [](bool b) { return b; });
}

LowerBoundReport replay_lower_bound(const SosDecomposition& dec, double tol) {
  const int n = dec.n;
  if (n < 3) throw std::invalid_argument("lower-bound replay needs n >= 3");
  const PointFunction f = library::weight_quadratic(n, 1, 2);
  if (dec.target != f.values()) throw std::invalid_argument("decomposition is not for (|x|-1)(|x|-2)");
  if (dec.squares.empty()) throw std::invalid_argument("missing decomposition");

  LowerBoundReport rep;
  rep.n = n;
  rep.tol = tol;
  rep.sos_degree_upper = dec.degree;
  for (std::size_t i = 0; i < dec.squares.size(); ++i) {
    UnivariatePoly qi = symmetrize(dec.square_poly(i));
    rep.big_q = rep.big_q + qi * qi;
    rep.symmetrized.push_back(std::move(qi));
  }
  rep.big_q_0 = rep.big_q.evaluate(Rational(0)).get_d();
  rep.big_q_1 = rep.big_q.evaluate(Rational(1)).get_d();
  rep.big_q_2 = rep.big_q.evaluate(Rational(2)).get_d();

  // (k-1)^2 (k-2)^2 = (k^2 - 3k + 2)^2
  const UnivariatePoly base({Rational(2), Rational(-3), Rational(1)});
  const auto division = rep.big_q.divide(base * base);
  rep.quotient = division.quotient;
  for (const auto& c : division.remainder.coeffs()) rep.remainder_norm = std::max(rep.remainder_norm, std::abs(c.get_d()));
  if (rep.remainder_norm > tol) {
    throw std::runtime_error("division remainder " + std::to_string(rep.remainder_norm) + " exceeds tolerance");
  }

  auto check = [&](int k) {
    const double qk = rep.quotient.evaluate(Rational(k)).get_d();
    const double bound = 1.0 / ((k - 1.0) * (k - 2.0));
    rep.pointwise.emplace_back(k, qk);
    rep.pointwise_ok.push_back(qk <= bound + tol);
  };
  check(0);
  for (int k = 3; k <= n; ++k) check(k);
  rep.markov = markov_bound(rep.quotient, n);
  rep.sqrt_n_over_48 = std::sqrt(n / 48.0);
  return rep;
}

}  // namespace qexp
