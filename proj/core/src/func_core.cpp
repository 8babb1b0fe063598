#include "qexp/func_core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace qexp {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw std::invalid_argument("number of variables must be in [1, " +
                                std::to_string(kMaxVariables) + "], got " + std::to_string(n));
  }
}

// In-place subset-sum (zeta) transform: out[x] = sum_{S subset of x} in[S].
void subset_sum(std::vector<Rational>& a, int n) {
  for (int i = 0; i < n; ++i) {
    const Point bit = Point{1} << i;
    for (Point x = 0; x < a.size(); ++x) {
      if (x & bit) a[x] += a[x ^ bit];
    }
  }
}

// Inverse of subset_sum (Moebius inversion).
void subset_difference(std::vector<Rational>& a, int n) {
  for (int i = 0; i < n; ++i) {
    const Point bit = Point{1} << i;
    for (Point x = 0; x < a.size(); ++x) {
      if (x & bit) a[x] -= a[x ^ bit];
    }
  }
}

}  // namespace

std::string point_to_bits(Point x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Point bits_to_point(const std::string& bits, int n) {
  if (static_cast<int>(bits.size()) != n) {
    throw std::invalid_argument("bit string '" + bits + "' does not have length " + std::to_string(n));
  }
  Point x = 0;
  for (int i = 0; i < n; ++i) {
    const char c = bits[static_cast<std::size_t>(i)];
    if (c == '1') {
      x |= Point{1} << i;
    } else if (c != '0') {
      throw std::invalid_argument("bit string '" + bits + "' contains a non-binary character");
    }
  }
  return x;
}

// --- PointFunction ---

PointFunction::PointFunction(int n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  check_n(n);
  if (values_.size() != cube_size(n)) {
    throw std::invalid_argument("truth table must have 2^n = " + std::to_string(cube_size(n)) +
                                " entries, got " + std::to_string(values_.size()));
  }
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (sgn(values_[x]) < 0) {
      throw std::invalid_argument("function value at point " + std::to_string(x) + " is negative");
    }
  }
}

PointFunction PointFunction::constant(int n, const Rational& c) {
  check_n(n);
  return PointFunction(n, std::vector<Rational>(cube_size(n), c));
}

bool PointFunction::is_boolean() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

bool PointFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](const Rational& v) { return v == values_[0]; });
}

Rational PointFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::vector<Point> PointFunction::zeros() const {
  std::vector<Point> out;
  for (Point x = 0; x < values_.size(); ++x) {
    if (sgn(values_[x]) == 0) out.push_back(x);
  }
  return out;
}

std::vector<double> PointFunction::to_doubles() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].get_d();
  return out;
}

PointFunction PointFunction::complement_from(const Rational& c) const {
  std::vector<Rational> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = c - values_[i];
  return PointFunction(n_, std::move(out));
}

// --- MultilinearPoly ---

MultilinearPoly::MultilinearPoly(int n) : n_(n), coeffs_(cube_size(n)) { check_n(n); }

MultilinearPoly::MultilinearPoly(int n, std::vector<Rational> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  check_n(n);
  if (coeffs_.size() != cube_size(n)) throw std::invalid_argument("coefficient vector must have 2^n entries");
}

int MultilinearPoly::degree() const {
  int d = -1;
  for (Subset s = 0; s < coeffs_.size(); ++s) {
    if (sgn(coeffs_[s]) != 0) d = std::max(d, weight(s));
  }
  return d;
}

Rational MultilinearPoly::evaluate(Point x) const {
  Rational total = 0;
  // Enumerate subsets of x.
  for (Subset s = x;; s = (s - 1) & x) {
    total += coeffs_[s];
    if (s == 0) break;
  }
  return total;
}

MultilinearPoly MultilinearPoly::operator+(const MultilinearPoly& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomials over different variable counts");
  MultilinearPoly out(n_, coeffs_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) out.coeffs_[s] += other.coeffs_[s];
  return out;
}

MultilinearPoly MultilinearPoly::operator*(const Rational& scale) const {
  MultilinearPoly out(n_, coeffs_);
  for (auto& c : out.coeffs_) c *= scale;
  return out;
}

// --- UnivariatePoly ---

UnivariatePoly::UnivariatePoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UnivariatePoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

int UnivariatePoly::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

Rational UnivariatePoly::evaluate(const Rational& k) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

double UnivariatePoly::evaluate(double k) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + it->get_d();
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + other.coeff(i);
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - other.coeff(i);
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return {};
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator*(const Rational& scale) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= scale;
  return UnivariatePoly(std::move(out));
}

UnivariatePoly::Division UnivariatePoly::divide(const UnivariatePoly& divisor) const {
  if (divisor.degree() < 0) throw std::invalid_argument("division by the zero polynomial");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  const int nd = degree();
  if (nd < dd) return {UnivariatePoly{}, *this};
  std::vector<Rational> quot(static_cast<std::size_t>(nd - dd + 1));
  const Rational& lead = divisor.coeffs_.back();
  for (int i = nd - dd; i >= 0; --i) {
    const Rational q = rem[static_cast<std::size_t>(i + dd)] / lead;
    quot[static_cast<std::size_t>(i)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {UnivariatePoly(std::move(quot)), UnivariatePoly(std::move(rem))};
}

UnivariatePoly UnivariatePoly::interpolate_on_integers(std::span<const Rational> values) {
  const std::size_t m = values.size();
  UnivariatePoly result;
  for (std::size_t k = 0; k < m; ++k) {
    if (sgn(values[k]) == 0) continue;
    // Lagrange basis l_k(t) = prod_{j != k} (t - j) / (k - j)
    UnivariatePoly basis(std::vector<Rational>{1});
    Rational denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      basis = basis * UnivariatePoly(std::vector<Rational>{Rational(-static_cast<long>(j)), 1});
      denom *= Rational(static_cast<long>(k) - static_cast<long>(j));
    }
    result = result + basis * (values[k] / denom);
  }
  return result;
}

bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) { return a.coeffs_ == b.coeffs_; }

// --- transforms ---

MultilinearPoly interpolate_multilinear(int n, std::span<const Rational> values) {
  check_n(n);
  if (values.size() != cube_size(n)) throw std::invalid_argument("value vector must have 2^n entries");
  std::vector<Rational> c(values.begin(), values.end());
  subset_difference(c, n);
  return MultilinearPoly(n, std::move(c));
}

MultilinearPoly interpolate_multilinear(const PointFunction& f) {
  return interpolate_multilinear(f.n(), f.values());
}

std::vector<Rational> to_fourier(const MultilinearPoly& p) {
  // m_S = 2^{-|S|} sum_{T subset S} (-1)^{|T|} chi_T, so
  // p^(T) = (-1)^{|T|} sum_{S superset T} c_S 2^{-|S|}.
  const int n = p.n();
  std::vector<Rational> a(cube_size(n));
  for (Subset s = 0; s < a.size(); ++s) {
    a[s] = p.coeff(s);
    if (sgn(a[s]) != 0) a[s] /= Rational(mpz_class(1) << weight(s));
  }
  // superset sums
  for (int i = 0; i < n; ++i) {
    const Subset bit = Subset{1} << i;
    for (Subset s = 0; s < a.size(); ++s) {
      if (!(s & bit)) a[s] += a[s | bit];
    }
  }
  for (Subset t = 0; t < a.size(); ++t) {
    if (weight(t) % 2 == 1) a[t] = -a[t];
  }
  return a;
}

MultilinearPoly from_fourier(int n, std::span<const Rational> fourier) {
  // chi_T = prod_{i in T}(1 - 2 x_i) = sum_{S subset T} (-2)^{|S|} m_S.
  check_n(n);
  if (fourier.size() != cube_size(n)) throw std::invalid_argument("Fourier vector must have 2^n entries");
  std::vector<Rational> a(fourier.begin(), fourier.end());
  for (int i = 0; i < n; ++i) {
    const Subset bit = Subset{1} << i;
    for (Subset s = 0; s < a.size(); ++s) {
      if (!(s & bit)) a[s] += a[s | bit];
    }
  }
  for (Subset s = 0; s < a.size(); ++s) {
    if (sgn(a[s]) == 0) continue;
    mpz_class scale = mpz_class(1) << weight(s);
    if (weight(s) % 2 == 1) scale = -scale;
    a[s] *= scale;
  }
  return MultilinearPoly(n, std::move(a));
}

std::vector<Rational> weight_averages(const MultilinearPoly& p) {
  const int n = p.n();
  std::vector<Rational> values = p.coeffs();
  subset_sum(values, n);
  std::vector<Rational> sums(static_cast<std::size_t>(n + 1));
  std::vector<long> counts(static_cast<std::size_t>(n + 1), 0);
  for (Point x = 0; x < values.size(); ++x) {
    sums[static_cast<std::size_t>(weight(x))] += values[x];
    ++counts[static_cast<std::size_t>(weight(x))];
  }
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k] /= counts[k];
  return sums;
}

UnivariatePoly symmetrize(const MultilinearPoly& p) {
  const auto averages = weight_averages(p);
  return UnivariatePoly::interpolate_on_integers(averages);
}

PointFunction from_symmetric(const SymmetricProfile& profile) {
  check_n(profile.n);
  if (profile.profile.size() != static_cast<std::size_t>(profile.n + 1)) {
    throw std::invalid_argument("symmetric profile must have n+1 entries");
  }
  std::vector<Rational> values(cube_size(profile.n));
  for (Point x = 0; x < values.size(); ++x) values[x] = profile.profile[static_cast<std::size_t>(weight(x))];
  return PointFunction(profile.n, std::move(values));
}

SymmetricProfile to_symmetric(const PointFunction& f) {
  SymmetricProfile out{f.n(), std::vector<Rational>(static_cast<std::size_t>(f.n() + 1))};
  std::vector<bool> seen(out.profile.size(), false);
  for (Point x = 0; x < f.size(); ++x) {
    const auto k = static_cast<std::size_t>(weight(x));
    if (!seen[k]) {
      out.profile[k] = f(x);
      seen[k] = true;
    } else if (out.profile[k] != f(x)) {
      throw std::invalid_argument("function is not symmetric under variable permutation");
    }
  }
  return out;
}

int decision_tree_depth(const PointFunction& f, int max_n) {
  if (!f.is_boolean()) throw std::invalid_argument("decision-tree depth requires a Boolean-valued function");
  if (f.n() > max_n) {
    throw std::invalid_argument("decision-tree depth limited to n <= " + std::to_string(max_n));
  }
  const int n = f.n();
  const Point full = static_cast<Point>(cube_size(n) - 1);
  std::unordered_map<std::uint64_t, int> memo;
  // fixed: variables already queried; assignment: their values.
  auto depth = [&](auto&& self, Point fixed, Point assignment) -> int {
    const std::uint64_t key = (std::uint64_t{fixed} << 32) | assignment;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Point free = full & ~fixed;
    bool seen_zero = false, seen_one = false;
    for (Point s = free;; s = (s - 1) & free) {
      if (f(assignment | s) == 0) seen_zero = true; else seen_one = true;
      if (seen_zero && seen_one) break;
      if (s == 0) break;
    }
    int best = 0;
    if (seen_zero && seen_one) {
      best = n + 1;
      for (int i = 0; i < n; ++i) {
        const Point bit = Point{1} << i;
        if (fixed & bit) continue;
        const int d0 = self(self, fixed | bit, assignment);
        const int d1 = self(self, fixed | bit, assignment | bit);
        best = std::min(best, 1 + std::max(d0, d1));
      }
    }
    memo.emplace(key, best);
    return best;
  };
  return depth(depth, 0, 0);
}

PointFunction permute_variables(const PointFunction& f, std::span<const int> perm) {
  const int n = f.n();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<Rational> out(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    Point y = 0;
    for (int i = 0; i < n; ++i) {
      if ((x >> i) & 1U) y |= Point{1} << perm[static_cast<std::size_t>(i)];
    }
    out[x] = f(y);
  }
  return PointFunction(n, std::move(out));
}

PointFunction flip_variables(const PointFunction& f, Point mask) {
  std::vector<Rational> out(f.size());
  for (Point x = 0; x < f.size(); ++x) out[x] = f(x ^ mask);
  return PointFunction(f.n(), std::move(out));
}

namespace library {

PointFunction weight_quadratic(int n, int a, int b) {
  check_n(n);
  std::vector<Rational> v(cube_size(n));
  for (Point x = 0; x < v.size(); ++x) v[x] = Rational((weight(x) - a) * (weight(x) - b));
  return PointFunction(n, std::move(v));
}

PointFunction shifted_weight_square(int n) { return weight_quadratic(n, 1, 1); }

PointFunction and_function(int n) {
  check_n(n);
  std::vector<Rational> v(cube_size(n));
  v.back() = 1;
  return PointFunction(n, std::move(v));
}

PointFunction or_function(int n) {
  check_n(n);
  std::vector<Rational> v(cube_size(n), Rational(1));
  v.front() = 0;
  return PointFunction(n, std::move(v));
}

PointFunction max_cut(int n, std::span<const std::pair<int, int>> edges) {
  check_n(n);
  std::vector<Rational> v(cube_size(n));
  for (Point x = 0; x < v.size(); ++x) {
    long cut = 0;
    for (auto [i, j] : edges) {
      if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("bad edge in max-cut instance");
      cut += static_cast<long>(((x >> i) ^ (x >> j)) & 1U);
    }
    v[x] = cut;
  }
  return PointFunction(n, std::move(v));
}

PointFunction triangle_max_cut() {
  const std::pair<int, int> edges[] = {{0, 1}, {1, 2}, {0, 2}};
  return max_cut(3, edges);
}

PointFunction four_cycle_max_cut() {
  const std::pair<int, int> edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return max_cut(4, edges);
}

PointFunction boolean_from_table(int n, std::uint64_t table) {
  check_n(n);
  if (n > 6) throw std::invalid_argument("64-bit truth table supports n <= 6");
  std::vector<Rational> v(cube_size(n));
  for (Point x = 0; x < v.size(); ++x) v[x] = static_cast<long>((table >> x) & 1U);
  return PointFunction(n, std::move(v));
}

}  // namespace library

}  // namespace qexp
