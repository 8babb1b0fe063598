#pragma once

// Functions on the Boolean cube {0,1}^n and their polynomial representations.
//
// Cube points are encoded as integers 0..2^n-1 with bit i holding x_{i+1}.
// Subsets S of [n] use the same bitmask encoding, so the monomial
// m_S(x) = prod_{i in S} x_i equals 1 exactly when (x & S) == S.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qexp/rational.hpp"

namespace qexp {

using Point = std::uint32_t;
using Subset = std::uint32_t;

/// Largest n accepted for exhaustive cube enumeration.
inline constexpr int kMaxVariables = 12;

inline int weight(std::uint32_t bits) { return std::popcount(bits); }
inline bool monomial_value(Subset s, Point x) { return (x & s) == s; }
inline std::size_t cube_size(int n) { return std::size_t{1} << n; }

/// "x1x2...xn" text form of a point, x1 first.
std::string point_to_bits(Point x, int n);
/// Inverse of point_to_bits; throws std::invalid_argument on bad input.
Point bits_to_point(const std::string& bits, int n);

/// f : {0,1}^n -> Q_{>=0}, stored as the full truth table.
class PointFunction {
 public:
  PointFunction(int n, std::vector<Rational> values);

  static PointFunction constant(int n, const Rational& c);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator()(Point x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  bool is_boolean() const;
  bool is_constant() const;
  Rational max_value() const;
  std::vector<Point> zeros() const;
  std::vector<double> to_doubles() const;

  /// g(x) = c - f(x); throws if c < max f.
  PointFunction complement_from(const Rational& c) const;

  friend bool operator==(const PointFunction&, const PointFunction&) = default;

 private:
  int n_;
  std::vector<Rational> values_;
};

/// Multilinear polynomial in the monomial basis, dense over all 2^n subsets.
class MultilinearPoly {
 public:
  explicit MultilinearPoly(int n);
  MultilinearPoly(int n, std::vector<Rational> coeffs);

  int n() const { return n_; }
  const Rational& coeff(Subset s) const { return coeffs_[s]; }
  Rational& coeff(Subset s) { return coeffs_[s]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Max |S| with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  Rational evaluate(Point x) const;

  MultilinearPoly operator+(const MultilinearPoly& other) const;
  MultilinearPoly operator*(const Rational& scale) const;

  friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

 private:
  int n_;
  std::vector<Rational> coeffs_;
};

/// Weight profile g(0..n) of a symmetric function.
struct SymmetricProfile {
  int n = 0;
  std::vector<Rational> profile;
};

/// Single-variable polynomial with exact rational coefficients, lowest first.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Rational> coeffs);

  /// Highest index with a nonzero coefficient; -1 for zero.
  int degree() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  Rational evaluate(const Rational& k) const;
  double evaluate(double k) const;
  UnivariatePoly derivative() const;

  UnivariatePoly operator+(const UnivariatePoly& other) const;
  UnivariatePoly operator-(const UnivariatePoly& other) const;
  UnivariatePoly operator*(const UnivariatePoly& other) const;
  UnivariatePoly operator*(const Rational& scale) const;

  /// Polynomial long division; divisor must be nonzero.
  struct Division;
  Division divide(const UnivariatePoly& divisor) const;

  /// Lagrange interpolation through (k, values[k]) for k = 0..values.size()-1.
  static UnivariatePoly interpolate_on_integers(std::span<const Rational> values);

  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct UnivariatePoly::Division {
  UnivariatePoly quotient;
  UnivariatePoly remainder;
};

// --- transforms ---

/// Unique multilinear polynomial agreeing with f on the cube (Moebius inversion).
MultilinearPoly interpolate_multilinear(const PointFunction& f);
MultilinearPoly interpolate_multilinear(int n, std::span<const Rational> values);

/// Fourier coefficients p^(s) in the basis (-1)^{x.s}, indexed by s.
std::vector<Rational> to_fourier(const MultilinearPoly& p);
MultilinearPoly from_fourier(int n, std::span<const Rational> fourier);

/// Exact weight-class averages of p, returned as the interpolating polynomial.
UnivariatePoly symmetrize(const MultilinearPoly& p);
/// The weight averages q(0..n) themselves.
std::vector<Rational> weight_averages(const MultilinearPoly& p);

PointFunction from_symmetric(const SymmetricProfile& profile);
/// Weight profile of f; throws std::invalid_argument if f is not symmetric.
SymmetricProfile to_symmetric(const PointFunction& f);

/// Exact deterministic decision-tree depth D(f) for Boolean f.
/// Throws std::invalid_argument for non-Boolean f or n > max_n.
int decision_tree_depth(const PointFunction& f, int max_n = 4);

/// Apply x_i -> x_{perm[i]} to the input (f'(x) = f(perm applied to x)).
PointFunction permute_variables(const PointFunction& f, std::span<const int> perm);
/// f'(x) = f(x xor mask).
PointFunction flip_variables(const PointFunction& f, Point mask);

// --- named functions used throughout the toolkit ---
namespace library {

/// (|x| - a)(|x| - b)
PointFunction weight_quadratic(int n, int a, int b);
/// (|x| - 1)^2
PointFunction shifted_weight_square(int n);
PointFunction and_function(int n);
PointFunction or_function(int n);
/// Cut function sum over undirected edges {i,j} of x_i(1-x_j) + x_j(1-x_i).
/// Edge endpoints are 0-based variable indices.
PointFunction max_cut(int n, std::span<const std::pair<int, int>> edges);
PointFunction triangle_max_cut();
PointFunction four_cycle_max_cut();
/// Boolean function whose truth table is the bits of `table`.
PointFunction boolean_from_table(int n, std::uint64_t table);

}  // namespace library

}  // namespace qexp
