#pragma once

// Exact rational scalars and small dense rational matrices.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qexp {

using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (q != 0). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text, or "num" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

/// Best rational approximation with denominator at most `max_denominator`,
/// computed from the continued-fraction expansion of `value`.
Rational rationalize(double value, std::int64_t max_denominator);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  std::vector<double> to_doubles() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact rank by Gaussian elimination over the rationals.
std::size_t exact_rank(RationalMatrix m);

}  // namespace qexp
