#include "qexp/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qexp {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? "1" : trim(text.substr(slash + 1));
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  std::string num_s(num[0] == '+' ? num.substr(1) : num);
  mpz_class n(num_s, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in rational: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double has no rational value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

Rational rationalize(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be positive");
  const Rational x = rational_from_double(value);
  const mpz_class cap(static_cast<long>(max_denominator));
  // Convergent recurrence h_i = a_i h_{i-1} + h_{i-2}, same for k.
  mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rational rem = x;
  for (int iter = 0; iter < 256; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    const mpz_class hn = a * h1 + h2;
    const mpz_class kn = a * k1 + k2;
    if (kn > cap) {
      const mpz_class t = (cap - k2) / k1;
      Rational conv(h1, k1);
      conv.canonicalize();
      if (t > 0) {
        Rational semi(t * h1 + h2, t * k1 + k2);
        semi.canonicalize();
        if (abs(semi - x) < abs(conv - x)) return semi;
      }
      return conv;
    }
    h2 = h1;
    h1 = hn;
    k2 = k1;
    k1 = kn;
    const Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  Rational out(h1, k1);
  out.canonicalize();
  return out;
}

RationalMatrix RationalMatrix::identity(std::size_t size) {
  RationalMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

std::vector<double> RationalMatrix::to_doubles() const {
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].get_d();
  return out;
}

std::size_t exact_rank(RationalMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (sgn(m(r, c)) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
    }
    const Rational inv = 1 / m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const Rational factor = m(r, c) * inv;
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(rank, j)) != 0) m(r, j) -= factor * m(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace qexp
