#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace permclass {

using Integer = mpz_class;
using Rational = mpq_class;

class SeriesError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Truncated power series c_0 + c_1 z + ... + c_N z^N with exact rational
// coefficients. Binary operations require equal truncation orders; call
// truncate() first to combine series of different orders.
class PowerSeries {
public:
  explicit PowerSeries(std::size_t order = 0);
  // Missing high coefficients are zero; extra ones are an error.
  PowerSeries(std::size_t order, std::vector<Rational> coefficients);

  static PowerSeries constant(const Rational& c, std::size_t order);
  static PowerSeries z(std::size_t order);
  // Low-to-high coefficients; degree may exceed order (the tail is dropped).
  static PowerSeries polynomial(const std::vector<Rational>& coefficients, std::size_t order);

  std::size_t order() const { return coefficients_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coefficients_[i]; }
  Rational& operator[](std::size_t i) { return coefficients_[i]; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  PowerSeries truncate(std::size_t new_order) const;
  // Index of the first nonzero coefficient; nullopt for the zero series.
  std::optional<std::size_t> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  bool has_integer_coefficients() const;

  // Multiply by z^k, keeping the order.
  PowerSeries shift_up(std::size_t k) const;
  // Divide by z^k. The low k coefficients must vanish; the order drops by k.
  PowerSeries shift_down(std::size_t k) const;

  PowerSeries& operator+=(const PowerSeries& other);
  PowerSeries& operator-=(const PowerSeries& other);
  PowerSeries& operator*=(const Rational& scalar);

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator-(PowerSeries a) { return a *= Rational(-1); }
  friend PowerSeries operator*(PowerSeries a, const Rational& s) { return a *= s; }
  friend PowerSeries operator*(const Rational& s, PowerSeries a) { return a *= s; }
  friend PowerSeries operator+(PowerSeries a, const Rational& c) {
    a[0] += c;
    return a;
  }
  friend PowerSeries operator+(const Rational& c, PowerSeries a) { return std::move(a) + c; }
  friend PowerSeries operator-(PowerSeries a, const Rational& c) {
    a[0] -= c;
    return a;
  }
  friend PowerSeries operator-(const Rational& c, PowerSeries a) { return -std::move(a) + c; }

  bool operator==(const PowerSeries& other) const = default;

private:
  void require_same_order(const PowerSeries& other, const char* op) const;
  std::vector<Rational> coefficients_;
};

// Cauchy product truncated at the common order.
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

// a / b. When b has valuation v > 0, a must be divisible by z^v and the result
// has order N - v (only those coefficients are determined).
PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

PowerSeries inverse(const PowerSeries& b);
PowerSeries power(const PowerSeries& a, unsigned exponent);

// Branch with positive constant term; the constant term must be the square
// of a nonzero rational.
PowerSeries sqrt(const PowerSeries& a);

// t = (1 - sqrt(1 - 4z)) / (2z), the root of 1 - t + z t^2 = 0.
PowerSeries catalan_series(std::size_t order);

// Exact rational square root, if one exists.
std::optional<Rational> rational_sqrt(const Rational& q);

// Decimal text of a coefficient: "123" or "-7/2".
std::string to_decimal_string(const Rational& q);

// Rectangular truncation c[k][l], k <= K (powers of nu), l <= L (powers of t).
class BivariateSeries {
public:
  BivariateSeries(std::size_t max_k, std::size_t max_l);

  std::size_t max_k() const { return max_k_; }
  std::size_t max_l() const { return max_l_; }
  const Rational& at(std::size_t k, std::size_t l) const { return c_[k * (max_l_ + 1) + l]; }
  Rational& at(std::size_t k, std::size_t l) { return c_[k * (max_l_ + 1) + l]; }

  BivariateSeries& operator+=(const BivariateSeries& other);
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
  bool operator==(const BivariateSeries& other) const = default;

  // exp of a series whose t^0 column vanishes.
  BivariateSeries exp() const;

private:
  std::size_t max_k_;
  std::size_t max_l_;
  std::vector<Rational> c_;
};

// [nu^k t^l] e^t (1 + nu t)^(-1 - 1/nu), for the 1/n corrections of the
// singularity transfer.
BivariateSeries bivariate_correction_kernel(std::size_t max_k, std::size_t max_l);

}  // namespace permclass
