#include "permclass/series.hpp"

#include <algorithm>
#include <utility>

namespace permclass {

namespace {

// a = A / d with A integral and d the lcm of the coefficient denominators.
struct IntegerForm {
  std::vector<Integer> numerators;
  Integer denominator;
};

IntegerForm integer_form(const std::vector<Rational>& coeffs) {
  IntegerForm f{{}, 1};
  for (const auto& c : coeffs) mpz_lcm(f.denominator.get_mpz_t(), f.denominator.get_mpz_t(), c.get_den_mpz_t());
  f.numerators.reserve(coeffs.size());
  for (const auto& c : coeffs) f.numerators.push_back(c.get_num() * (f.denominator / c.get_den()));
  return f;
}

// Truncated integer convolution.
std::vector<Integer> convolve(const std::vector<Integer>& a, const std::vector<Integer>& b, std::size_t len) {
  std::vector<Integer> out(len);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

}  // namespace

PowerSeries::PowerSeries(std::size_t order) : coefficients_(order + 1) {}

PowerSeries::PowerSeries(std::size_t order, std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() > order + 1) throw SeriesError("more coefficients than the truncation order allows");
  coefficients_.resize(order + 1);
}

PowerSeries PowerSeries::constant(const Rational& c, std::size_t order) {
  PowerSeries s(order);
  s[0] = c;
  return s;
}

PowerSeries PowerSeries::z(std::size_t order) {
  PowerSeries s(order);
  if (order >= 1) s[1] = 1;
  return s;
}

PowerSeries PowerSeries::polynomial(const std::vector<Rational>& coefficients, std::size_t order) {
  PowerSeries s(order);
  for (std::size_t i = 0; i < coefficients.size() && i <= order; ++i) s[i] = coefficients[i];
  return s;
}

PowerSeries PowerSeries::truncate(std::size_t new_order) const {
  if (new_order > order()) throw SeriesError("cannot truncate to a higher order");
  return PowerSeries(new_order, {coefficients_.begin(), coefficients_.begin() + new_order + 1});
}

std::optional<std::size_t> PowerSeries::valuation() const {
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    if (coefficients_[i] != 0) return i;
  return std::nullopt;
}

bool PowerSeries::has_integer_coefficients() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

PowerSeries PowerSeries::shift_up(std::size_t k) const {
  PowerSeries s(order());
  for (std::size_t i = 0; i + k <= order(); ++i) s[i + k] = coefficients_[i];
  return s;
}

PowerSeries PowerSeries::shift_down(std::size_t k) const {
  if (k > order()) throw SeriesError("shift_down past the truncation order");
  for (std::size_t i = 0; i < k; ++i)
    if (coefficients_[i] != 0) throw SeriesError("series is not divisible by z^" + std::to_string(k));
  return PowerSeries(order() - k, {coefficients_.begin() + k, coefficients_.end()});
}

void PowerSeries::require_same_order(const PowerSeries& other, const char* op) const {
  if (order() != other.order())
    throw SeriesError(std::string(op) + ": truncation orders differ (" + std::to_string(order()) + " vs " +
                      std::to_string(other.order()) + "); truncate explicitly first");
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
  require_same_order(other, "add");
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& other) {
  require_same_order(other, "sub");
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& scalar) {
  for (auto& c : coefficients_) c *= scalar;
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw SeriesError("mul: truncation orders differ (" + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()) + "); truncate explicitly first");
  const auto len = a.order() + 1;
  auto fa = integer_form(a.coefficients());
  auto fb = integer_form(b.coefficients());
  auto prod = convolve(fa.numerators, fb.numerators, len);
  Integer den = fa.denominator * fb.denominator;
  PowerSeries out(a.order());
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = Rational(prod[i], den);
    out[i].canonicalize();
  }
  return out;
}

PowerSeries inverse(const PowerSeries& b) {
  if (b[0] == 0) throw SeriesError("inverse: constant term is zero");
  const auto len = b.order() + 1;
  auto fb = integer_form(b.coefficients());
  const auto& B = fb.numerators;
  const Integer& c = B[0];
  // 1/B = sum U_n z^n / c^(n+1) with U_0 = 1 and U_n = -sum_{k>=1} B_k U_{n-k} c^(k-1).
  std::vector<Integer> u(len);
  std::vector<Integer> cpow(len + 1);
  cpow[0] = 1;
  for (std::size_t i = 1; i <= len; ++i) cpow[i] = cpow[i - 1] * c;
  u[0] = 1;
  Integer term;
  for (std::size_t n = 1; n < len; ++n) {
    Integer acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (B[k] == 0) continue;
      term = B[k] * u[n - k];
      if (k > 1) term *= cpow[k - 1];
      acc += term;
    }
    u[n] = -acc;
  }
  PowerSeries out(b.order());
  for (std::size_t n = 0; n < len; ++n) {
    out[n] = Rational(u[n] * fb.denominator, cpow[n + 1]);
    out[n].canonicalize();
  }
  return out;
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw SeriesError("div: truncation orders differ; truncate explicitly first");
  auto vb = b.valuation();
  if (!vb) throw SeriesError("div: division by the zero series");
  if (*vb == 0) return a * inverse(b);
  auto va = a.valuation();
  if (va && *va < *vb)
    throw SeriesError("div: divisor valuation " + std::to_string(*vb) + " exceeds dividend valuation " +
                      std::to_string(*va));
  if (*vb > a.order()) throw SeriesError("div: divisor valuation exceeds the truncation order");
  auto num = a.shift_down(*vb);
  auto den = b.shift_down(*vb);
  return num * inverse(den);
}

PowerSeries power(const PowerSeries& a, unsigned exponent) {
  PowerSeries result = PowerSeries::constant(1, a.order());
  PowerSeries base = a;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

PowerSeries sqrt(const PowerSeries& a) {
  if (a[0] == 0) throw SeriesError("sqrt: constant term is zero");
  auto root = rational_sqrt(a[0]);
  if (!root) throw SeriesError("sqrt: constant term " + to_decimal_string(a[0]) + " is not a rational square");
  const std::size_t target = a.order();
  PowerSeries y = PowerSeries::constant(*root, 0);
  std::size_t known = 1;  // y is correct modulo z^known
  const Rational half(1, 2);
  while (known < target + 1) {
    std::size_t next = std::min(2 * known, target + 1);
    PowerSeries yn = PowerSeries(next - 1, y.coefficients());
    PowerSeries an = a.truncate(next - 1);
    y = (yn + an / yn) * half;
    known = next;
  }
  return y;
}

PowerSeries catalan_series(std::size_t order) {
  auto one_minus_4z = PowerSeries::polynomial({1, -4}, order + 1);
  auto s = sqrt(one_minus_4z);
  return ((1 - s) * Rational(1, 2)).shift_down(1);
}

std::string to_decimal_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BivariateSeries::BivariateSeries(std::size_t max_k, std::size_t max_l)
    : max_k_(max_k), max_l_(max_l), c_((max_k + 1) * (max_l + 1)) {}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& other) {
  if (max_k_ != other.max_k_ || max_l_ != other.max_l_) throw SeriesError("bivariate add: shapes differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.max_k_ != b.max_k_ || a.max_l_ != b.max_l_) throw SeriesError("bivariate mul: shapes differ");
  BivariateSeries out(a.max_k_, a.max_l_);
  for (std::size_t k1 = 0; k1 <= a.max_k_; ++k1)
    for (std::size_t l1 = 0; l1 <= a.max_l_; ++l1) {
      const auto& x = a.at(k1, l1);
      if (x == 0) continue;
      for (std::size_t k2 = 0; k1 + k2 <= a.max_k_; ++k2)
        for (std::size_t l2 = 0; l1 + l2 <= a.max_l_; ++l2) out.at(k1 + k2, l1 + l2) += x * b.at(k2, l2);
    }
  return out;
}

BivariateSeries BivariateSeries::exp() const {
  for (std::size_t k = 0; k <= max_k_; ++k)
    if (at(k, 0) != 0) throw SeriesError("bivariate exp: t^0 column must vanish");
  // F' = E' F in t, column by column: F_l = (1/l) sum_{i=1}^{l} i E_i F_{l-i}.
  BivariateSeries f(max_k_, max_l_);
  f.at(0, 0) = 1;
  for (std::size_t l = 1; l <= max_l_; ++l) {
    for (std::size_t i = 1; i <= l; ++i) {
      for (std::size_t k1 = 0; k1 <= max_k_; ++k1) {
        const auto& e = at(k1, i);
        if (e == 0) continue;
        for (std::size_t k2 = 0; k1 + k2 <= max_k_; ++k2) f.at(k1 + k2, l) += Rational(i) * e * f.at(k2, l - i);
      }
    }
    for (std::size_t k = 0; k <= max_k_; ++k) f.at(k, l) /= Rational(l);
  }
  return f;
}

BivariateSeries bivariate_correction_kernel(std::size_t max_k, std::size_t max_l) {
  // log(e^t (1 + nu t)^(-1-1/nu)) = sum_{m>=1} (-1)^m nu^m t^m / m + sum_{m>=2} (-1)^m nu^(m-1) t^m / m;
  // the t^1 nu^0 terms cancel, so every power of nu is nonnegative.
  BivariateSeries exponent(max_k, max_l);
  for (std::size_t m = 1; m <= max_l; ++m) {
    Rational term(m % 2 == 0 ? 1 : -1, static_cast<unsigned long>(m));
    if (m <= max_k) exponent.at(m, m) += term;
    if (m >= 2 && m - 1 <= max_k) exponent.at(m - 1, m) += term;
  }
  return exponent.exp();
}

}  // namespace permclass
