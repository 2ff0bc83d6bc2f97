#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "permclass/catalog.hpp"
#include "permclass/series.hpp"

namespace permclass {

using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(const Integer& x);
Real to_real(const Rational& x);
Real to_real(const Surd& x);

// Shortest round-trip-ish text with the given number of significant digits.
std::string format_real(const Real& x, int digits = 20);

inline constexpr unsigned kMaxCorrectionOrder = 3;

struct AsymptoticEstimate {
  std::size_t n = 0;
  Real predicted = 0;
  unsigned order = 0;
  std::vector<PuiseuxTerm> terms_included;
  std::vector<std::string> warnings;
};

// Gamma(x) for x a half-integer or a positive integer, as rational * sqrt(pi)^{0 or 1}.
struct GammaValue {
  Rational rational;
  bool times_sqrt_pi = false;
  Real to_real() const;
};
GammaValue gamma_special(const Rational& x);

// e_k(alpha) = sum_{l=k}^{2k} lambda_{k,l} prod_{j=1}^{l} (alpha + j), with
// lambda_{k,l} read off bivariate_correction_kernel.
Rational correction_e_k(const Rational& alpha, unsigned k);

// Coefficient asymptotics of sum lambda (1 - z/rho)^alpha:
//   sum lambda / Gamma(-alpha) rho^{-n} n^{-alpha-1} (1 + sum_{k<=K} e_k(alpha) / n^k).
// Terms with alpha a nonnegative integer are skipped with a warning.
AsymptoticEstimate fo_predict(const std::vector<PuiseuxTerm>& terms, const Rational& rho, std::size_t n,
                              unsigned order);

enum class GrowthMethod { raw, aitken, richardson };
GrowthMethod parse_growth_method(std::string_view name);
std::string_view to_string(GrowthMethod m);

inline constexpr std::size_t kMinGrowthTerms = 20;

// Estimate of lim a_{n+1}/a_n from the last few ratios.
//   raw:        a_N / a_{N-1}
//   aitken:     Aitken delta-squared on the last three ratios
//   richardson: N r_N - (N-1) r_{N-1}, cancelling the 1/n term of the ratio
// Needs at least kMinGrowthTerms nonzero trailing coefficients.
Real growth_rate(const std::vector<Integer>& coeffs, GrowthMethod method = GrowthMethod::richardson);

// Throws SeriesError if a coefficient is not an integer.
std::vector<Integer> integer_coefficients(const PowerSeries& s);

// Smallest positive root on (0, 1) of a polynomial with rational coefficients
// (z^0 first): grid scan for the first sign change, then bisection to 12
// significant digits.
Real dominant_root(const std::vector<Rational>& poly);

// [z^n] num / [z^n] den from the exact catalog series.
Real ratio_limit(std::string_view num_id, std::string_view den_id, std::size_t n);

struct AsymptoticReport {
  std::string entry;
  std::size_t n = 0;
  Integer exact;
  AsymptoticEstimate estimate;
  Real relative_error = 0;  // predicted / exact - 1
};

AsymptoticReport asymptotic_report(std::string_view id, std::size_t n, unsigned order);
// {entry, n, exact, predicted, relative_error, K}
std::string to_json(const AsymptoticReport& report);

}  // namespace permclass
