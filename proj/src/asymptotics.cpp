#include "permclass/asymptotics.hpp"

#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <nlohmann/json.hpp>

namespace permclass {

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_half_integer(const Rational& q) { return q.get_den() == 2; }

bool is_zero(const Surd& s) { return s.rational == 0 && (s.radical == 0 || s.radicand == 0); }

const BivariateSeries& kernel_table() {
  static const BivariateSeries table = bivariate_correction_kernel(kMaxCorrectionOrder, 2 * kMaxCorrectionOrder);
  return table;
}

}  // namespace

Real to_real(const Integer& x) { return Real(x.get_str()); }

Real to_real(const Rational& x) { return to_real(Integer(x.get_num())) / to_real(Integer(x.get_den())); }

Real to_real(const Surd& x) {
  Real v = to_real(x.rational);
  if (x.radicand != 0 && x.radical != 0) v += to_real(x.radical) * boost::multiprecision::sqrt(Real(x.radicand));
  return v;
}

std::string format_real(const Real& x, int digits) { return x.str(digits); }

Real GammaValue::to_real() const {
  Real v = permclass::to_real(rational);
  if (times_sqrt_pi) v *= boost::math::constants::root_pi<Real>();
  return v;
}

GammaValue gamma_special(const Rational& x) {
  if (is_integer(x)) {
    if (x <= 0) throw std::domain_error("Gamma has a pole at " + to_decimal_string(x));
    Integer f = 1;
    for (Integer i = 2; i < x; ++i) f *= i;
    return {Rational(f), false};
  }
  if (!is_half_integer(x))
    throw std::domain_error("Gamma is only provided at integers and half-integers, not " + to_decimal_string(x));
  // Gamma(1/2) = sqrt(pi); step with Gamma(y + 1) = y Gamma(y).
  Rational g = 1;
  Rational y(1, 2);
  while (y < x) {
    g *= y;
    y += 1;
  }
  while (y > x) {
    y -= 1;
    g /= y;
  }
  return {g, true};
}

Rational correction_e_k(const Rational& alpha, unsigned k) {
  if (k == 0) return 1;
  if (k > kMaxCorrectionOrder)
    throw std::invalid_argument("correction order " + std::to_string(k) + " exceeds " +
                                std::to_string(kMaxCorrectionOrder));
  const auto& table = kernel_table();
  Rational e = 0;
  Rational rising = 1;  // prod_{j=1}^{l} (alpha + j)
  for (unsigned l = 1; l <= 2 * k; ++l) {
    rising *= alpha + l;
    if (l >= k) e += table.at(k, l) * rising;
  }
  return e;
}

AsymptoticEstimate fo_predict(const std::vector<PuiseuxTerm>& terms, const Rational& rho, std::size_t n,
                              unsigned order) {
  if (n == 0) throw std::invalid_argument("fo_predict needs n >= 1");
  if (order > kMaxCorrectionOrder)
    throw std::invalid_argument("correction order is capped at " + std::to_string(kMaxCorrectionOrder));
  if (rho <= 0) throw std::invalid_argument("singularity must be positive");

  AsymptoticEstimate est;
  est.n = n;
  est.order = order;
  const Real nr(n);
  const Real growth = boost::multiprecision::pow(to_real(Rational(1 / rho)), static_cast<long>(n));
  for (const auto& term : terms) {
    if (is_integer(term.exponent) && term.exponent >= 0) {
      est.warnings.push_back("skipped term with nonnegative integer exponent " + to_decimal_string(term.exponent));
      continue;
    }
    est.terms_included.push_back(term);
    if (is_zero(term.coefficient)) continue;
    const Rational alpha = term.exponent;
    Real corr = 1;
    Real npow = 1;
    for (unsigned k = 1; k <= order; ++k) {
      npow *= nr;
      corr += to_real(correction_e_k(alpha, k)) / npow;
    }
    const Real scale = boost::multiprecision::pow(nr, to_real(Rational(-alpha - 1)));
    est.predicted += to_real(term.coefficient) / gamma_special(-alpha).to_real() * growth * scale * corr;
  }
  return est;
}

GrowthMethod parse_growth_method(std::string_view name) {
  if (name == "raw") return GrowthMethod::raw;
  if (name == "aitken") return GrowthMethod::aitken;
  if (name == "richardson") return GrowthMethod::richardson;
  throw std::invalid_argument("unknown growth method '" + std::string(name) +
                              "' (expected raw, aitken or richardson)");
}

std::string_view to_string(GrowthMethod m) {
  switch (m) {
    case GrowthMethod::raw: return "raw";
    case GrowthMethod::aitken: return "aitken";
    case GrowthMethod::richardson: return "richardson";
  }
  return "?";
}

Real growth_rate(const std::vector<Integer>& coeffs, GrowthMethod method) {
  if (coeffs.size() < kMinGrowthTerms + 1)
    throw std::invalid_argument("growth_rate needs at least " + std::to_string(kMinGrowthTerms + 1) +
                                " coefficients");
  const std::size_t last = coeffs.size() - 1;
  for (std::size_t i = 0; i < kMinGrowthTerms; ++i)
    if (coeffs[last - i] == 0)
      throw std::invalid_argument("growth_rate needs " + std::to_string(kMinGrowthTerms) +
                                  " nonzero trailing coefficients");

  auto ratio = [&](std::size_t i) { return to_real(Rational(coeffs[i], coeffs[i - 1])); };
  const Real r2 = ratio(last);
  switch (method) {
    case GrowthMethod::raw: return r2;
    case GrowthMethod::aitken: {
      const Real r1 = ratio(last - 1), r0 = ratio(last - 2);
      const Real denom = r2 - 2 * r1 + r0;
      if (denom == 0) return r2;
      return r2 - (r2 - r1) * (r2 - r1) / denom;
    }
    case GrowthMethod::richardson: {
      const Real r1 = ratio(last - 1);
      return Real(last) * r2 - Real(last - 1) * r1;
    }
  }
  return r2;
}

std::vector<Integer> integer_coefficients(const PowerSeries& s) {
  std::vector<Integer> out;
  out.reserve(s.order() + 1);
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (s[i].get_den() != 1) throw SeriesError("coefficient of z^" + std::to_string(i) + " is not an integer");
    out.push_back(s[i].get_num());
  }
  return out;
}

Real dominant_root(const std::vector<Rational>& poly) {
  auto eval_exact = [&](const Rational& x) {
    Rational v = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
    return v;
  };
  auto eval = [&](const Real& x) {
    Real v = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + to_real(*it);
    return v;
  };
  auto sign = [](const auto& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };

  constexpr int kGrid = 1000;
  int prev = sign(eval_exact(Rational(0)));
  for (int i = 1; i < kGrid; ++i) {
    const Rational x(i, kGrid);
    const int cur = sign(eval_exact(x));
    if (cur == 0) return to_real(x);
    if (prev != 0 && cur != prev) {
      Real lo = to_real(Rational(i - 1, kGrid)), hi = to_real(x);
      const Real tol = Real("1e-13") * lo;
      while (hi - lo > tol) {
        const Real mid = (lo + hi) / 2;
        const int s = sign(eval(mid));
        if (s == 0) return mid;
        (s == prev ? lo : hi) = mid;
      }
      return (lo + hi) / 2;
    }
    prev = cur;
  }
  throw std::invalid_argument("dominant_root: no sign change on (0, 1)");
}

Real ratio_limit(std::string_view num_id, std::string_view den_id, std::size_t n) {
  const auto& num_entry = catalog_entry(num_id);
  const auto& den_entry = catalog_entry(den_id);
  if (num_entry.puiseux && den_entry.puiseux && num_entry.puiseux->singularity != den_entry.puiseux->singularity)
    throw std::invalid_argument("entries " + std::string(num_id) + " and " + std::string(den_id) +
                                " have different dominant singularities");
  const Rational num = evaluate(num_id, n)[n];
  const Rational den = evaluate(den_id, n)[n];
  if (den == 0) throw std::domain_error("denominator coefficient is zero at n = " + std::to_string(n));
  return to_real(Rational(num / den));
}

AsymptoticReport asymptotic_report(std::string_view id, std::size_t n, unsigned order) {
  const auto& entry = catalog_entry(id);
  if (!entry.puiseux) throw std::invalid_argument("entry " + std::string(id) + " has no singular expansion");
  AsymptoticReport r;
  r.entry = entry.id;
  r.n = n;
  const Rational exact = evaluate(id, n)[n];
  r.exact = exact.get_num();
  r.estimate = fo_predict(entry.puiseux->terms, entry.puiseux->singularity, n, order);
  if (r.exact != 0) r.relative_error = r.estimate.predicted / to_real(r.exact) - 1;
  return r;
}

std::string to_json(const AsymptoticReport& report) {
  nlohmann::ordered_json j;
  j["entry"] = report.entry;
  j["n"] = report.n;
  j["exact"] = report.exact.get_str();
  j["predicted"] = format_real(report.estimate.predicted, 20);
  j["relative_error"] = format_real(report.relative_error, 6);
  j["K"] = report.estimate.order;
  if (!report.estimate.warnings.empty()) j["warnings"] = report.estimate.warnings;
  return j.dump(2);
}

}  // namespace permclass
