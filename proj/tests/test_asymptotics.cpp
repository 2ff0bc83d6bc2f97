#include <doctest.h>

#include <nlohmann/json.hpp>

#include "permclass/asymptotics.hpp"

using namespace permclass;
using boost::multiprecision::abs;

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const Rational kQuarter(1, 4);

// [z^n] (1-4z)^alpha for alpha = -1/2 or 1/2, exactly.
Integer exact_quarter_power(const Rational& alpha, unsigned long n) {
  if (alpha == Rational(-1, 2)) return binomial(2 * n, n);
  return -2 * binomial(2 * n - 2, n - 1) / n;
}

Real relative_error(const Rational& alpha, unsigned long n, unsigned order) {
  auto est = fo_predict({{{Rational(1)}, alpha}}, kQuarter, n, order);
  return abs(est.predicted / to_real(exact_quarter_power(alpha, n)) - 1);
}

Real ratio_at(std::string_view num, std::string_view den, std::size_t n) { return ratio_limit(num, den, n); }

}  // namespace

TEST_CASE("conversions") {
  CHECK(to_real(Rational(1, 4)) == Real("0.25"));
  CHECK(abs(to_real(Surd{Rational(1), Rational(2), 5}) - (1 + 2 * boost::multiprecision::sqrt(Real(5)))) <
        Real("1e-45"));
  CHECK(format_real(Real("0.125"), 5) == "0.125");
}

TEST_CASE("Gamma at integers and half-integers") {
  const Real root_pi = boost::math::constants::root_pi<Real>();
  CHECK(abs(gamma_special(Rational(1, 2)).to_real() - root_pi) < Real("1e-45"));
  CHECK(gamma_special(Rational(3, 2)).rational == Rational(1, 2));
  CHECK(gamma_special(Rational(-1, 2)).rational == -2);
  CHECK(gamma_special(Rational(-3, 2)).rational == Rational(4, 3));
  CHECK(gamma_special(Rational(-1, 2)).times_sqrt_pi);
  CHECK(gamma_special(Rational(5)).rational == 24);
  CHECK_FALSE(gamma_special(Rational(5)).times_sqrt_pi);
  CHECK(gamma_special(Rational(1)).rational == 1);
  CHECK_THROWS_AS(gamma_special(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(gamma_special(Rational(-2)), std::domain_error);
  CHECK_THROWS_AS(gamma_special(Rational(1, 3)), std::domain_error);
  // Against a general Gamma in double precision.
  for (int twice = -9; twice <= 11; twice += 2) {
    Rational x(twice, 2);
    CHECK(gamma_special(x).to_real().convert_to<double>() == doctest::Approx(std::tgamma(twice / 2.0)));
  }
}

TEST_CASE("correction coefficients") {
  CHECK(correction_e_k(Rational(-1, 2), 1) == Rational(-1, 8));
  CHECK(correction_e_k(Rational(3, 7), 0) == 1);
  // alpha = -1 puts a zero factor in every product.
  for (unsigned k = 1; k <= 3; ++k) CHECK(correction_e_k(Rational(-1), k) == 0);
  CHECK_THROWS_AS(correction_e_k(Rational(1, 2), 4), std::invalid_argument);
  // Classical expansion of [z^n](1-z)^alpha:
  //   e_1 = alpha(alpha+1)/2, e_2 = alpha(alpha+1)(alpha+2)(3alpha+1)/24.
  for (Rational a : {Rational(-1, 2), Rational(1, 2), Rational(-3, 2), Rational(3, 2), Rational(1, 3)}) {
    CHECK(correction_e_k(a, 1) == a * (a + 1) / 2);
    CHECK(correction_e_k(a, 2) == a * (a + 1) * (a + 2) * (3 * a + 1) / 24);
  }
}

TEST_CASE("central binomial at n = 100, K = 1") {
  CHECK(relative_error(Rational(-1, 2), 100, 1) < Real("1e-3"));
}

TEST_CASE("e_1(1/2) gives second-order accuracy at n = 10000") {
  const Real err = relative_error(Rational(1, 2), 10000, 1);
  CHECK(err < Real("1e-6"));
  CHECK(relative_error(Rational(1, 2), 10000, 0) > Real("1e-5"));
}

TEST_CASE("more correction terms help on the central-binomial benchmark") {
  for (unsigned long n : {100ul, 1000ul, 10000ul}) {
    Real prev = relative_error(Rational(-1, 2), n, 0);
    for (unsigned k = 1; k <= 3; ++k) {
      Real cur = relative_error(Rational(-1, 2), n, k);
      CHECK_MESSAGE(cur < prev, "n = " << n << " K = " << k);
      prev = cur;
    }
  }
}

TEST_CASE("relative error decays like n^-(K+1)") {
  for (Rational alpha : {Rational(-1, 2), Rational(1, 2)}) {
    for (unsigned k = 0; k <= 2; ++k) {
      const Real e1 = relative_error(alpha, 200, k), e2 = relative_error(alpha, 2000, k);
      const double decade = (e1 / e2).convert_to<double>();
      const double expected = std::pow(10.0, k + 1);
      CHECK_MESSAGE(decade > expected / 1.5, "alpha " << to_decimal_string(alpha) << " K " << k << ": " << decade);
      CHECK_MESSAGE(decade < expected * 1.5, "alpha " << to_decimal_string(alpha) << " K " << k << ": " << decade);
    }
  }
}

TEST_CASE("fo_predict term handling") {
  auto zero = fo_predict({{{Rational(0)}, Rational(-1, 2)}}, kQuarter, 50, 2);
  CHECK(zero.predicted == 0);
  CHECK(zero.terms_included.size() == 1);

  auto skipped = fo_predict({{{Rational(3)}, Rational(0)}, {{Rational(1)}, Rational(2)}}, kQuarter, 50, 1);
  CHECK(skipped.predicted == 0);
  CHECK(skipped.terms_included.empty());
  CHECK(skipped.warnings.size() == 2);

  CHECK_THROWS_AS(fo_predict({}, kQuarter, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fo_predict({}, kQuarter, 10, 4), std::invalid_argument);
  CHECK_THROWS_AS(fo_predict({}, Rational(0), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(fo_predict({{{Rational(1)}, Rational(-1, 3)}}, kQuarter, 10, 1), std::domain_error);
}

TEST_CASE("singular expansions predict the exact coefficients") {
  auto p1 = asymptotic_report("P1", 500, 1);
  CHECK(abs(p1.relative_error) < Real("1e-4"));
  for (auto id : {"A", "B", "H"}) {
    auto r = asymptotic_report(id, 500, 1);
    CHECK_MESSAGE(abs(r.relative_error) < Real("1e-4"), id);
  }
  // Only the leading singular term is known for J and P2, so the error is first order.
  for (auto id : {"J", "P2"}) {
    const Real e500 = abs(asymptotic_report(id, 500, 1).relative_error);
    const Real e250 = abs(asymptotic_report(id, 250, 1).relative_error);
    CHECK_MESSAGE(e500 < Real("0.01"), id);
    const double halving = (e250 / e500).convert_to<double>();
    CHECK_MESSAGE(halving > 1.5, id << " " << halving);
    CHECK_MESSAGE(halving < 2.5, id << " " << halving);
  }
  CHECK_THROWS_AS(asymptotic_report("P3", 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_report("nope", 100, 1), UnknownEntry);
}

TEST_CASE("report JSON") {
  auto j = nlohmann::json::parse(to_json(asymptotic_report("A", 30, 1)));
  CHECK(j["entry"] == "A");
  CHECK(j["n"] == 30);
  CHECK(j["exact"] == binomial(58, 29).get_str());
  CHECK(j["K"] == 1);
  CHECK(j.contains("predicted"));
  CHECK(j.contains("relative_error"));
}

TEST_CASE("growth rates at 400 terms") {
  auto rate = [](std::string_view id) { return growth_rate(integer_coefficients(evaluate(id, 400))); };
  CHECK(abs(rate("P1") - 4) < Real("0.01"));
  CHECK(abs(rate("P2") - 5) < Real("0.01"));
  CHECK(abs(rate("P3") - Real("4.17035")) < Real("0.01"));
  CHECK(abs(rate("CAT") - 4) < Real("0.01"));

  auto cat = integer_coefficients(evaluate("CAT", 400));
  const Real raw = growth_rate(cat, GrowthMethod::raw);
  const Real aitken = growth_rate(cat, GrowthMethod::aitken);
  const Real rich = growth_rate(cat, GrowthMethod::richardson);
  CHECK(abs(rich - 4) < abs(aitken - 4));
  CHECK(abs(aitken - 4) < abs(raw - 4));
}

TEST_CASE("growth rate preconditions") {
  std::vector<Integer> few(20, 1);
  CHECK_THROWS_AS(growth_rate(few), std::invalid_argument);
  std::vector<Integer> geometric;
  for (int i = 0; i < 30; ++i) geometric.push_back(Integer(3) * (i == 0 ? 1 : geometric.back()));
  CHECK(growth_rate(geometric, GrowthMethod::raw) == 3);
  CHECK(growth_rate(geometric, GrowthMethod::richardson) == 3);
  CHECK(growth_rate(geometric, GrowthMethod::aitken) == 3);
  geometric.back() = 0;
  CHECK_THROWS_AS(growth_rate(geometric), std::invalid_argument);
  CHECK(parse_growth_method("aitken") == GrowthMethod::aitken);
  CHECK_THROWS_AS(parse_growth_method("magic"), std::invalid_argument);
  CHECK_THROWS_AS(integer_coefficients(PowerSeries::constant(Rational(1, 2), 3)), SeriesError);
}

TEST_CASE("dominant roots") {
  const auto& p3 = catalog_entry("P3").singularity_polynomial;
  const Real r = dominant_root(p3);
  CHECK(format_real(r, 6) == "0.239788");
  const Real golden = (3 - boost::multiprecision::sqrt(Real(5))) / 2;
  CHECK(abs(dominant_root({1, -3, 1}) - golden) < Real("1e-12"));
  CHECK(dominant_root({1, -4}) == Real("0.25"));
  CHECK_THROWS_AS(dominant_root({1, 1}), std::invalid_argument);

  const Real growth = growth_rate(integer_coefficients(evaluate("P3", 400)));
  CHECK(abs(r * growth - 1) < Real("1e-3"));
}

TEST_CASE("coefficient ratios at n = 500") {
  CHECK(abs(ratio_at("B", "P1", 500) - Real(5) / 8) < Real("0.02"));
  CHECK(abs(ratio_at("A", "P1", 500) - Real(25) / 64) < Real("0.02"));
  CHECK(abs(ratio_at("H", "P1", 500) - (1 - Real(45) / (64 * 500 - 60))) < Real("1e-3"));
  CHECK(abs(ratio_at("J", "P2", 500) - Real(99) / 119) < Real("0.02"));
  CHECK_THROWS_AS(ratio_limit("A", "J", 50), std::invalid_argument);
  CHECK_THROWS_AS(ratio_limit("P1", "I", 3), std::domain_error);
}
