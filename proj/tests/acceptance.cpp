// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permclass/asymptotics.hpp"
#include "permclass/catalog.hpp"
#include "permclass/oracle.hpp"
#include "permclass/permutation.hpp"
#include "permclass/sampler.hpp"

using namespace permclass;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

std::string fmt(const Real& x, int digits = 8) { return format_real(x, digits); }

std::string join(const std::vector<long>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// 1. Printed coefficients.
void coefficient_fidelity(Outcome& o) {
  const std::vector<std::pair<std::string, std::vector<long>>> printed = {
      {"B", {1, 1, 2, 6, 21, 78, 297, 1143, 4419, 17119, 66836}},
      {"H", {1, 1, 2, 6, 22, 86, 343, 1374, 5497, 21926, 87176}},
      {"P1", {1, 1, 2, 6, 22, 87, 352, 1428, 5768, 23156, 92416}},
      {"J", {1, 1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900}},
      {"P2", {1, 1, 2, 6, 22, 88, 365, 1540, 6568, 28269, 122752}},
      {"P3", {1, 1, 2, 6, 22, 87, 352, 1434, 5861, 24019, 98677}},
  };
  for (const auto& [id, terms] : printed) {
    auto s = evaluate(id, 10);
    std::vector<std::size_t> bad;
    for (std::size_t n = 0; n < terms.size(); ++n)
      if (s[n] != Rational(terms[n])) bad.push_back(n);
    std::string what = id + " = " + join(terms);
    for (auto n : bad) {
      what += "; z^" + std::to_string(n) + " evaluates to " + to_decimal_string(s[n]);
      if (catalog_entry(id).basis) {
        auto oracle = count_table(*catalog_entry(id).basis, catalog_entry(id).must_contain, n)[n];
        what += ", brute-force count " + std::to_string(oracle);
      }
    }
    o.require(bad.empty(), what);
  }
}

// 2. Oracle equivalence.
void oracle_equivalence(Outcome& o) {
  const std::vector<std::pair<std::string, std::size_t>> entries = {
      {"P1", 10}, {"P2", 11}, {"P3", 10}, {"A", 10}, {"B", 10}, {"H", 10}, {"J", 10}, {"I", 10}, {"K", 10}};
  for (const auto& [id, max_n] : entries) {
    const auto& e = catalog_entry(id);
    auto counts = count_table(*e.basis, e.must_contain, max_n);
    auto series = evaluate(id, max_n);
    std::size_t mismatches = 0;
    for (std::size_t n = 0; n <= max_n; ++n)
      if (series[n] != Rational(Integer(std::to_string(counts[n])))) ++mismatches;
    o.require(mismatches == 0, id + " n <= " + std::to_string(max_n) + " (last count " +
                                   std::to_string(counts[max_n]) + ")");
  }
}

// 3. Identity suite.
void identity_suite(Outcome& o) {
  auto report = check_identities(100);
  for (const auto& r : report.results)
    o.require(r.holds, r.name + (r.first_failing_index ? " (first residual at z^" +
                                                             std::to_string(*r.first_failing_index) + ")"
                                                       : ""));
}

// 4. Grid class.
void grid_equivalence(Outcome& o) {
  const auto basis = PatternBasis::parse("4123,1243,1423");
  std::size_t checked = 0, disagreements = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i) + 1;
    do {
      Permutation p(v);
      ++checked;
      if (grid_decompose(p).has_value() != avoids_all(p, basis)) ++disagreements;
    } while (std::next_permutation(v.begin(), v.end()));
  }
  o.require(checked == 46233, std::to_string(checked) + " permutations checked");
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

// 5. Sampler.
void sampler_correctness(Outcome& o) {
  for (auto cls : {SamplerClass::fan, SamplerClass::flag}) {
    const std::string name(to_string(cls));
    SlotDP dp(cls, 200);
    auto series = evaluate(sampler_catalog_id(cls), 200);
    bool marginals = true;
    for (std::size_t n = 0; n <= 200; ++n) marginals = marginals && Rational(dp.total(n)) == series[n];
    o.require(marginals, "(a) " + name + " marginals equal " + std::string(sampler_catalog_id(cls)) + " for n <= 200");

    bool bijective = true;
    for (std::size_t n = 0; n <= 8; ++n) {
      auto traces = all_traces(cls, n);
      std::set<Permutation> realized;
      for (const auto& t : traces) realized.insert(realize(t, cls));
      auto members = enumerate({sampler_basis(cls), {}, n});
      bijective = bijective && realized.size() == traces.size() &&
                  std::vector<Permutation>(realized.begin(), realized.end()) == members;
    }
    o.require(bijective, "(b) " + name + " trace realization is a bijection onto the class for n <= 8");

    auto members = enumerate({sampler_basis(cls), {}, 7});
    std::map<Permutation, std::size_t> index;
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = i;
    std::vector<double> observed(members.size(), 0.0);
    SlotDP dp7(cls, 7);
    bool support_ok = true;
    const std::size_t samples = 100000;
    for (const auto& p : sample_batch(dp7, 7, samples, 20240611)) {
      auto it = index.find(p);
      if (it == index.end()) {
        support_ok = false;
        continue;
      }
      observed[it->second] += 1;
    }
    const double expected = static_cast<double>(samples) / static_cast<double>(members.size());
    double stat = 0;
    for (double x : observed) stat += (x - expected) * (x - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(members.size() - 1));
    const double p_value = boost::math::cdf(boost::math::complement(dist, stat));
    std::ostringstream msg;
    msg << "(c) " << name << " chi-square at n = 7 over " << members.size() << " members: p = " << p_value;
    o.require(support_ok && p_value > 0.001, msg.str());

    std::size_t members_ok = 0;
    for (const auto& p : sample_batch(dp, 200, 100, 7)) members_ok += p.size() == 200 && avoids_all(p, sampler_basis(cls));
    o.require(members_ok == 100, "(d) " + name + " " + std::to_string(members_ok) + "/100 samples at n = 200 in class");
  }
}

// 6. Asymptotics.
void asymptotics(Outcome& o) {
  {
    Integer exact;
    mpz_bin_uiui(exact.get_mpz_t(), 200, 100);
    auto est = fo_predict({{{Rational(1)}, Rational(-1, 2)}}, Rational(1, 4), 100, 1);
    const Real err = boost::multiprecision::abs(est.predicted / to_real(exact) - 1);
    o.require(err < Real("1e-3"), "(a) K = 1 vs C(200,100): relative error " + fmt(err, 3));
  }
  const std::size_t n = 500;
  auto table = evaluate_all(n);
  auto ratio = [&](const char* a, const char* b) { return to_real(Rational(table.at(a)[n] / table.at(b)[n])); };
  {
    const Real target = 1 - Real(45) / (64 * n - 60);
    const Real r = ratio("H", "P1");
    o.require(boost::multiprecision::abs(r - target) < Real("1e-3"),
              "(b) H/P1 = " + fmt(r) + " vs 1 - 45/(64n-60) = " + fmt(target));
  }
  {
    const Real b = ratio("B", "P1"), a = ratio("A", "P1");
    o.require(boost::multiprecision::abs(b - Real(5) / 8) < Real("0.02"), "(c) B/P1 = " + fmt(b) + " vs 5/8");
    o.require(boost::multiprecision::abs(a - Real(25) / 64) < Real("0.02"), "(c) A/P1 = " + fmt(a) + " vs 25/64");
  }
  {
    const Real j = ratio("J", "P2");
    o.require(boost::multiprecision::abs(j - Real(99) / 119) < Real("0.02"), "(d) J/P2 = " + fmt(j) + " vs 99/119");
  }
  for (auto [id, target] : {std::pair<const char*, const char*>{"P1", "4"}, {"P2", "5"}, {"P3", "4.17035"}}) {
    auto coeffs = integer_coefficients(evaluate(id, 400));
    const Real g = growth_rate(coeffs);
    o.require(boost::multiprecision::abs(g - Real(target)) < Real("0.01"),
              std::string("(e) growth rate of ") + id + " = " + fmt(g) + " vs " + target);
  }
  {
    const Real root = dominant_root(catalog_entry("P3").singularity_polynomial);
    const std::string six = format_real(root, 6);
    o.require(six == "0.239788", "(f) dominant root of the P3 denominator = " + fmt(root, 12));
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "coefficient fidelity", 1.0, coefficient_fidelity},
      {2, "oracle equivalence", 300.0, oracle_equivalence},
      {3, "identity suite at N = 100", 10.0, identity_suite},
      {4, "grid-class equivalence for n <= 8", 60.0, grid_equivalence},
      {5, "sampler correctness", 300.0, sampler_correctness},
      {6, "asymptotics", 600.0, asymptotics},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.time_limit_s);
    o.require(secs < c.time_limit_s, std::string("runtime ") + timing);
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.title << " (" << timing
              << ")\n";
    for (const auto& d : o.details) std::cout << "        " << d << '\n';
  }
  std::cout << (criteria.size() - failures) << " of " << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
