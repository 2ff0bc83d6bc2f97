#include "permclass/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace permclass {

namespace {

using Poly = std::vector<Rational>;

// Shared building blocks at one working order. Every closed form is built
// here; results are truncated to the requested order by the caller.
class Context {
public:
  explicit Context(std::size_t order) : order_(order) {}

  std::size_t order() const { return order_; }

  PowerSeries poly(const Poly& c) const { return PowerSeries::polynomial(c, order_); }
  PowerSeries one() const { return PowerSeries::constant(1, order_); }
  PowerSeries z() const { return PowerSeries::z(order_); }
  PowerSeries zpow(std::size_t k) const { return PowerSeries::z(order_).shift_up(k - 1); }

  // sqrt(1 - 4z)
  const PowerSeries& s() {
    if (!s_) s_ = sqrt(poly({1, -4}));
    return *s_;
  }
  // sqrt(1 - 6z + 5z^2)
  const PowerSeries& w() {
    if (!w_) w_ = sqrt(poly({1, -6, 5}));
    return *w_;
  }
  // Catalan generating function
  const PowerSeries& t() {
    if (!t_) t_ = catalan_series(order_);
    return *t_;
  }
  // 1 - 3z + z^2
  PowerSeries q() const { return poly({1, -3, 1}); }

private:
  std::size_t order_;
  std::optional<PowerSeries> s_, w_, t_;
};

PowerSeries lower_to(const PowerSeries& a, std::size_t order) { return a.order() == order ? a : a.truncate(order); }

// ---- Av(4123, 1324) and its subclasses ----

PowerSeries eval_A(Context& c) { return 1 + c.z() / c.s(); }

PowerSeries eval_A_kernel(Context& c) {
  const auto& t = c.t();
  auto tz = t.shift_up(1);
  return 1 + tz * (1 - tz) / (1 - 2 * tz);
}

PowerSeries eval_B(Context& c) {
  return c.poly({1, -3}) * (1 + c.s()) / (2 * c.s() * c.q());
}

// A plus the permutations containing 1423, generated from initial source graphs with a 312.
PowerSeries eval_B_kernel(Context& c) {
  auto t4 = power(c.t(), 4);
  return eval_A(c) + (t4 * c.zpow(4) * c.poly({1, -1})) / (c.q() * c.s());
}

PowerSeries eval_F(Context& c) {
  const auto& t = c.t();
  auto q = c.q();
  auto one_minus_z = c.poly({1, -1});
  return t * t * c.zpow(4) * one_minus_z * one_minus_z / (q * q * (1 - 2 * t.shift_up(1)));
}

PowerSeries eval_G(Context& c) {
  const auto& t = c.t();
  auto q = c.q();
  auto one_minus_z = c.poly({1, -1});
  auto tail = one_minus_z + t.shift_up(1);
  return power(t, 6) * c.zpow(6) * one_minus_z * tail / (q * q * (1 - 2 * t.shift_up(1)));
}

PowerSeries eval_H(Context& c) {
  auto q = c.q();
  auto num = c.poly({3, -22, 54, -54, 25, -4}) - c.poly({1, -6, 14, -16, 5}) * c.s();
  return num / (2 * c.s() * q * q);
}

PowerSeries eval_I(Context& c) {
  auto q = c.q();
  auto one_minus_z = c.poly({1, -1});
  return power(c.t(), 5) * c.zpow(5) * one_minus_z * one_minus_z / (q * q);
}

PowerSeries eval_I_radical(Context& c) {
  auto q = c.q();
  auto one_minus_z = c.poly({1, -1});
  auto inner = c.poly({1, -5, 5}) - q * c.s();
  return one_minus_z * one_minus_z * inner / (2 * q * q);
}

PowerSeries eval_P1(Context& c) {
  auto q = c.q();
  auto num = c.poly({2, -13, 26, -17, 4}) - c.poly({0, 1, -2, -1}) * c.s();
  return num / (2 * c.s() * q * q);
}

// ---- Av(4123, 1243) ----

PowerSeries eval_J(Context& c) {
  auto num = c.poly({1, 1}) - c.w();
  return num / (2 * c.poly({0, 2, -1}));
}

PowerSeries eval_K(Context& c) {
  auto two_minus_z = c.poly({2, -1});
  auto num = c.poly({1, -1}) * (c.poly({1, -5, 4, -2}) - c.poly({1, -2}) * c.w());
  return num / (2 * c.poly({1, -2}) * c.q() * two_minus_z * two_minus_z);
}

// K(1,z) recovered from K_2(v,z) by cancelling the kernel at v = J:
// K(1,z) = -(1-J)(1-2Jz) K_2(J,z) / (Jz(1-Jz)).
PowerSeries eval_K_kernel(Context& c) {
  auto j = eval_J(c);  // one order lower than the context
  const auto n = j.order();
  auto lo = [&](const PowerSeries& s) { return lower_to(s, n); };
  auto z = lo(c.z());
  auto jz = j * z;
  auto k2_den = lo(c.q()) * lo(c.poly({1, -2})) * (1 - z - 2 * jz + jz * z);
  auto k2 = j * j * lo(c.zpow(4)) * lo(c.poly({1, -1})) / k2_den;
  return -((1 - j) * (1 - 2 * jz) * k2) / (jz * (1 - jz));
}

PowerSeries eval_P2(Context& c) {
  auto two_minus_z = c.poly({2, -1});
  auto num = c.poly({2, -8, 2, 17, -15, 4}) - c.poly({2, -10, 16, -9, 2}) * c.w();
  auto den = 2 * c.z() * two_minus_z * two_minus_z * c.poly({1, -2}) * c.q();
  return num / den;
}

// ---- Av(4123, 1342) ----

PowerSeries eval_L(Context& c) { return c.t() - 1; }

PowerSeries eval_M(Context& c) { return c.poly({0, 1, -2, 2}) / c.poly({1, -4, 5, -3}); }

PowerSeries eval_N1(Context& c) { return power(c.t(), 4) * c.zpow(3); }

PowerSeries eval_N2(Context& c) {
  auto one_minus_z = c.poly({1, -1});
  const auto& t = c.t();
  return t * t * c.zpow(4) / (one_minus_z * one_minus_z * c.poly({1, -2}));
}

PowerSeries eval_N3(Context& c) { return power(c.t(), 3) * c.zpow(3) / c.poly({1, -1}); }

PowerSeries eval_N4(Context& c) {
  auto one_minus_z = c.poly({1, -1});
  return power(c.t(), 3) * c.zpow(4) / power(one_minus_z, 3);
}

PowerSeries eval_N(Context& c) {
  const auto& t = c.t();
  auto one_minus_z = c.poly({1, -1});
  auto bracket = t * t + c.z() / (one_minus_z * one_minus_z * c.poly({1, -2})) + t / one_minus_z +
                 t.shift_up(1) / power(one_minus_z, 3);
  return t * t * c.zpow(3) * bracket;
}

PowerSeries eval_N_lemmas(Context& c) { return eval_N1(c) + eval_N2(c) + eval_N3(c) + eval_N4(c); }

PowerSeries eval_P3(Context& c) {
  auto num = c.poly({0, 1, -1}) * c.poly({1, -2}) * (c.poly({1, -7, 17, -16, 4}) + c.poly({1, -3, 3}) * c.s());
  auto den = c.poly({2, -22, 96, -220, 282, -196, 64, -8});
  return 1 + num / den;
}

// Words over {L, M, N} with no two consecutive L or M letters.
PowerSeries eval_P3_composition(Context& c) {
  auto l = eval_L(c);
  auto m = eval_M(c);
  auto n = eval_N(c);
  auto alternating = (1 + l) * (1 + m) / (1 - l * m);
  return 1 + c.z() * alternating / (1 - n * alternating);
}

PowerSeries eval_CAT(Context& c) { return c.t(); }

using Evaluator = PowerSeries (*)(Context&);

const std::map<std::string, Evaluator, std::less<>>& evaluators() {
  static const std::map<std::string, Evaluator, std::less<>> table = {
      {"A", eval_A},   {"B", eval_B},   {"F", eval_F},   {"G", eval_G},   {"H", eval_H},
      {"I", eval_I},   {"P1", eval_P1}, {"J", eval_J},   {"K", eval_K},   {"P2", eval_P2},
      {"L", eval_L},   {"M", eval_M},   {"N", eval_N},   {"N1", eval_N1}, {"N2", eval_N2},
      {"N3", eval_N3}, {"N4", eval_N4}, {"P3", eval_P3}, {"CAT", eval_CAT},
  };
  return table;
}

const std::map<std::string, Evaluator, std::less<>>& auxiliary_forms() {
  static const std::map<std::string, Evaluator, std::less<>> table = {
      {"A.kernel", eval_A_kernel}, {"B.kernel", eval_B_kernel},
      {"I.radical", eval_I_radical}, {"K.kernel", eval_K_kernel},
      {"N.lemmas", eval_N_lemmas}, {"P3.composition", eval_P3_composition},
  };
  return table;
}

// Closed forms that divide by z lose orders; two spare orders cover all of them.
constexpr std::size_t kWorkingSlack = 2;

PatternBasis basis(std::string_view s) { return PatternBasis::parse(s); }

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };

  const Rational quarter(1, 4), fifth(1, 5), half(1, 2);
  const std::string near_quarter = "expansion of the closed form in sqrt(1-4z) at z = 1/4; checked against "
                                   "exact coefficients at n = 500";

  add({.id = "A",
       .description = "Av(4123,1324,3124,1423): central binomial coefficients",
       .basis = basis("4123,1324,3124,1423"),
       .reference = {{1, 1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620}, "binomial(2n-2, n-1) for n >= 1"},
       .puiseux = PuiseuxData{quarter,
                              {{{Rational(1, 4)}, -half}, {{Rational(1)}, Rational(0)}, {{Rational(-1, 4)}, half}},
                              near_quarter}});
  add({.id = "B",
       .description = "Av(4123,1324,3124); also Av(4123,1324,1423)",
       .basis = basis("4123,1324,3124"),
       .alternate_bases = {basis("4123,1324,1423")},
       .reference = {{1, 1, 2, 6, 21, 78, 297, 1143, 4419, 17119, 66386}, "OEIS A277221"},
       .puiseux = PuiseuxData{quarter,
                              {{{Rational(2, 5)}, -half}, {{Rational(2, 5)}, Rational(0)}, {{Rational(2, 5)}, half}},
                              near_quarter},
       .archive_id = "A277221"});
  add({.id = "F",
       .description = "containers of 1423 in Av(4123,1324,31524) grown from C, D, E by fans",
       .reference = {{0, 0, 0, 0, 1, 8}, "series of the closed form"}});
  add({.id = "G",
       .description = "containers of 1423 in Av(4123,1324,31524) leaving D or E by a right-end extension",
       .reference = {{0, 0, 0, 0, 0, 0, 1}, "series of the closed form"}});
  add({.id = "H",
       .description = "Av(4123,1324,31524)",
       .basis = basis("4123,1324,31524"),
       .reference = {{1, 1, 2, 6, 22, 86, 343, 1374, 5497, 21926, 87176}, "OEIS A277222"},
       .puiseux = PuiseuxData{quarter,
                              {{{Rational(16, 25)}, -half},
                               {{Rational(-37, 50)}, Rational(0)},
                               {{Rational(21, 10)}, half}},
                              near_quarter},
       .archive_id = "A277222"});
  add({.id = "I",
       .description = "Av(4123,1324) containing 31524",
       .basis = basis("4123,1324"),
       .must_contain = {Permutation::parse("31524")},
       .reference = {{0, 0, 0, 0, 0, 1, 9, 54, 271, 1230, 5240}, "A165532 minus A277222"}});
  add({.id = "P1",
       .description = "Av(4123,1324)",
       .basis = basis("4123,1324"),
       .reference = {{1, 1, 2, 6, 22, 87, 352, 1428, 5768, 23156, 92416}, "OEIS A165532"},
       .puiseux = PuiseuxData{quarter,
                              {{{Rational(16, 25)}, -half},
                               {{Rational(-14, 25)}, Rational(0)},
                               {{Rational(6, 5)}, half}},
                              near_quarter},
       .archive_id = "A165532"});
  add({.id = "J",
       .description = "Av(4123,1243,1423): increasing cell over a 123-avoiding cell",
       .basis = basis("4123,1243,1423"),
       .reference = {{1, 1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900}, "OEIS A033321"},
       .puiseux = PuiseuxData{fifth,
                              {{{Rational(5, 3)}, Rational(0)}, {{0, Rational(-5, 9), 5}, half}},
                              "leading constant (5/18) sqrt(5/pi) 5^n n^(-3/2); subdominant terms omitted"},
       .archive_id = "A033321"});
  add({.id = "K",
       .description = "Av(4123,1243) containing 1423",
       .basis = basis("4123,1243"),
       .must_contain = {Permutation::parse("1423")},
       .reference = {{0, 0, 0, 0, 1, 9, 54, 275, 1293, 5838, 25852}, "A165536 minus A033321"}});
  add({.id = "P2",
       .description = "Av(4123,1243)",
       .basis = basis("4123,1243"),
       .reference = {{1, 1, 2, 6, 22, 88, 365, 1540, 6568, 28269, 122752}, "OEIS A165536"},
       .puiseux = PuiseuxData{fifth,
                              {{{Rational(515, 297)}, Rational(0)}, {{0, Rational(-595, 891), 5}, half}},
                              "leading constant (595/1782) sqrt(5/pi) 5^n n^(-3/2); subdominant terms omitted"},
       .archive_id = "A165536"});
  add({.id = "L",
       .description = "nonempty skew components: nonempty Av(123)",
       .basis = basis("123"),
       .nonempty_only = true,
       .reference = {{0, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796}, "Catalan numbers, n >= 1"}});
  add({.id = "M",
       .description = "nonempty sum components: nonempty Av(4123,231)",
       .basis = basis("4123,231"),
       .nonempty_only = true,
       .reference = {{0, 1, 2, 5, 13}, "exhaustive count of Av(4123,231)"}});
  add({.id = "N",
       .description = "mixes: minimal components straddling the current permutation",
       .reference = {{0, 0, 0, 2, 10}, "series of the closed form"}});
  add({.id = "N1",
       .description = "mixes starting below the core, first entry not the 1 of a 31524",
       .reference = {{0, 0, 0, 1, 4}, "series of the closed form"}});
  add({.id = "N2",
       .description = "mixes starting below the core, first entry the 1 of a 31524",
       .reference = {{0, 0, 0, 0, 1}, "series of the closed form"}});
  add({.id = "N3",
       .description = "mixes starting above the core, first entry not the 5 of a 25314",
       .reference = {{0, 0, 0, 1, 4}, "series of the closed form"}});
  add({.id = "N4",
       .description = "mixes starting above the core, first entry the 5 of a 25314",
       .reference = {{0, 0, 0, 0, 1}, "series of the closed form"}});
  add({.id = "P3",
       .description = "Av(4123,1342)",
       .basis = basis("4123,1342"),
       .reference = {{1, 1, 2, 6, 22, 87, 352, 1434, 5861, 24019, 98677}, "OEIS A165533"},
       .singularity_polynomial = {2, -22, 96, -220, 282, -196, 64, -8},
       .archive_id = "A165533"});
  add({.id = "CAT",
       .description = "Catalan generating function t, root of 1 - t + z t^2 = 0; Av(123)",
       .basis = basis("123"),
       .reference = {{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796}, "Catalan numbers"}});
  return out;
}

IdentityResult compare(std::string name, const PowerSeries& residual) {
  IdentityResult r{std::move(name), true, std::nullopt};
  if (auto v = residual.valuation()) {
    r.holds = false;
    r.first_failing_index = *v;
  }
  return r;
}

const PowerSeries& get(const SeriesTable& table, std::string_view id) {
  auto it = table.find(id);
  if (it == table.end()) throw UnknownEntry("series table has no entry '" + std::string(id) + "'");
  return it->second;
}

}  // namespace

double Surd::to_double() const {
  double v = rational.get_d();
  if (radicand != 0) v += radical.get_d() * std::sqrt(static_cast<double>(radicand));
  return v;
}

std::string Surd::to_string() const {
  std::string out = to_decimal_string(rational);
  if (radicand != 0 && radical != 0) {
    out += (radical < 0 ? " - " : " + ");
    out += to_decimal_string(abs(radical)) + "*sqrt(" + std::to_string(radicand) + ")";
  }
  return out;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw UnknownEntry("unknown catalog entry '" + std::string(id) + "'");
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& e : catalog()) ids.push_back(e.id);
  return ids;
}

PowerSeries evaluate(std::string_view id, std::size_t order) {
  auto it = evaluators().find(id);
  if (it == evaluators().end()) throw UnknownEntry("unknown catalog entry '" + std::string(id) + "'");
  Context c(order + kWorkingSlack);
  return it->second(c).truncate(order);
}

SeriesTable evaluate_all(std::size_t order) {
  Context c(order + kWorkingSlack);
  SeriesTable table;
  for (const auto& [id, fn] : evaluators()) table.emplace(id, fn(c).truncate(order));
  for (const auto& [id, fn] : auxiliary_forms()) table.emplace(id, fn(c).truncate(order));
  return table;
}

bool IdentityReport::all_hold() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.holds; });
}

IdentityReport check_identities(const SeriesTable& table) {
  const auto& t = get(table, "CAT");
  IdentityReport report;
  report.order = t.order();
  auto z = PowerSeries::z(t.order());
  auto& out = report.results;

  out.push_back(compare("Catalan kernel: 1 - t + z t^2 = 0", 1 - t + z * t * t));
  out.push_back(compare("A = 1 + tz(1-tz)/(1-2tz)", get(table, "A") - get(table, "A.kernel")));
  out.push_back(compare("B = A + t^4 z^4 (1-z) / ((1-3z+z^2) sqrt(1-4z))", get(table, "B") - get(table, "B.kernel")));
  out.push_back(compare("H = B + F + G", get(table, "H") - get(table, "B") - get(table, "F") - get(table, "G")));
  out.push_back(compare("I: Catalan form = radical form", get(table, "I") - get(table, "I.radical")));
  out.push_back(compare("P1 = H + I", get(table, "P1") - get(table, "H") - get(table, "I")));
  const auto& j = get(table, "J");
  out.push_back(compare("J kernel: 1 - J - zJ + 2zJ^2 - z^2 J^2 = 0",
                        1 - j - z * j + 2 * z * j * j - z * z * j * j));
  out.push_back(compare("K: closed form = kernel-method form", get(table, "K") - get(table, "K.kernel")));
  out.push_back(compare("P2 = J + K", get(table, "P2") - j - get(table, "K")));
  out.push_back(compare("N = N1 + N2 + N3 + N4", get(table, "N") - get(table, "N.lemmas")));
  out.push_back(compare("P3 = 1 + zW/(1 - N W), W = (1+L)(1+M)/(1-LM)",
                        get(table, "P3") - get(table, "P3.composition")));
  return report;
}

IdentityReport check_identities(std::size_t order) { return check_identities(evaluate_all(order)); }

std::string bfile_text(const PowerSeries& series) {
  if (!series.has_integer_coefficients()) throw SeriesError("b-file export needs integer coefficients");
  std::string out;
  for (std::size_t n = 0; n <= series.order(); ++n) {
    out += std::to_string(n);
    out += ' ';
    out += series[n].get_num().get_str();
    out += '\n';
  }
  return out;
}

std::string export_bfile(std::string_view id, std::size_t order) { return bfile_text(evaluate(id, order)); }

std::string entry_metadata_json(const CatalogEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["description"] = e.description;
  j["basis"] = e.basis ? nlohmann::json(e.basis->to_string()) : nlohmann::json(nullptr);
  auto contains_list = nlohmann::json::array();
  for (const auto& p : e.must_contain) contains_list.push_back(p.to_compact_string());
  j["must_contain"] = contains_list;
  j["nonempty_only"] = e.nonempty_only;
  auto alt = nlohmann::json::array();
  for (const auto& b : e.alternate_bases) alt.push_back(b.to_string());
  j["alternate_bases"] = alt;
  j["reference"] = {{"values", e.reference.values}, {"provenance", e.reference.provenance}};
  if (e.puiseux) {
    nlohmann::ordered_json p;
    p["singularity"] = to_decimal_string(e.puiseux->singularity);
    auto terms = nlohmann::json::array();
    for (const auto& term : e.puiseux->terms)
      terms.push_back({{"coefficient", term.coefficient.to_string()}, {"exponent", to_decimal_string(term.exponent)}});
    p["terms"] = terms;
    p["provenance"] = e.puiseux->provenance;
    j["puiseux"] = p;
  } else {
    j["puiseux"] = nullptr;
  }
  if (!e.singularity_polynomial.empty()) {
    auto poly = nlohmann::json::array();
    for (const auto& c : e.singularity_polynomial) poly.push_back(to_decimal_string(c));
    j["singularity_polynomial"] = poly;
  }
  j["archive_id"] = e.archive_id.empty() ? nlohmann::json(nullptr) : nlohmann::json(e.archive_id);
  return j.dump(2);
}

}  // namespace permclass
