#include <doctest.h>

#include <random>
#include <set>

#include "permclass/catalog.hpp"
#include "permclass/oracle.hpp"
#include "support.hpp"

using namespace permclass;

namespace {

PatternBasis B(std::string_view s) { return PatternBasis::parse(s); }
Permutation P(std::string_view s) { return Permutation::parse(s); }

void check_against_catalog(const CatalogEntry& e, const PatternBasis& basis, std::size_t max_n) {
  auto series = evaluate(e.id, max_n);
  auto counts = count_table(basis, e.must_contain, max_n);
  if (e.nonempty_only) counts[0] = 0;
  for (std::size_t n = 0; n <= max_n; ++n)
    CHECK_MESSAGE(series[n] == Rational(Integer(std::to_string(counts[n]))),
                  e.id << " (" << basis.to_string() << ") at n = " << n);
}

}  // namespace

TEST_CASE("enumerate examples") {
  CHECK(enumerate({B("4123,1324"), {}, 5}).size() == 87);
  auto empty = enumerate({B("4123,1324"), {}, 0});
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());
  auto k = enumerate({B("4123,1243"), {P("1423")}, 4});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == P("1423"));
  CHECK(enumerate({B("4123"), {P("12345")}, 3}).empty());
}

TEST_CASE("enumerate output is sorted, distinct and in the class") {
  const CountQuery q{B("4123,1342"), {P("2413")}, 7};
  auto list = enumerate(q);
  CHECK(std::is_sorted(list.begin(), list.end()));
  CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
  for (const auto& p : list) {
    CHECK(p.size() == 7);
    CHECK(avoids_all(p, q.basis));
    CHECK(contains(p, P("2413")));
  }
  CHECK(list.size() == count_by_filtering(q));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate({B("123"), {}, 8}, 100), EnumerationCapExceeded);
  CHECK(enumerate({B("123"), {}, 8}, 1430).size() == 1430);
}

TEST_CASE("count examples") {
  CHECK(count({B("4123,1324,3124,1423"), {}, 4}) == 20);
  CHECK(count({B("4123,1324,31524"), {}, 6}) == 343);
  CHECK(count({B("4123,1342"), {}, 7}) == 1434);
  CHECK(count_table(B("4123,1243"), {}, 5) == std::vector<std::uint64_t>{1, 1, 2, 6, 22, 88});
  CHECK(count_table(B("1"), {}, 4) == std::vector<std::uint64_t>{1, 0, 0, 0, 0});
  CHECK(count({B("4123,1324"), {P("31524")}, 6}) ==
        count({B("4123,1324"), {}, 6}) - count({B("4123,1324,31524"), {}, 6}));
  CHECK(count({B("4123,1324"), {P("31524")}, 6}) == 9);
  CHECK(count_table(B("12"), {}, 0) == std::vector<std::uint64_t>{1});
}

TEST_CASE("pruned counts equal filtering all of S_n") {
  std::mt19937_64 rng(4);
  std::vector<std::pair<PatternBasis, std::vector<Permutation>>> queries = {
      {B("4123,1324"), {}},         {B("4123,1243"), {P("1423")}}, {B("4123,1342"), {}},
      {B("4123,1324"), {P("31524")}}, {B("231"), {}},              {B("321,2143"), {P("12")}},
      {B("4123,1324,3124,1423"), {}}, {B("4123,1243,1423"), {}}};
  // plus a few random bases of lengths 3..5
  for (int rep = 0; rep < 6; ++rep) {
    std::vector<Permutation> pats;
    for (int i = 0; i < 2; ++i) pats.push_back(testsupport::random_permutation(3 + rng() % 3, rng));
    queries.emplace_back(PatternBasis(pats), std::vector<Permutation>{});
  }
  for (const auto& [basis, must] : queries) {
    auto table = count_table_serial(basis, must, 7);
    for (std::size_t n = 0; n <= 7; ++n)
      CHECK_MESSAGE(table[n] == count_by_filtering({basis, must, n}), basis.to_string() << " n = " << n);
  }
}

TEST_CASE("parallel and serial counts agree at every thread count") {
  for (auto basis : {B("4123,1324"), B("4123,1342"), B("4123,1243")}) {
    auto serial = count_table_serial(basis, {}, 9);
    for (int threads : {0, 1, 2, 3, 4}) CHECK(count_table(basis, {}, 9, threads) == serial);
  }
  auto serial = count_table_serial(B("4123,1243"), {P("1423")}, 9);
  CHECK(count_table(B("4123,1243"), {P("1423")}, 9, 4) == serial);
  CHECK(count_table(B("4123,1324"), {}, 3, 4) == count_table_serial(B("4123,1324"), {}, 3));
}

TEST_CASE("avoidance counts are nondecreasing") {
  for (auto basis : {B("4123,1324"), B("4123,1243"), B("4123,1342"), B("123")}) {
    auto t = count_table(basis, {}, 9);
    CHECK(std::is_sorted(t.begin(), t.end()));
  }
}

TEST_CASE("catalog entries equal oracle counts for n <= 10") {
  for (const auto& e : catalog()) {
    if (!e.basis) continue;
    check_against_catalog(e, *e.basis, 10);
    for (const auto& alt : e.alternate_bases) check_against_catalog(e, alt, 10);
  }
}

TEST_CASE("P2 and I at n = 11") {
  check_against_catalog(catalog_entry("P2"), *catalog_entry("P2").basis, 11);
  check_against_catalog(catalog_entry("I"), *catalog_entry("I").basis, 11);
}

TEST_CASE("must_contain beyond 32 patterns is rejected") {
  std::vector<Permutation> many(33, P("12"));
  CHECK_THROWS_AS(count_table(B("4321"), many, 3), std::invalid_argument);
}
