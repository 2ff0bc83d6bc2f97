#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "permclass/permutation.hpp"
#include "permclass/series.hpp"

namespace permclass {

class UnknownEntry : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// a + b * sqrt(c), with c a nonnegative integer (b is ignored when c == 0).
struct Surd {
  Rational rational = 0;
  Rational radical = 0;
  long radicand = 0;

  double to_double() const;
  std::string to_string() const;
};

// One term lambda * (1 - z/rho)^alpha of an expansion at the dominant singularity.
struct PuiseuxTerm {
  Surd coefficient;
  Rational exponent;
};

struct PuiseuxData {
  Rational singularity;  // rho
  std::vector<PuiseuxTerm> terms;
  std::string provenance;
};

struct ReferenceTerms {
  std::vector<std::int64_t> values;  // coefficients of z^0, z^1, ...
  std::string provenance;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  // Counting entries with a class description. The coefficient of z^n is the
  // number of length-n permutations avoiding the basis and containing every
  // pattern in must_contain (excluding the empty permutation if nonempty_only).
  std::optional<PatternBasis> basis;
  std::vector<Permutation> must_contain;
  bool nonempty_only = false;
  std::vector<PatternBasis> alternate_bases;  // other bases with the same sequence
  ReferenceTerms reference;
  std::optional<PuiseuxData> puiseux;
  // Polynomial (coefficients of z^0, z^1, ...) whose smallest positive root is
  // the dominant singularity, for entries with a polar singularity.
  std::vector<Rational> singularity_polynomial;
  std::string archive_id;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(std::string_view id);
std::vector<std::string> catalog_ids();

// Closed-form series of one entry, truncated at z^order.
PowerSeries evaluate(std::string_view id, std::size_t order);

// Every catalog entry plus the alternative forms used by the identity checks
// ("A.kernel", "B.kernel", "I.radical", "K.kernel", "N.lemmas", "P3.composition").
using SeriesTable = std::map<std::string, PowerSeries, std::less<>>;
SeriesTable evaluate_all(std::size_t order);

struct IdentityResult {
  std::string name;
  bool holds = true;
  std::optional<std::size_t> first_failing_index;
};

struct IdentityReport {
  std::size_t order = 0;
  std::vector<IdentityResult> results;
  bool all_hold() const;
};

IdentityReport check_identities(const SeriesTable& table);
IdentityReport check_identities(std::size_t order);

// "n a(n)" lines for n = 0..order.
std::string export_bfile(std::string_view id, std::size_t order);
std::string bfile_text(const PowerSeries& series);

// Entry metadata as a JSON document.
std::string entry_metadata_json(const CatalogEntry& entry);

}  // namespace permclass
