#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "permclass/permutation.hpp"
#include "permclass/series.hpp"

namespace permclass {

// fan:  Av(4123,1324,3124,1423), grown by adding fans as new source graphs.
// flag: Av(4123,1243,1423), grown by adding source flags.
enum class SamplerClass { fan, flag };

SamplerClass parse_sampler_class(std::string_view name);
std::string_view to_string(SamplerClass c);
const PatternBasis& sampler_basis(SamplerClass c);
// Catalog entry whose coefficients count the class ("A" or "J").
std::string_view sampler_catalog_id(SamplerClass c);

// One construction step: a new left-to-right minimum placed so that
// remaining_slots of the previously allowed gaps stay to its right, followed
// by size - 1 entries appended on the right.
//
// fan:  the appended entries decrease and sit between the new minimum and
//       the old minimum; config is empty.
// flag: each appended entry is either "low" (below everything but the new
//       minimum, continuing a decreasing run) or "high" (above everything,
//       continuing an increasing run). The first is always low; config holds
//       size - 2 flags for the rest (true = high).
struct ConstructionStep {
  std::size_t remaining_slots = 0;
  std::size_t size = 1;
  std::vector<bool> config;
};

// fan:  initial_size m >= 1 gives a first source graph: the minimum followed
//       by an increasing-then-decreasing arrangement of m - 1 larger entries.
//       config holds m - 2 flags (true = value left of the peak), one for each
//       value below the peak. initial_size 0 is the empty permutation.
// flag: initial_size is 0; the empty permutation has one allowed gap.
struct ConstructionTrace {
  std::size_t initial_size = 0;
  std::vector<bool> initial_config;
  std::vector<ConstructionStep> steps;

  std::size_t length() const;
  bool operator==(const ConstructionTrace&) const = default;
};

// c[n][k]: weighted number of construction traces of length n ending with k
// allowed gaps for the next minimum.
class SlotDP {
public:
  SlotDP(SamplerClass cls, std::size_t n_max);

  SamplerClass sampler_class() const { return cls_; }
  std::size_t n_max() const { return n_max_; }
  // Zero outside 0 <= k <= n + 1.
  const Integer& at(std::size_t n, std::size_t k) const;
  const Integer& total(std::size_t n) const;

  // Exactly uniform over traces of length n (hence over the class).
  ConstructionTrace sample_trace(std::size_t n, std::mt19937_64& rng) const;

private:
  const Integer& suffix(std::size_t n, std::size_t k) const;
  Integer seed_weight(std::size_t n, std::size_t k) const;
  Integer step_weight(std::size_t s) const;

  SamplerClass cls_;
  std::size_t n_max_;
  std::vector<std::vector<Integer>> table_;   // [n][k], k in 0..n+1
  std::vector<std::vector<Integer>> suffix_;  // [n][k] = sum_{k' >= k} table_[n][k']
  std::vector<Integer> totals_;
  Integer zero_ = 0;
};

// Number of allowed gaps after replaying a trace; throws on malformed traces.
std::size_t final_slot_count(const ConstructionTrace& trace, SamplerClass cls);

// Builds the permutation a trace describes; throws std::invalid_argument on a
// malformed trace.
Permutation realize(const ConstructionTrace& trace, SamplerClass cls);

// Every trace of length n, in a fixed order. Intended for small n.
std::vector<ConstructionTrace> all_traces(SamplerClass cls, std::size_t n);

// Uniform integer in [0, bound) from 64-bit Mersenne Twister output by
// rejection; reproducible across platforms.
Integer uniform_below(const Integer& bound, std::mt19937_64& rng);

// Uniform class member of length n; checks membership before returning.
Permutation sample(const SlotDP& dp, std::size_t n, std::mt19937_64& rng);

// count samples; sample i draws from mt19937_64 seeded with seed_seq{seed, i},
// so output is independent of the thread count.
std::vector<Permutation> sample_batch(const SlotDP& dp, std::size_t n, std::size_t count, std::uint64_t seed,
                                      int threads = 1);
std::vector<Permutation> sample_batch_serial(const SlotDP& dp, std::size_t n, std::size_t count,
                                             std::uint64_t seed);

}  // namespace permclass
