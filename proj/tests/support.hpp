#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "permclass/permutation.hpp"

namespace testsupport {

using permclass::Permutation;

// Tries every subset of positions; no pruning.
inline bool naive_contains(const Permutation& perm, const Permutation& pattern) {
  const auto n = perm.size(), k = pattern.size();
  if (k > n) return false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(perm[i]);
    if (Permutation::standardize(sub) == pattern) return true;
  }
  return false;
}

inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

}  // namespace testsupport
