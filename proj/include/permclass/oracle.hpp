#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "permclass/permutation.hpp"

namespace permclass {

struct CountQuery {
  PatternBasis basis;
  std::vector<Permutation> must_contain;
  std::size_t n = 0;
};

class EnumerationCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

// All length-n permutations avoiding the basis and containing every
// must_contain pattern, in lexicographic order.
std::vector<Permutation> enumerate(const CountQuery& query, std::size_t cap = kDefaultEnumerationCap);

// Counts for n = 0..max_n in one pass over the pruned generating tree.
// The tree is split below the root across OpenMP threads; threads <= 0 uses
// the OpenMP default. Results do not depend on the thread count.
std::vector<std::uint64_t> count_table(const PatternBasis& basis, const std::vector<Permutation>& must_contain,
                                       std::size_t max_n, int threads = 1);

// Single-threaded depth-first reference for count_table.
std::vector<std::uint64_t> count_table_serial(const PatternBasis& basis,
                                              const std::vector<Permutation>& must_contain, std::size_t max_n);

std::uint64_t count(const CountQuery& query, int threads = 1);

// Filters all of S_n; no pruning. Test oracle for the pruned search (n <= 8).
std::uint64_t count_by_filtering(const CountQuery& query);

}  // namespace permclass
