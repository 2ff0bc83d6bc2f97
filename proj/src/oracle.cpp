#include "permclass/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace permclass {

namespace {

// Frontier depth for splitting the tree across threads (at most 5! subtrees).
constexpr std::size_t kSplitDepth = 5;

struct Node {
  std::vector<int> prefix;
  std::uint32_t satisfied = 0;
};

// Generating tree of prefixes: a child appends one entry with relative value
// r in 1..m+1, shifting entries >= r up. Children are visited in increasing
// r, and a child is only created if it still avoids the basis, which only
// needs checking for occurrences that end at the new entry.
class PrefixTree {
public:
  PrefixTree(const PatternBasis& basis, const std::vector<Permutation>& must_contain, std::size_t max_n)
      : basis_(basis.patterns()), must_contain_(must_contain), max_n_(max_n) {
    if (must_contain_.size() > 32) throw std::invalid_argument("at most 32 must_contain patterns");
    full_mask_ = must_contain_.empty() ? 0u
                                       : static_cast<std::uint32_t>((std::uint64_t{1} << must_contain_.size()) - 1);
  }

  std::uint32_t full_mask() const { return full_mask_; }
  std::size_t max_n() const { return max_n_; }

  // Fills child from parent; returns false if child contains a basis pattern.
  bool extend(std::span<const int> parent, int r, std::uint32_t parent_mask, std::vector<int>& child,
              std::uint32_t& child_mask) const {
    const auto m = parent.size();
    child.resize(m + 1);
    for (std::size_t i = 0; i < m; ++i) child[i] = parent[i] + (parent[i] >= r ? 1 : 0);
    child[m] = r;
    for (const auto& p : basis_)
      if (contains_ending_at_last(child, p)) return false;
    child_mask = parent_mask;
    for (std::size_t i = 0; i < must_contain_.size(); ++i) {
      auto bit = std::uint32_t{1} << i;
      if (!(child_mask & bit) && contains_ending_at_last(child, must_contain_[i])) child_mask |= bit;
    }
    return true;
  }

  // Depth-first walk below (prefix, mask), calling visit(prefix, mask) on every node including the start.
  template <class Visit>
  void walk(const std::vector<int>& start, std::uint32_t mask, Visit&& visit) const {
    std::vector<std::vector<int>> buffers(max_n_ + 2);
    buffers[start.size()] = start;
    walk_from(buffers, start.size(), mask, visit);
  }

private:
  template <class Visit>
  void walk_from(std::vector<std::vector<int>>& buffers, std::size_t depth, std::uint32_t mask, Visit& visit) const {
    const auto& prefix = buffers[depth];
    if (!visit(prefix, mask)) return;
    if (depth >= max_n_) return;
    for (int r = 1; r <= static_cast<int>(depth) + 1; ++r) {
      std::uint32_t child_mask = 0;
      if (!extend(prefix, r, mask, buffers[depth + 1], child_mask)) continue;
      walk_from(buffers, depth + 1, child_mask, visit);
    }
  }

  const std::vector<Permutation>& basis_;
  const std::vector<Permutation>& must_contain_;
  std::size_t max_n_;
  std::uint32_t full_mask_ = 0;
};

}  // namespace

std::vector<std::uint64_t> count_table_serial(const PatternBasis& basis,
                                              const std::vector<Permutation>& must_contain, std::size_t max_n) {
  PrefixTree tree(basis, must_contain, max_n);
  std::vector<std::uint64_t> counts(max_n + 1, 0);
  tree.walk({}, 0, [&](const std::vector<int>& prefix, std::uint32_t mask) {
    if (mask == tree.full_mask()) ++counts[prefix.size()];
    return true;
  });
  return counts;
}

std::vector<std::uint64_t> count_table(const PatternBasis& basis, const std::vector<Permutation>& must_contain,
                                       std::size_t max_n, int threads) {
  PrefixTree tree(basis, must_contain, max_n);
  std::vector<std::uint64_t> counts(max_n + 1, 0);
  const std::size_t split = std::min(max_n, kSplitDepth);

  // Shallow levels serially; nodes at the split depth become independent tasks.
  std::vector<Node> frontier;
  PrefixTree shallow(basis, must_contain, split);
  shallow.walk({}, 0, [&](const std::vector<int>& prefix, std::uint32_t mask) {
    if (prefix.size() == split && split < max_n) {
      frontier.push_back({prefix, mask});
      return true;
    }
    if (mask == tree.full_mask()) ++counts[prefix.size()];
    return true;
  });

  const auto tasks = static_cast<long>(frontier.size());
#ifdef _OPENMP
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
#else
  (void)threads;
#endif
  {
    std::vector<std::uint64_t> local(max_n + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
    for (long i = 0; i < tasks; ++i) {
      const auto& node = frontier[static_cast<std::size_t>(i)];
      tree.walk(node.prefix, node.satisfied, [&](const std::vector<int>& prefix, std::uint32_t mask) {
        if (mask == tree.full_mask()) ++local[prefix.size()];
        return true;
      });
    }
#ifdef _OPENMP
#pragma omp critical(permclass_count_merge)
#endif
    for (std::size_t n = 0; n <= max_n; ++n) counts[n] += local[n];
  }
  return counts;
}

std::uint64_t count(const CountQuery& query, int threads) {
  return count_table(query.basis, query.must_contain, query.n, threads)[query.n];
}

std::vector<Permutation> enumerate(const CountQuery& query, std::size_t cap) {
  PrefixTree tree(query.basis, query.must_contain, query.n);
  std::vector<Permutation> out;
  tree.walk({}, 0, [&](const std::vector<int>& prefix, std::uint32_t mask) {
    if (prefix.size() < query.n) return true;
    if (mask == tree.full_mask()) {
      if (out.size() >= cap)
        throw EnumerationCapExceeded("class at n = " + std::to_string(query.n) + " has more than " +
                                     std::to_string(cap) + " members; use count instead");
      out.emplace_back(prefix);
    }
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_by_filtering(const CountQuery& query) {
  std::vector<int> v(query.n);
  std::iota(v.begin(), v.end(), 1);
  std::uint64_t total = 0;
  do {
    Permutation p(v);
    if (!avoids_all(p, query.basis)) continue;
    bool all = std::all_of(query.must_contain.begin(), query.must_contain.end(),
                           [&](const Permutation& q) { return contains(p, q); });
    if (all) ++total;
  } while (std::next_permutation(v.begin(), v.end()));
  return total;
}

}  // namespace permclass
