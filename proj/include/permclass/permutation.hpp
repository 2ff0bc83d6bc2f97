#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permclass {

// One-line notation, values 1..n. The empty permutation is valid.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  // Accepts "3,1,5,2,4" or, for n <= 9, the compact form "31524".
  // An empty string (or "()") is the empty permutation.
  static Permutation parse(std::string_view text);

  // Order-isomorphic copy with values 1..n (input values need only be distinct).
  static Permutation standardize(std::span<const int> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  int operator[](std::size_t i) const { return values_[i]; }
  const std::vector<int>& values() const { return values_; }

  // Comma-separated form, always unambiguous.
  std::string to_string() const;
  // Digit-run form for n <= 9, comma form otherwise.
  std::string to_compact_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

private:
  std::vector<int> values_;
};

// Nonempty, deduplicated, and minimal: no member contains another member.
class PatternBasis {
public:
  explicit PatternBasis(std::vector<Permutation> patterns);
  static PatternBasis parse(std::string_view list);

  const std::vector<Permutation>& patterns() const { return patterns_; }
  std::size_t max_length() const;
  std::string to_string() const;

private:
  std::vector<Permutation> patterns_;
};

// Parses a comma-separated list of compact patterns ("4123,1324").
std::vector<Permutation> parse_pattern_list(std::string_view list);

bool contains(const Permutation& perm, const Permutation& pattern);

// True iff some occurrence of pattern uses perm's final entry as its final entry.
// This is the incremental check used when perm grows by one entry on the right.
bool contains_ending_at_last(std::span<const int> perm, const Permutation& pattern);

bool avoids_all(const Permutation& perm, const PatternBasis& basis);
bool avoids_all(const Permutation& perm, std::span<const Permutation> patterns);

struct SourceGraph {
  std::size_t minimum;               // 0-based position of the left-to-right minimum
  std::vector<std::size_t> members;  // positions in increasing order, minimum included
};

struct SourceGraphDecomposition {
  std::vector<SourceGraph> graphs;
};

// Each entry belongs to the earliest preceding left-to-right minimum below it.
SourceGraphDecomposition source_graph_decomposition(const Permutation& perm);

// A fan is a source graph whose value pattern avoids 123.
bool is_fan(const Permutation& graph_pattern);

// Value pattern of one source graph, in position order.
Permutation graph_pattern(const Permutation& perm, const SourceGraph& graph);

struct GridDecomposition {
  int split_value = 0;  // entries with value > split_value form the top cell
  std::vector<std::size_t> top_positions;
  std::vector<std::size_t> bottom_positions;
};

// Largest value that is the smaller entry of some 21 occurrence; 0 if none.
int grid_split_value(const Permutation& perm);

// Top cell increasing over bottom cell avoiding 123; nullopt when the bottom
// cell contains 123. Succeeds exactly on Av(4123, 1243, 1423).
std::optional<GridDecomposition> grid_decompose(const Permutation& perm);

}  // namespace permclass
