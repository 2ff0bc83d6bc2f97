#include "permclass/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace permclass {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty entry in permutation");
  int v = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("non-digit character in permutation: '" + std::string(token) + "'");
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw std::invalid_argument("permutation entry too large");
  }
  return v;
}

// For each pattern index j, the earlier index holding the next smaller and the
// next larger value. An embedding is valid iff every chosen value lies strictly
// inside the window these two neighbours define.
struct Windows {
  std::vector<int> lower;
  std::vector<int> upper;
};

Windows make_windows(const std::vector<int>& p) {
  Windows w;
  const auto k = p.size();
  w.lower.assign(k, -1);
  w.upper.assign(k, -1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (p[i] < p[j] && (w.lower[j] < 0 || p[i] > p[w.lower[j]])) w.lower[j] = static_cast<int>(i);
      if (p[i] > p[j] && (w.upper[j] < 0 || p[i] < p[w.upper[j]])) w.upper[j] = static_cast<int>(i);
    }
  }
  return w;
}

// Suffix value sets, so the last pattern entry is found with a range query
// instead of a scan. Only built for long texts.
class SuffixValueSets {
public:
  SuffixValueSets(std::span<const int> text) : words_((text.size() + 64) / 64), n_(text.size()) {
    bits_.assign((n_ + 1) * words_, 0);
    for (std::size_t i = n_; i-- > 0;) {
      std::copy_n(&bits_[(i + 1) * words_], words_, &bits_[i * words_]);
      auto v = static_cast<std::size_t>(text[i]);
      bits_[i * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }

  // Any value strictly between lo and hi at a position >= start?
  bool any_between(std::size_t start, int lo, int hi) const {
    if (hi - lo < 2 || start >= n_) return false;
    auto first = static_cast<std::size_t>(lo + 1);
    auto last = static_cast<std::size_t>(hi - 1);
    const std::uint64_t* row = &bits_[start * words_];
    for (std::size_t w = first / 64; w <= last / 64; ++w) {
      std::uint64_t mask = ~std::uint64_t{0};
      if (w == first / 64) mask &= ~std::uint64_t{0} << (first % 64);
      if (w == last / 64 && last % 64 != 63) mask &= (std::uint64_t{1} << (last % 64 + 1)) - 1;
      if (row[w] & mask) return true;
    }
    return false;
  }

private:
  std::size_t words_;
  std::size_t n_;
  std::vector<std::uint64_t> bits_;
};

constexpr std::size_t kSuffixSetThreshold = 24;

class Embedder {
public:
  Embedder(std::span<const int> text, const std::vector<int>& pattern)
      : text_(text), pattern_(pattern), windows_(make_windows(pattern)), chosen_(pattern.size()) {
    if (text.size() > kSuffixSetThreshold && pattern.size() >= 2) suffix_.emplace(text);
  }

  bool search() { return pattern_.empty() || dfs(0, 0); }

  // Final pattern entry pinned to the final text entry.
  bool search_anchored() {
    const auto k = pattern_.size();
    const auto m = text_.size();
    if (k == 0) return true;
    if (k > m) return false;
    anchor_value_ = text_[m - 1];
    anchor_pattern_value_ = pattern_[k - 1];
    return anchored_dfs(0, 0, m - 1);
  }

private:
  bool fits(std::size_t j, int v) const {
    int lo = windows_.lower[j], hi = windows_.upper[j];
    if (lo >= 0 && v <= text_[chosen_[lo]]) return false;
    if (hi >= 0 && v >= text_[chosen_[hi]]) return false;
    return true;
  }

  bool dfs(std::size_t j, std::size_t start) {
    const auto k = pattern_.size();
    const auto n = text_.size();
    if (j + 1 == k && suffix_) {
      int lo = windows_.lower[j] >= 0 ? text_[chosen_[windows_.lower[j]]] : 0;
      int hi = windows_.upper[j] >= 0 ? text_[chosen_[windows_.upper[j]]] : static_cast<int>(n) + 1;
      return suffix_->any_between(start, lo, hi);
    }
    for (std::size_t pos = start; pos + (k - j) <= n; ++pos) {
      if (!fits(j, text_[pos])) continue;
      chosen_[j] = pos;
      if (j + 1 == k || dfs(j + 1, pos + 1)) return true;
    }
    return false;
  }

  bool anchored_dfs(std::size_t j, std::size_t start, std::size_t end) {
    const auto k = pattern_.size();
    if (j + 1 == k) return true;
    for (std::size_t pos = start; pos + (k - 1 - j) <= end; ++pos) {
      int v = text_[pos];
      if ((pattern_[j] < anchor_pattern_value_) != (v < anchor_value_)) continue;
      if (!fits(j, v)) continue;
      chosen_[j] = pos;
      if (anchored_dfs(j + 1, pos + 1, end)) return true;
    }
    return false;
  }

  std::span<const int> text_;
  const std::vector<int>& pattern_;
  Windows windows_;
  std::vector<std::size_t> chosen_;
  std::optional<SuffixValueSets> suffix_;
  int anchor_value_ = 0;
  int anchor_pattern_value_ = 0;
};

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const auto n = values_.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v])
      throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = true;
  }
}

Permutation Permutation::parse(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "()" || text == "e") return Permutation{};
  std::vector<int> values;
  if (text.find(',') != std::string_view::npos) {
    for (auto token : split(text, ',')) values.push_back(parse_int(token));
  } else {
    if (text.size() > 9)
      throw std::invalid_argument("compact permutation notation is limited to n <= 9; use commas");
    for (char c : text) values.push_back(parse_int(std::string_view(&c, 1)));
  }
  return Permutation(std::move(values));
}

Permutation Permutation::standardize(std::span<const int> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> out(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && values[order[r]] == values[order[r - 1]])
      throw std::invalid_argument("standardize: repeated value");
    out[order[r]] = static_cast<int>(r) + 1;
  }
  return Permutation(std::move(out));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out;
}

std::string Permutation::to_compact_string() const {
  if (values_.size() > 9) return to_string();
  std::string out;
  for (int v : values_) out += static_cast<char>('0' + v);
  return out;
}

std::vector<Permutation> parse_pattern_list(std::string_view list) {
  list = trim(list);
  if (list.empty()) return {};
  // ';' separates patterns when individual patterns need commas.
  char sep = list.find(';') != std::string_view::npos ? ';' : ',';
  std::vector<Permutation> out;
  for (auto token : split(list, sep)) {
    if (token.empty()) throw std::invalid_argument("empty pattern in list");
    out.push_back(Permutation::parse(token));
  }
  return out;
}

PatternBasis::PatternBasis(std::vector<Permutation> patterns) {
  if (patterns.empty()) throw std::invalid_argument("pattern basis must be nonempty");
  for (const auto& p : patterns)
    if (p.empty()) throw std::invalid_argument("basis patterns must have length >= 1");
  std::sort(patterns.begin(), patterns.end(),
            [](const Permutation& a, const Permutation& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  for (const auto& p : patterns) {
    bool redundant = std::any_of(patterns_.begin(), patterns_.end(),
                                 [&](const Permutation& kept) { return contains(p, kept); });
    if (!redundant) patterns_.push_back(p);
  }
}

PatternBasis PatternBasis::parse(std::string_view list) { return PatternBasis(parse_pattern_list(list)); }

std::size_t PatternBasis::max_length() const {
  std::size_t m = 0;
  for (const auto& p : patterns_) m = std::max(m, p.size());
  return m;
}

std::string PatternBasis::to_string() const {
  std::string out;
  bool wide = max_length() > 9;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (i) out += wide ? ';' : ',';
    out += patterns_[i].to_compact_string();
  }
  return out;
}

bool contains(const Permutation& perm, const Permutation& pattern) {
  if (pattern.size() > perm.size()) return false;
  Embedder e(perm.values(), pattern.values());
  return e.search();
}

bool contains_ending_at_last(std::span<const int> perm, const Permutation& pattern) {
  if (pattern.size() > perm.size()) return false;
  Embedder e(perm, pattern.values());
  return e.search_anchored();
}

bool avoids_all(const Permutation& perm, std::span<const Permutation> patterns) {
  return std::none_of(patterns.begin(), patterns.end(),
                      [&](const Permutation& p) { return contains(perm, p); });
}

bool avoids_all(const Permutation& perm, const PatternBasis& basis) {
  return avoids_all(perm, std::span<const Permutation>(basis.patterns()));
}

SourceGraphDecomposition source_graph_decomposition(const Permutation& perm) {
  SourceGraphDecomposition d;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    int v = perm[i];
    if (d.graphs.empty() || v < perm[d.graphs.back().minimum]) {
      d.graphs.push_back({i, {i}});
      continue;
    }
    // Minima decrease, so the first graph with a smaller minimum is the owner.
    for (auto& g : d.graphs) {
      if (perm[g.minimum] < v) {
        g.members.push_back(i);
        break;
      }
    }
  }
  return d;
}

Permutation graph_pattern(const Permutation& perm, const SourceGraph& graph) {
  std::vector<int> vals;
  vals.reserve(graph.members.size());
  for (auto pos : graph.members) vals.push_back(perm[pos]);
  return Permutation::standardize(vals);
}

bool is_fan(const Permutation& graph_pattern) {
  static const Permutation p123({1, 2, 3});
  return !contains(graph_pattern, p123);
}

int grid_split_value(const Permutation& perm) {
  int running_max = 0;
  int r = 0;
  for (int v : perm.values()) {
    if (running_max > v) r = std::max(r, v);
    running_max = std::max(running_max, v);
  }
  return r;
}

std::optional<GridDecomposition> grid_decompose(const Permutation& perm) {
  GridDecomposition g;
  g.split_value = grid_split_value(perm);
  std::vector<int> bottom_values;
  int last_top = 0;
  bool top_increasing = true;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] > g.split_value) {
      g.top_positions.push_back(i);
      if (perm[i] < last_top) top_increasing = false;
      last_top = perm[i];
    } else {
      g.bottom_positions.push_back(i);
      bottom_values.push_back(perm[i]);
    }
  }
  static const Permutation p123({1, 2, 3});
  if (!top_increasing) return std::nullopt;
  if (contains(Permutation(std::move(bottom_values)), p123)) return std::nullopt;
  return g;
}

}  // namespace permclass
