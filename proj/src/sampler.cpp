#include "permclass/sampler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace permclass {

namespace {

std::size_t config_bits_for_step(SamplerClass cls, std::size_t s) {
  return cls == SamplerClass::flag && s >= 2 ? s - 2 : 0;
}

std::size_t config_bits_for_initial(SamplerClass cls, std::size_t m) {
  return cls == SamplerClass::fan && m >= 2 ? m - 2 : 0;
}

std::vector<bool> bits_of(const Integer& index, std::size_t count) {
  std::vector<bool> bits(count);
  for (std::size_t i = 0; i < count; ++i) bits[i] = mpz_tstbit(index.get_mpz_t(), i) != 0;
  return bits;
}

Integer pow2(std::size_t e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace

SamplerClass parse_sampler_class(std::string_view name) {
  if (name == "fan") return SamplerClass::fan;
  if (name == "flag") return SamplerClass::flag;
  throw std::invalid_argument("unknown sampler class '" + std::string(name) + "' (expected fan or flag)");
}

std::string_view to_string(SamplerClass c) { return c == SamplerClass::fan ? "fan" : "flag"; }

const PatternBasis& sampler_basis(SamplerClass c) {
  static const PatternBasis fan = PatternBasis::parse("4123,1324,3124,1423");
  static const PatternBasis flag = PatternBasis::parse("4123,1243,1423");
  return c == SamplerClass::fan ? fan : flag;
}

std::string_view sampler_catalog_id(SamplerClass c) { return c == SamplerClass::fan ? "A" : "J"; }

std::size_t ConstructionTrace::length() const {
  std::size_t n = initial_size;
  for (const auto& s : steps) n += s.size;
  return n;
}

SlotDP::SlotDP(SamplerClass cls, std::size_t n_max) : cls_(cls), n_max_(n_max) {
  table_.resize(n_max + 1);
  suffix_.resize(n_max + 1);
  totals_.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto& row = table_[n];
    row.assign(n + 2, 0);
    for (std::size_t k = 0; k <= n + 1; ++k) {
      Integer v = seed_weight(n, k);
      // Last step: a block of size s with j = k - s old gaps kept, from any state with more than j gaps.
      for (std::size_t s = 1; s <= std::min(n, k); ++s) {
        const auto& from = suffix(n - s, k - s + 1);
        if (from != 0) v += step_weight(s) * from;
      }
      row[k] = v;
    }
    auto& suf = suffix_[n];
    suf.assign(n + 3, 0);
    for (std::size_t k = n + 2; k-- > 0;) suf[k] = suf[k + 1] + row[k];
    totals_[n] = suf[0];
  }
}

const Integer& SlotDP::at(std::size_t n, std::size_t k) const {
  if (n > n_max_ || k >= table_[n].size()) return zero_;
  return table_[n][k];
}

const Integer& SlotDP::total(std::size_t n) const {
  if (n > n_max_) throw std::out_of_range("SlotDP::total: n exceeds n_max");
  return totals_[n];
}

const Integer& SlotDP::suffix(std::size_t n, std::size_t k) const {
  if (k >= suffix_[n].size()) return zero_;
  return suffix_[n][k];
}

Integer SlotDP::seed_weight(std::size_t n, std::size_t k) const {
  if (cls_ == SamplerClass::flag) return (n == 0 && k == 1) ? 1 : 0;
  if (n != k) return 0;
  return n <= 1 ? Integer(1) : pow2(n - 2);
}

Integer SlotDP::step_weight(std::size_t s) const {
  if (cls_ == SamplerClass::fan || s == 1) return 1;
  return pow2(s - 2);
}

ConstructionTrace SlotDP::sample_trace(std::size_t n, std::mt19937_64& rng) const {
  if (n > n_max_) throw std::out_of_range("sample_trace: n exceeds the table size");
  if (totals_[n] == 0) throw std::invalid_argument("class has no members of length " + std::to_string(n));

  Integer r = uniform_below(totals_[n], rng);
  std::size_t k = 0;
  while (r >= table_[n][k]) {
    r -= table_[n][k];
    ++k;
  }

  ConstructionTrace trace;
  std::vector<ConstructionStep> reversed;
  while (true) {
    r = uniform_below(table_[n][k], rng);
    Integer seed = seed_weight(n, k);
    if (r < seed) {
      trace.initial_size = n;
      trace.initial_config = bits_of(r, config_bits_for_initial(cls_, n));
      break;
    }
    r -= seed;
    bool found = false;
    for (std::size_t s = 1; s <= std::min(n, k) && !found; ++s) {
      const std::size_t j = k - s;
      const auto& from = suffix(n - s, j + 1);
      Integer block = step_weight(s) * from;
      if (r >= block) {
        r -= block;
        continue;
      }
      Integer config_index = r / from;
      Integer rest = r % from;
      std::size_t prev_k = j + 1;
      while (rest >= table_[n - s][prev_k]) {
        rest -= table_[n - s][prev_k];
        ++prev_k;
      }
      reversed.push_back({j, s, bits_of(config_index, config_bits_for_step(cls_, s))});
      n -= s;
      k = prev_k;
      found = true;
    }
    if (!found) throw std::logic_error("sample_trace: weights do not add up");
  }
  trace.steps.assign(reversed.rbegin(), reversed.rend());
  return trace;
}

std::size_t final_slot_count(const ConstructionTrace& trace, SamplerClass cls) {
  std::size_t k = 0;
  if (cls == SamplerClass::fan) {
    k = trace.initial_size;
    if (trace.initial_config.size() != config_bits_for_initial(cls, trace.initial_size))
      throw std::invalid_argument("initial block has the wrong number of configuration flags");
  } else {
    if (trace.initial_size != 0 || !trace.initial_config.empty())
      throw std::invalid_argument("flag traces start from the empty permutation");
    k = 1;
  }
  for (const auto& step : trace.steps) {
    if (step.size == 0) throw std::invalid_argument("construction step of size 0");
    if (step.remaining_slots >= k)
      throw std::invalid_argument("step keeps " + std::to_string(step.remaining_slots) + " gaps but only " +
                                  std::to_string(k) + " are available");
    if (step.config.size() != config_bits_for_step(cls, step.size))
      throw std::invalid_argument("step has the wrong number of configuration flags");
    k = step.remaining_slots + step.size;
  }
  return k;
}

Permutation realize(const ConstructionTrace& trace, SamplerClass cls) {
  final_slot_count(trace, cls);  // validates

  // Heights are arbitrary distinct integers; standardized at the end.
  std::vector<long> h;
  long cur = -1;  // position of the current minimum
  long low = 0, high = 0;
  if (cls == SamplerClass::fan && trace.initial_size > 0) {
    const auto m = static_cast<long>(trace.initial_size);
    h.push_back(0);
    std::vector<long> left, right;
    for (long v = 1; v + 1 < m; ++v) (trace.initial_config[v - 1] ? left : right).push_back(v);
    h.insert(h.end(), left.begin(), left.end());
    if (m >= 2) h.push_back(m - 1);
    h.insert(h.end(), right.rbegin(), right.rend());
    cur = 0;
    high = m - 1;
  }

  std::vector<long> tail;
  for (const auto& step : trace.steps) {
    const long k = static_cast<long>(h.size()) - cur;
    const long gap = cur + 1 + (k - 1 - static_cast<long>(step.remaining_slots));
    tail.clear();
    long minimum = 0;
    if (cls == SamplerClass::fan) {
      for (std::size_t i = 1; i < step.size; ++i) tail.push_back(low - static_cast<long>(i));
      minimum = low - static_cast<long>(step.size);
      low = minimum;
    } else {
      long next_low = low - 1;
      for (std::size_t i = 1; i < step.size; ++i) {
        bool is_high = i >= 2 && step.config[i - 2];
        tail.push_back(is_high ? ++high : next_low--);
      }
      minimum = next_low;
      low = minimum;
    }
    h.insert(h.begin() + gap, minimum);
    h.insert(h.end(), tail.begin(), tail.end());
    cur = gap;
  }

  std::vector<int> values(h.size());
  std::vector<std::size_t> order(h.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
  for (std::size_t r = 0; r < order.size(); ++r) values[order[r]] = static_cast<int>(r) + 1;
  return Permutation(std::move(values));
}

namespace {

void extend_traces(SamplerClass cls, ConstructionTrace& trace, std::size_t k, std::size_t remaining,
                   std::vector<ConstructionTrace>& out) {
  if (remaining == 0) {
    out.push_back(trace);
    return;
  }
  for (std::size_t s = 1; s <= remaining; ++s) {
    const std::size_t bits = config_bits_for_step(cls, s);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << bits); ++cfg) {
        ConstructionStep step{j, s, std::vector<bool>(bits)};
        for (std::size_t b = 0; b < bits; ++b) step.config[b] = (cfg >> b) & 1u;
        trace.steps.push_back(std::move(step));
        extend_traces(cls, trace, j + s, remaining - s, out);
        trace.steps.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<ConstructionTrace> all_traces(SamplerClass cls, std::size_t n) {
  std::vector<ConstructionTrace> out;
  if (cls == SamplerClass::flag) {
    ConstructionTrace t;
    extend_traces(cls, t, 1, n, out);
    return out;
  }
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (std::size_t m = 1; m <= n; ++m) {
    const std::size_t bits = config_bits_for_initial(cls, m);
    for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << bits); ++cfg) {
      ConstructionTrace t;
      t.initial_size = m;
      t.initial_config.resize(bits);
      for (std::size_t b = 0; b < bits; ++b) t.initial_config[b] = (cfg >> b) & 1u;
      extend_traces(cls, t, m, n - m, out);
    }
  }
  return out;
}

Integer uniform_below(const Integer& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  Integer x;
  while (true) {
    x = 0;
    std::size_t remaining = bits;
    while (remaining > 0) {
      const std::size_t take = std::min<std::size_t>(64, remaining);
      std::uint64_t word = rng();
      if (take < 64) word >>= (64 - take);
      mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), take);
      x += Integer(static_cast<unsigned long>(word));
      remaining -= take;
    }
    if (x < bound) return x;
  }
}

Permutation sample(const SlotDP& dp, std::size_t n, std::mt19937_64& rng) {
  auto perm = realize(dp.sample_trace(n, rng), dp.sampler_class());
  if (perm.size() != n || !avoids_all(perm, sampler_basis(dp.sampler_class())))
    throw std::logic_error("sampled permutation " + perm.to_string() + " is not in the class");
  return perm;
}

namespace {

std::mt19937_64 stream_for(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t{index} >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<Permutation> sample_batch_serial(const SlotDP& dp, std::size_t n, std::size_t count,
                                             std::uint64_t seed) {
  std::vector<Permutation> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = stream_for(seed, i);
    out.push_back(sample(dp, n, rng));
  }
  return out;
}

std::vector<Permutation> sample_batch(const SlotDP& dp, std::size_t n, std::size_t count, std::uint64_t seed,
                                      int threads) {
  std::vector<Permutation> out(count);
  const auto total = static_cast<long>(count);
#ifdef _OPENMP
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#else
  (void)threads;
#endif
  for (long i = 0; i < total; ++i) {
    auto rng = stream_for(seed, static_cast<std::size_t>(i));
    out[static_cast<std::size_t>(i)] = sample(dp, n, rng);
  }
  return out;
}

}  // namespace permclass
