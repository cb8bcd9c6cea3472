#include "binrep/min_rep.hpp"

#include <algorithm>
#include <string>

#include "binrep/parallel.hpp"

namespace binrep {
namespace {

using raw = WideInt::raw_type;

constexpr std::uint64_t kMemberBitsetLimit = std::uint64_t{1} << 27;

}  // namespace

MinRepTable::MinRepTable(unsigned order, std::uint64_t range_end, unsigned cap, std::vector<SummandCount> counts)
    : order_(order), range_end_(range_end), cap_(cap), counts_(std::move(counts)) {
  if (counts_.size() != range_end_ + 1) throw InputError("MinRepTable: counts must cover [0, range_end]");
}

SummandCount MinRepTable::at(std::uint64_t n) const {
  if (n > range_end_) {
    throw InputError("MinRepTable: " + std::to_string(n) + " outside [0, " + std::to_string(range_end_) + "]");
  }
  return counts_[n];
}

MinRepTable min_rep_table(unsigned k, std::uint64_t range_end, unsigned cap, std::uint64_t memory_budget) {
  if (k < 1) throw InputError("min_rep_table: order k must be >= 1");
  if (cap < 1 || cap > kMaxCap) throw InputError("min_rep_table: cap must be in [1, 254]");
  if (range_end >= memory_budget) {
    throw ResourceError("min_rep_table: dense table over [0, " + std::to_string(range_end) + "]",
                        range_end + 1, memory_budget);
  }
  std::vector<SummandCount> s(range_end + 1, kExceedsCap);
  s[0] = 0;

  if (k == 1) {
    // Every positive integer is a coin.
    std::fill(s.begin() + 1, s.end(), SummandCount{1});
    return {k, range_end, cap, std::move(s)};
  }

  const auto cap8 = static_cast<SummandCount>(cap);
  for (Index n = k;; ++n) {
    auto coin_w = try_binom(n, k);
    if (!coin_w || *coin_w > WideInt(range_end)) break;
    const std::uint64_t c = coin_w->to_u64();
    // s[x] = min(s[x], s[x - c] + 1) for x ascending. Within one block of
    // length c the reads come from the previous block, so the block loop has
    // no carried dependency.
    for (std::uint64_t base = c; base <= range_end; base += c) {
      const std::uint64_t len = std::min<std::uint64_t>(c, range_end - base + 1);
      SummandCount* __restrict dst = s.data() + base;
      const SummandCount* __restrict src = s.data() + base - c;
      for (std::uint64_t j = 0; j < len; ++j) {
        SummandCount prev = src[j];
        SummandCount cand = prev >= cap8 ? kExceedsCap : static_cast<SummandCount>(prev + 1);
        dst[j] = std::min(dst[j], cand);
      }
    }
  }
  return {k, range_end, cap, std::move(s)};
}

RepSearcher::RepSearcher(unsigned k, WideInt n_max, std::uint64_t memory_budget) : order_(k), n_max_(n_max) {
  if (k < 1) throw InputError("RepSearcher: order k must be >= 1");
  if (n_max < WideInt(1u)) throw InputError("RepSearcher: n_max must be >= 1");
  const Index top = floor_index(k, n_max);
  const std::uint64_t count = top - k + 1;
  const bool use_bits = n_max.raw() < kMemberBitsetLimit;
  const std::uint64_t bitset_bytes = use_bits ? (n_max.to_u64() / 64 + 1) * 8 : 0;
  if (count > memory_budget / sizeof(raw) || count * sizeof(raw) + bitset_bytes > memory_budget) {
    throw ResourceError("RepSearcher: sequence values up to " + n_max.to_string(),
                        count * sizeof(raw) + bitset_bytes, memory_budget);
  }
  values_.reserve(count);
  raw v = 1;
  for (Index n = k; n <= top; ++n) {
    if (n > k) {
      // C(n, k) = C(n-1, k) * n / (n - k)
      raw prod = 0;
      if (__builtin_mul_overflow(v, static_cast<raw>(n), &prod)) {
        v = binom(n, k).raw();
      } else {
        v = prod / static_cast<raw>(n - k);
      }
    }
    values_.push_back(v);
  }
  if (use_bits) {
    member_bits_.assign(n_max.to_u64() / 64 + 1, 0);
    for (raw x : values_) member_bits_[static_cast<std::uint64_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  }
}

bool RepSearcher::contains(WideInt value) const {
  raw x = value.raw();
  if (!member_bits_.empty() && x <= n_max_.raw()) {
    return (member_bits_[static_cast<std::uint64_t>(x) >> 6] >> (x & 63)) & 1;
  }
  return std::binary_search(values_.begin(), values_.end(), x);
}

bool RepSearcher::search(raw rem, std::size_t max_pos, unsigned depth, SearchMode mode,
                         std::vector<Index>& picked) const {
  if (depth == 1) {
    if (rem > values_[max_pos] || !contains(WideInt::from_raw(rem))) return false;
    auto it = std::lower_bound(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(max_pos) + 1, rem);
    picked.push_back(order_ + static_cast<Index>(it - values_.begin()));
    return true;
  }
  auto end = values_.begin() + static_cast<std::ptrdiff_t>(max_pos) + 1;
  auto it = std::upper_bound(values_.begin(), end, rem);
  if (it == values_.begin()) return false;
  // Prune: depth terms of value at most v cannot reach rem when v * depth < rem.
  const raw need = rem / depth + (rem % depth != 0 ? 1 : 0);
  for (std::size_t p = static_cast<std::size_t>(it - values_.begin()); p-- > 0;) {
    const raw v = values_[p];
    if (v < need) break;
    if (v == rem) continue;  // would use fewer terms
    std::size_t next_max = p;
    if (mode == SearchMode::DistinctOnly) {
      if (p == 0) break;
      next_max = p - 1;
    }
    if (search(rem - v, next_max, depth - 1, mode, picked)) {
      picked.push_back(order_ + static_cast<Index>(p));
      return true;
    }
  }
  return false;
}

std::optional<Representation> RepSearcher::find_exact(WideInt n, unsigned terms, SearchMode mode) const {
  if (n < WideInt(1u) || n > n_max_) throw InputError("RepSearcher: target outside [1, n_max]");
  if (terms == 0) return std::nullopt;
  std::vector<Index> picked;
  picked.reserve(terms);
  if (!search(n.raw(), values_.size() - 1, terms, mode, picked)) return std::nullopt;
  return Representation(n, order_, std::move(picked));
}

MinRepResult RepSearcher::min_rep(WideInt n, unsigned h_max, SearchMode mode) const {
  if (h_max < 1) throw InputError("min_rep: h_max must be >= 1");
  for (unsigned d = 1; d <= h_max; ++d) {
    if (auto rep = find_exact(n, d, mode)) return {d, std::move(rep)};
  }
  return {};
}

MinRepResult min_rep_single(WideInt n, unsigned k, unsigned h_max, SearchMode mode, std::uint64_t memory_budget) {
  if (k < 1) throw InputError("min_rep_single: order k must be >= 1");
  if (n < WideInt(1u)) throw InputError("min_rep_single: target must be >= 1");
  if (h_max < 1) throw InputError("min_rep_single: h_max must be >= 1");
  if (auto idx = sequence_index_of(k, n)) return {1u, Representation(n, k, {*idx})};
  return RepSearcher(k, n, memory_budget).min_rep(n, h_max, mode);
}

namespace {

struct ChunkStats {
  SummandCount max = 0;
  std::uint64_t attaining = 0;
  std::vector<CountAt> witnesses;
  std::uint64_t exception_count = 0;
  std::vector<CountAt> exceptions;
};

template <class CountFn>
ChunkStats scan_chunk(Span span, const SurveyOptions& options, CountFn&& count_of) {
  ChunkStats st;
  for (std::uint64_t n = span.lo;; ++n) {
    const SummandCount c = count_of(n);
    if (c > st.max) {
      st.max = c;
      st.attaining = 0;
      st.witnesses.clear();
    }
    if (c == st.max) {
      ++st.attaining;
      if (st.witnesses.size() < options.witness_limit) st.witnesses.push_back({n, c});
    }
    if (options.claimed_bound && c > *options.claimed_bound) {
      ++st.exception_count;
      if (st.exceptions.size() < options.exception_limit) st.exceptions.push_back({n, c});
    }
    if (n == span.hi) break;
  }
  return st;
}

}  // namespace

SurveyResult survey_H(unsigned k, std::uint64_t n_min, std::uint64_t n_max, SearchMode mode,
                      const SurveyOptions& options) {
  if (k < 1) throw InputError("survey_H: order k must be >= 1");
  if (n_min < 1 || n_max < n_min) throw InputError("survey_H: need 1 <= n_min <= n_max");
  if (options.h_max < 1 || options.h_max > kMaxCap) throw InputError("survey_H: h_max must be in [1, 254]");

  const unsigned threads = std::max(1u, options.threads);
  std::vector<Span> spans = split_range(n_min, n_max, std::max<std::size_t>(1, options.chunks));
  std::vector<ChunkStats> stats(spans.size());

  if (mode == SearchMode::RepeatsAllowed) {
    // The coin recurrence is order-dependent, so the table is built once and
    // only the verification scan runs in parallel.
    const MinRepTable table = min_rep_table(k, n_max, options.h_max, options.memory_budget);
    parallel_for(spans.size(), threads, [&](std::size_t i) {
      stats[i] = scan_chunk(spans[i], options, [&](std::uint64_t n) { return table.at(n); });
    });
  } else {
    const RepSearcher searcher(k, WideInt(n_max), options.memory_budget);
    parallel_for(spans.size(), threads, [&](std::size_t i) {
      stats[i] = scan_chunk(spans[i], options, [&](std::uint64_t n) {
        auto r = searcher.min_rep(WideInt(n), options.h_max, mode);
        return r.summands ? static_cast<SummandCount>(*r.summands) : kExceedsCap;
      });
    });
  }

  SurveyResult out;
  out.order = k;
  out.n_min = n_min;
  out.n_max = n_max;
  out.mode = mode;
  for (const auto& st : stats) out.h_star = std::max(out.h_star, st.max);
  for (const auto& st : stats) {
    if (st.max == out.h_star) {
      out.attaining += st.attaining;
      for (const auto& w : st.witnesses) {
        if (out.witnesses.size() < options.witness_limit) out.witnesses.push_back(w);
      }
    }
    out.exception_count += st.exception_count;
    for (const auto& e : st.exceptions) {
      if (out.exceptions.size() < options.exception_limit) out.exceptions.push_back(e);
    }
  }
  return out;
}

}  // namespace binrep
