#include "binrep/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "binrep/parallel.hpp"

namespace binrep {
namespace {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  }
  return r;
}

void require_work(std::optional<std::uint64_t> work, const TallyOptions& options, const char* what) {
  if (!work || *work > options.work_budget) {
    throw ResourceError(std::string("tally: ") + what, work.value_or(UINT64_MAX), options.work_budget);
  }
}

template <class S>
struct RawEntry {
  S sum;
  std::uint64_t count;
};

template <class S>
using RawTally = std::vector<RawEntry<S>>;

// Sorts raw sums and run-length encodes them.
template <class S>
RawTally<S> collapse_sums(std::vector<S>& sums) {
  std::sort(sums.begin(), sums.end());
  RawTally<S> out;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    out.push_back({sums[i], j - i});
    i = j;
  }
  return out;
}

template <class S>
RawTally<S> collapse_entries(std::vector<RawEntry<S>>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.sum < b.sum; });
  RawTally<S> out;
  for (const auto& e : entries) {
    if (!out.empty() && out.back().sum == e.sum) {
      out.back().count += e.count;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

template <class S>
RawTally<S> merge_tallies(const RawTally<S>& a, const RawTally<S>& b) {
  RawTally<S> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].sum < b[j].sum)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].sum < a[i].sum) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].sum, a[i].count + b[j].count});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class S>
RawTally<S> merge_all(std::vector<RawTally<S>>& parts) {
  // Pairwise merge in a fixed order keeps the result independent of scheduling.
  while (parts.size() > 1) {
    std::vector<RawTally<S>> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(merge_tallies(parts[i], parts[i + 1]));
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return parts.empty() ? RawTally<S>{} : std::move(parts.front());
}

WideInt max_sum_of(std::span<const WideInt> values, unsigned h) {
  const WideInt top = values.empty() ? WideInt{} : *std::max_element(values.begin(), values.end());
  try {
    return top * WideInt(h);
  } catch (const OverflowError&) {
    throw OverflowError("tally: h-term sums exceed 128 bits");
  }
}

// All ordered h-tuples, split across tasks by the leading coordinate.
template <class S>
RawTally<S> direct_tally(std::span<const S> values, unsigned h, const TallyOptions& options) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  require_work(checked_pow(n, h), options, "direct enumeration");
  const S max_sum = *std::max_element(values.begin(), values.end()) * h;
  const unsigned threads = std::max(1u, options.threads);
  std::vector<Span> slices = split_range(0, n - 1, std::min<std::size_t>(n, threads * 4));
  const std::uint64_t inner = *checked_pow(n, h - 1);
  const std::uint64_t largest_task = (slices.front().hi - slices.front().lo + 1) * inner;
  const bool dense = max_sum < S{UINT64_MAX / 16} && max_sum + 1 <= S{2 * largest_task};
  const std::uint64_t per_task_bytes =
      dense ? 8 * (static_cast<std::uint64_t>(max_sum) + 1) : sizeof(S) * largest_task;
  if (per_task_bytes > options.memory_budget / threads) {
    throw ResourceError("tally: direct enumeration buffers", per_task_bytes * threads, options.memory_budget);
  }
  std::vector<RawTally<S>> parts(slices.size());
  parallel_for(slices.size(), threads, [&](std::size_t t) {
    std::vector<std::uint64_t> counts;
    std::vector<S> buf;
    if (dense) {
      counts.assign(static_cast<std::size_t>(max_sum) + 1, 0);
    } else {
      buf.reserve((slices[t].hi - slices[t].lo + 1) * inner);
    }
    std::vector<std::size_t> odo(h - 1, 0);
    for (std::uint64_t lead = slices[t].lo; lead <= slices[t].hi; ++lead) {
      std::fill(odo.begin(), odo.end(), 0);
      for (;;) {
        S s = values[lead];
        for (std::size_t p : odo) s += values[p];
        if (dense) {
          ++counts[static_cast<std::size_t>(s)];
        } else {
          buf.push_back(s);
        }
        std::size_t d = 0;
        while (d < odo.size() && ++odo[d] == n) odo[d++] = 0;
        if (d == odo.size()) break;
      }
    }
    if (dense) {
      for (std::size_t s = 0; s < counts.size(); ++s) {
        if (counts[s] != 0) parts[t].push_back({S(s), counts[s]});
      }
    } else {
      parts[t] = collapse_sums(buf);
    }
  });
  return merge_all(parts);
}

// Convolution of two tallies, i.e. sum_{a + b = s} L(a) R(b).
template <class S>
RawTally<S> combine_tallies(const RawTally<S>& left, const RawTally<S>& right, const TallyOptions& options) {
  if (left.empty() || right.empty()) return {};
  std::uint64_t work = 0;
  if (__builtin_mul_overflow(static_cast<std::uint64_t>(left.size()), static_cast<std::uint64_t>(right.size()),
                             &work)) {
    work = UINT64_MAX;
  }
  require_work(work, options, "meet-in-the-middle combination");
  const S max_sum = left.back().sum + right.back().sum;
  const unsigned threads = std::max(1u, options.threads);
  const std::uint64_t dense_limit = std::max<std::uint64_t>(std::uint64_t{1} << 24, 4 * work);
  const bool dense = max_sum + 1 <= S{dense_limit} && max_sum + 1 <= S{options.memory_budget / 8};

  if (dense) {
    // Disjoint output ranges per task; each reads every left entry and the
    // matching window of the right tally.
    std::vector<Span> slices = split_range(0, static_cast<std::uint64_t>(max_sum), threads * 4);
    std::vector<RawTally<S>> parts(slices.size());
    parallel_for(slices.size(), threads, [&](std::size_t t) {
      const std::uint64_t lo = slices[t].lo;
      const std::uint64_t hi = slices[t].hi;
      std::vector<std::uint64_t> acc(hi - lo + 1, 0);
      for (const auto& a : left) {
        const auto as = static_cast<std::uint64_t>(a.sum);
        if (as > hi) break;
        const std::uint64_t from = lo > as ? lo - as : 0;
        const std::uint64_t to = hi - as;
        auto it = std::lower_bound(right.begin(), right.end(), S{from},
                                   [](const RawEntry<S>& e, S v) { return e.sum < v; });
        for (; it != right.end() && it->sum <= S{to}; ++it) {
          acc[as + static_cast<std::uint64_t>(it->sum) - lo] += a.count * it->count;
        }
      }
      for (std::uint64_t i = 0; i < acc.size(); ++i) {
        if (acc[i] != 0) parts[t].push_back({S{lo + i}, acc[i]});
      }
    });
    RawTally<S> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  std::vector<Span> slices = split_range(0, left.size() - 1, threads * 4);
  std::vector<RawTally<S>> parts(slices.size());
  parallel_for(slices.size(), threads, [&](std::size_t t) {
    std::vector<RawEntry<S>> entries;
    entries.reserve((slices[t].hi - slices[t].lo + 1) * right.size());
    for (std::uint64_t i = slices[t].lo; i <= slices[t].hi; ++i) {
      for (const auto& b : right) entries.push_back({left[i].sum + b.sum, left[i].count * b.count});
    }
    parts[t] = collapse_entries(entries);
  });
  return merge_all(parts);
}

template <class S>
Tally tally_with(std::span<const WideInt> wide, unsigned h, TallyPath path, const TallyOptions& options) {
  std::vector<S> values;
  values.reserve(wide.size());
  for (WideInt v : wide) values.push_back(static_cast<S>(v.raw()));
  const std::span<const S> view(values);
  RawTally<S> raw;
  if (path == TallyPath::Direct || h == 1) {
    raw = direct_tally(view, h, options);
  } else {
    const unsigned lo = h / 2;
    const unsigned hi = h - lo;
    RawTally<S> right = direct_tally(view, hi, options);
    RawTally<S> left = lo == hi ? right : direct_tally(view, lo, options);
    raw = combine_tallies(left, right, options);
  }
  Tally out;
  out.reserve(raw.size());
  for (const auto& e : raw) out.push_back({WideInt::from_raw(e.sum), e.count});
  return out;
}

WideInt fraction_cap(const Fraction& c, WideInt x, unsigned h) {
  return (WideInt(c.num) * x) / (WideInt(c.den) * WideInt(h));
}

}  // namespace

Tally tally_sums(std::span<const WideInt> values, unsigned h, const TallyOptions& options) {
  if (h < 1) throw InputError("tally: arity h must be >= 1");
  TallyPath path = options.path;
  if (path == TallyPath::Auto) path = h <= 2 ? TallyPath::Direct : TallyPath::MeetInTheMiddle;
  if (max_sum_of(values, h).fits_u64()) return tally_with<std::uint64_t>(values, h, path, options);
  return tally_with<unsigned __int128>(values, h, path, options);
}

Tally multiplicity_map(const Sequence& seq, unsigned h, Index index_bound, const TallyOptions& options) {
  if (index_bound < seq.first_index()) throw InputError("multiplicity_map: index bound below the first index");
  const Index n = seq.admissible_count(index_bound);
  // Budget check before materializing values: even one half needs n^ceil(h/2) tuples.
  require_work(checked_pow(n, (h + 1) / 2), options, "half enumeration");
  const auto values = seq.values_up_to_index(index_bound);
  return tally_sums(values, h, options);
}

EnergyReport summarize_tally(const Tally& tally, const Sequence& seq, unsigned h, Index index_bound) {
  EnergyReport r;
  r.kind = seq.kind();
  r.order = seq.order();
  r.arity = h;
  r.index_bound = index_bound;
  r.admissible = seq.admissible_count(index_bound);
  for (const auto& e : tally) {
    const WideInt c(e.count);
    r.total_tuples += c;
    r.energy += c * c;
    r.max_multiplicity = std::max(r.max_multiplicity, c);
  }
  r.distinct_sums = WideInt(static_cast<std::uint64_t>(tally.size()));
  r.cs_lower_bound = r.energy == WideInt{} ? WideInt{} : ceil_div(r.total_tuples * r.total_tuples, r.energy);
  if (r.total_tuples != pow(WideInt(r.admissible), h)) {
    throw std::logic_error("summarize_tally: total tuples differ from admissible^h");
  }
  return r;
}

EnergyReport energy_report(const Sequence& seq, unsigned h, Index index_bound, const TallyOptions& options) {
  return summarize_tally(multiplicity_map(seq, h, index_bound, options), seq, h, index_bound);
}

std::string_view to_string(IndexConvention c) noexcept {
  return c == IndexConvention::ValueBound ? "value" : "index";
}

IndexConvention parse_index_convention(std::string_view text) {
  if (text == "value") return IndexConvention::ValueBound;
  if (text == "index") return IndexConvention::LiteralIndex;
  throw InputError("unknown index convention '" + std::string(text) + "' (expected value|index)");
}

Index index_bound_for(const Sequence& seq, WideInt x, IndexConvention convention) {
  if (convention == IndexConvention::LiteralIndex) return x.to_u64();
  auto m = seq.floor_index(x);
  return m ? *m : seq.first_index() - 1;
}

Fraction Fraction::parse(std::string_view text) {
  Fraction f;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    f.num = WideInt::parse(text.substr(0, slash)).to_u64();
    f.den = WideInt::parse(text.substr(slash + 1)).to_u64();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw InputError("fraction: bad decimal '" + std::string(text) + "'");
    f.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) f.den *= 10;
    f.num = WideInt::parse(frac).to_u64() + (whole.empty() ? 0 : WideInt::parse(whole).to_u64()) * f.den;
  } else {
    throw InputError("fraction: expected p/q or a decimal, got '" + std::string(text) + "'");
  }
  if (f.den == 0 || f.num == 0 || f.num >= f.den) {
    throw InputError("fraction: value must lie strictly between 0 and 1, got '" + std::string(text) + "'");
  }
  const std::uint64_t g = std::gcd(f.num, f.den);
  f.num /= g;
  f.den /= g;
  return f;
}

std::string Fraction::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

WideInt RestrictedTupleSpec::per_term_cap() const { return fraction_cap(c, x, h); }

bool RestrictedReport::trivial_bound_holds() const {
  return !tally || tally->max_multiplicity <= trivial_bound;
}

bool RestrictedReport::floor_holds() const { return !floor_bound || distinct_sums >= *floor_bound; }

bool RestrictedReport::cs_holds() const { return !tally || distinct_sums >= tally->cs_lower_bound; }

std::uint64_t sumset_size_bitset(std::span<const WideInt> wide, unsigned h, const TallyOptions& options) {
  if (h < 1) throw InputError("sumset: arity h must be >= 1");
  if (wide.empty()) return 0;
  const WideInt top = max_sum_of(wide, h);
  if (top / WideInt(64u) + WideInt(1u) > WideInt(options.memory_budget / 16)) {
    throw ResourceError("sumset: bitset up to " + top.to_string(), UINT64_MAX, options.memory_budget);
  }
  const std::uint64_t words = top.to_u64() / 64 + 1;
  std::vector<std::uint64_t> values;
  values.reserve(wide.size());
  for (WideInt v : wide) values.push_back(v.to_u64());
  std::vector<std::uint64_t> cur(words, 0);
  for (std::uint64_t v : values) cur[v >> 6] |= std::uint64_t{1} << (v & 63);
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::uint64_t> next(words);
  for (unsigned step = 1; step < h; ++step) {
    std::fill(next.begin(), next.end(), 0);
    // next = OR over v of (cur << v); tasks own disjoint word ranges.
    std::vector<Span> slices = split_range(0, words - 1, threads * 4);
    parallel_for(slices.size(), threads, [&](std::size_t t) {
      for (std::uint64_t v : values) {
        const std::uint64_t ws = v >> 6;
        const unsigned bs = static_cast<unsigned>(v & 63);
        const std::uint64_t lo = std::max(slices[t].lo, ws);
        for (std::uint64_t i = lo; i <= slices[t].hi; ++i) {
          std::uint64_t w = cur[i - ws] << bs;
          if (bs != 0 && i - ws >= 1) w |= cur[i - ws - 1] >> (64 - bs);
          next[i] |= w;
        }
      }
    });
    std::swap(cur, next);
  }
  std::uint64_t count = 0;
  for (std::uint64_t w : cur) count += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return count;
}

RestrictedReport restricted_distinct_sums(const RestrictedTupleSpec& spec, const TallyOptions& options) {
  if (spec.h < 1) throw InputError("restricted_distinct_sums: arity h must be >= 1");
  if (spec.c.num == 0 || spec.c.num >= spec.c.den) throw InputError("restricted_distinct_sums: c must lie in (0, 1)");
  RestrictedReport rep;
  rep.spec = spec;
  rep.per_term_cap = spec.per_term_cap();
  rep.max_index = spec.seq.floor_index(rep.per_term_cap);
  rep.admissible = rep.max_index ? spec.seq.admissible_count(*rep.max_index) : 0;
  rep.total_tuples = pow(WideInt(rep.admissible), spec.h);
  rep.trivial_bound = pow(WideInt(rep.admissible), spec.h - 1);
  if (rep.admissible == 0) {
    rep.distinct_sums = WideInt{};
    rep.distinct_sums_method = "tally";
    return rep;
  }
  const auto values = spec.seq.values_up_to_index(*rep.max_index);
  try {
    auto half = checked_pow(values.size(), (spec.h + 1) / 2);
    require_work(half, options, "half enumeration");
    const Tally tally = tally_sums(values, spec.h, options);
    rep.tally = summarize_tally(tally, spec.seq, spec.h, *rep.max_index);
    rep.distinct_sums = rep.tally->distinct_sums;
    rep.distinct_sums_method = "tally";
    rep.floor_bound = ceil_div(rep.total_tuples, rep.tally->max_multiplicity);
  } catch (const ResourceError&) {
    rep.distinct_sums = WideInt(sumset_size_bitset(values, spec.h, options));
    rep.distinct_sums_method = "bitset";
  }
  return rep;
}

ExponentFit fit_energy_exponent(const Sequence& seq, unsigned h, std::span<const WideInt> xs,
                                IndexConvention convention, const TallyOptions& options) {
  if (xs.size() < 3) throw InputError("fit_energy_exponent: need at least 3 sample points");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i])) throw InputError("fit_energy_exponent: X values must be strictly increasing");
  }
  ExponentFit fit;
  std::vector<double> lx;
  std::vector<double> le;
  for (WideInt x : xs) {
    const Index m = index_bound_for(seq, x, convention);
    if (seq.admissible_count(m) == 0) {
      throw InputError("fit_energy_exponent: no admissible index for X = " + x.to_string());
    }
    const EnergyReport r = energy_report(seq, h, m, options);
    fit.observations.push_back({x, m, r.energy});
    lx.push_back(std::log(x.to_double()));
    le.push_back(std::log(r.energy.to_double()));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(le.begin(), le.end(), 0.0) / n;
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (le[i] - my);
  }
  fit.alpha_hat = sxy / sxx;
  fit.intercept = my - fit.alpha_hat * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = le[i] - (fit.intercept + fit.alpha_hat * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss);
  fit.comparison = 2.0 * h / seq.order() - 1.0;
  fit.hypothesis_plausible = fit.alpha_hat < fit.comparison;
  return fit;
}

std::vector<TallyEntry> multiplicity_extremes(const Sequence& seq, unsigned h, Index index_bound, std::size_t top_t,
                                              const TallyOptions& options) {
  Tally tally = multiplicity_map(seq, h, index_bound, options);
  const std::size_t t = std::min(top_t, tally.size());
  std::partial_sort(tally.begin(), tally.begin() + static_cast<std::ptrdiff_t>(t), tally.end(),
                    [](const TallyEntry& a, const TallyEntry& b) {
                      return a.count != b.count ? a.count > b.count : a.sum < b.sum;
                    });
  tally.resize(t);
  return tally;
}

}  // namespace binrep
