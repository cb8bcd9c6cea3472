#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "binrep/representation.hpp"

namespace binrep {

// Summand counts are stored in one byte; kExceedsCap marks "more than the cap".
using SummandCount = std::uint8_t;
inline constexpr SummandCount kExceedsCap = 255;
inline constexpr unsigned kMaxCap = 254;

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 30;  // bytes

// Minimal summand counts s(N, k) for N in [range_start, range_end] with
// repeated summands allowed. The table always starts at 0 (s(0) = 0) because
// the coin recurrence needs the full prefix.
class MinRepTable {
 public:
  MinRepTable(unsigned order, std::uint64_t range_end, unsigned cap, std::vector<SummandCount> counts);

  unsigned order() const noexcept { return order_; }
  std::uint64_t range_start() const noexcept { return 0; }
  std::uint64_t range_end() const noexcept { return range_end_; }
  unsigned cap() const noexcept { return cap_; }

  // s(n), or kExceedsCap when it is larger than cap().
  SummandCount at(std::uint64_t n) const;
  std::span<const SummandCount> counts() const noexcept { return counts_; }

 private:
  unsigned order_;
  std::uint64_t range_end_;
  unsigned cap_;
  std::vector<SummandCount> counts_;
};

// Unbounded coin DP over [0, range_end] with coins S_k ∩ [1, range_end].
// Throws ResourceError if the table needs more than memory_budget bytes.
MinRepTable min_rep_table(unsigned k, std::uint64_t range_end, unsigned cap = kMaxCap,
                          std::uint64_t memory_budget = kDefaultMemoryBudget);

struct MinRepResult {
  std::optional<unsigned> summands;  // nullopt: exceeds h_max
  std::optional<Representation> witness;

  bool exceeds() const noexcept { return !summands.has_value(); }
};

// Exact depth-limited search for representations of targets up to n_max.
// Indices are tried largest first, so the first representation found is the
// deterministic witness. Safe to share across threads once constructed.
class RepSearcher {
 public:
  RepSearcher(unsigned k, WideInt n_max, std::uint64_t memory_budget = kDefaultMemoryBudget);

  unsigned order() const noexcept { return order_; }
  WideInt n_max() const noexcept { return n_max_; }

  // Iterative deepening over 1..h_max terms.
  MinRepResult min_rep(WideInt n, unsigned h_max, SearchMode mode) const;

  // Representation with exactly `terms` summands, if one exists.
  std::optional<Representation> find_exact(WideInt n, unsigned terms, SearchMode mode) const;

  bool contains(WideInt value) const;

 private:
  bool search(WideInt::raw_type rem, std::size_t max_pos, unsigned depth, SearchMode mode,
              std::vector<Index>& picked) const;

  unsigned order_;
  WideInt n_max_;
  std::vector<WideInt::raw_type> values_;
  std::vector<std::uint64_t> member_bits_;  // empty when n_max is too large for a bitset
};

// Point query of the minimal number of summands, up to h_max.
MinRepResult min_rep_single(WideInt n, unsigned k, unsigned h_max, SearchMode mode,
                            std::uint64_t memory_budget = kDefaultMemoryBudget);

struct SurveyOptions {
  unsigned threads = 1;
  std::size_t chunks = 1;
  std::size_t witness_limit = 16;
  // Search depth for DistinctOnly surveys and the DP cap for RepeatsAllowed.
  unsigned h_max = 8;
  // Targets whose count exceeds this value are listed as exceptions.
  std::optional<unsigned> claimed_bound;
  std::size_t exception_limit = 1000;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

struct CountAt {
  std::uint64_t n;
  SummandCount count;  // kExceedsCap when above the search depth

  friend bool operator==(const CountAt&, const CountAt&) = default;
};

struct SurveyResult {
  unsigned order = 0;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  SearchMode mode = SearchMode::RepeatsAllowed;
  SummandCount h_star = 0;              // kExceedsCap when some target exceeded the depth
  std::uint64_t attaining = 0;           // number of targets with s(N) == h_star
  std::vector<CountAt> witnesses;        // smallest targets attaining h_star, ascending
  std::uint64_t exception_count = 0;     // targets with s(N) > claimed_bound
  std::vector<CountAt> exceptions;       // first exception_limit of those, ascending

  friend bool operator==(const SurveyResult&, const SurveyResult&) = default;
};

// Maximum of s(N, k) over [n_min, n_max]. RepeatsAllowed uses one dense DP
// table scanned in parallel chunks; DistinctOnly runs parallel point searches.
// The result is identical for every threads/chunks setting.
SurveyResult survey_H(unsigned k, std::uint64_t n_min, std::uint64_t n_max, SearchMode mode,
                      const SurveyOptions& options = {});

}  // namespace binrep
