#pragma once

#include <cstdint>
#include <optional>

#include "binrep/min_rep.hpp"
#include "binrep/representation.hpp"

namespace binrep {

struct CoverageReport {
  SearchMode mode = SearchMode::RepeatsAllowed;
  std::uint64_t r_max = 0;
  // Largest R <= r_max such that [ceil(R/2), R] contains an integer that is
  // not a sum of at most two triangular numbers; nullopt if no such R exists.
  std::optional<std::uint64_t> threshold;
  // Largest non-representable integer in [1, r_max].
  std::optional<std::uint64_t> largest_miss;
  // Non-representable integers in [ceil(r_max/2), r_max].
  std::uint64_t misses_in_upper_half = 0;
  // Non-representable integers in [1, r_max].
  std::uint64_t total_misses = 0;

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

// Bitset of all sums of at most two triangular numbers up to r_max, then the
// largest window [R/2, R] that still has a hole.
CoverageReport sumset_coverage_threshold(std::uint64_t r_max, SearchMode mode,
                                         std::uint64_t memory_budget = kDefaultMemoryBudget);

}  // namespace binrep
