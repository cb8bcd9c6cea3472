#include "binrep/coverage.hpp"

#include <algorithm>
#include <vector>

namespace binrep {

CoverageReport sumset_coverage_threshold(std::uint64_t r_max, SearchMode mode, std::uint64_t memory_budget) {
  if (r_max < 1) throw InputError("sumset_coverage_threshold: r_max must be >= 1");
  const std::uint64_t words = r_max / 64 + 1;
  if (words > memory_budget / 8) {
    throw ResourceError("sumset_coverage_threshold: bitset up to " + std::to_string(r_max), words * 8, memory_budget);
  }
  std::vector<std::uint64_t> bits(words, 0);
  auto set = [&](std::uint64_t x) { bits[x >> 6] |= std::uint64_t{1} << (x & 63); };
  auto test = [&](std::uint64_t x) { return (bits[x >> 6] >> (x & 63)) & 1; };

  std::vector<std::uint64_t> tri;
  for (Index n = 2;; ++n) {
    const std::uint64_t t = n * (n - 1) / 2;
    if (t > r_max) break;
    tri.push_back(t);
  }
  for (std::size_t i = 0; i < tri.size(); ++i) {
    set(tri[i]);
    const std::size_t j_end = mode == SearchMode::RepeatsAllowed ? i + 1 : i;
    for (std::size_t j = 0; j < j_end; ++j) {
      const std::uint64_t s = tri[i] + tri[j];
      if (s > r_max) break;
      set(s);
    }
  }

  CoverageReport rep;
  rep.mode = mode;
  rep.r_max = r_max;
  const std::uint64_t half = r_max / 2 + r_max % 2;
  for (std::uint64_t x = 1; x <= r_max; ++x) {
    if (test(x)) continue;
    ++rep.total_misses;
    rep.largest_miss = x;
    if (x >= half) ++rep.misses_in_upper_half;
  }
  if (rep.largest_miss) {
    // A miss m lies in [ceil(R/2), R] exactly when m <= R <= 2m.
    rep.threshold = std::min(r_max, 2 * *rep.largest_miss);
  }
  return rep;
}

}  // namespace binrep
