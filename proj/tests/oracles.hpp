#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's algorithms beyond plain value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

// Row-by-row Pascal triangle, rows 0..n_max, entries as unsigned __int128.
inline std::vector<std::vector<unsigned __int128>> pascal(std::size_t n_max) {
  std::vector<std::vector<unsigned __int128>> rows{{1}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<unsigned __int128> r(n + 1, 1);
    for (std::size_t j = 1; j < n; ++j) r[j] = rows[n - 1][j - 1] + rows[n - 1][j];
    rows.push_back(std::move(r));
  }
  return rows;
}

// n(n-1)...(n-k+1)/k! via plain 64-bit arithmetic, small arguments only.
inline std::uint64_t small_binom(std::uint64_t n, unsigned k) {
  if (n < k) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<std::uint64_t> elements_up_to(unsigned k, std::uint64_t x) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = k; small_binom(n, k) <= x; ++n) v.push_back(small_binom(n, k));
  return v;
}

// Linear scan for the largest n with C(n, k) <= x.
inline std::uint64_t scan_floor_index(unsigned k, std::uint64_t x) {
  std::uint64_t n = k;
  while (small_binom(n + 1, k) <= x) ++n;
  return n;
}

// s(N) = 1 + min over coins v <= N of s(N - v), target-major order.
inline std::vector<unsigned> min_summands(unsigned k, std::uint64_t n_max) {
  const auto coins = elements_up_to(k, n_max);
  std::vector<unsigned> s(n_max + 1, 1000);
  s[0] = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t c : coins) {
      if (c > n) break;
      s[n] = std::min(s[n], s[n - c] + 1);
    }
  }
  return s;
}

// Minimal number of pairwise distinct elements summing to n (0 if impossible
// with at most `cap` terms), by subset enumeration over elements <= n.
inline unsigned min_distinct_summands(unsigned k, std::uint64_t n, unsigned cap) {
  const auto coins = elements_up_to(k, n);
  unsigned best = 0;
  const std::size_t m = coins.size();
  // Depth-first over subsets in increasing index order.
  std::vector<std::size_t> stack;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t sum, unsigned used) -> void {
    if (sum == n) {
      if (best == 0 || used < best) best = used;
      return;
    }
    if (used == cap) return;
    for (std::size_t i = start; i < m && sum + coins[i] <= n; ++i) self(self, i + 1, sum + coins[i], used + 1);
  };
  rec(rec, 0, 0, 0);
  return best;
}

// E_h as the literal count of 2h-tuples (n_1..n_h, m_1..m_h) with equal half sums.
// Raw 128-bit copies of a value list; accepts plain integers or any type with raw().
template <class T>
std::vector<unsigned __int128> raw_values(const std::vector<T>& in) {
  std::vector<unsigned __int128> out;
  out.reserve(in.size());
  for (const auto& v : in) {
    if constexpr (requires { v.raw(); }) {
      out.push_back(v.raw());
    } else {
      out.push_back(static_cast<unsigned __int128>(v));
    }
  }
  return out;
}

inline std::uint64_t energy_by_2h_tuples(const std::vector<unsigned __int128>& values, unsigned h) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(2 * h, 0);
  std::uint64_t count = 0;
  for (;;) {
    unsigned __int128 a = 0;
    unsigned __int128 b = 0;
    for (unsigned i = 0; i < h; ++i) a += values[idx[i]];
    for (unsigned i = h; i < 2 * h; ++i) b += values[idx[i]];
    if (a == b) ++count;
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return count;
}

// Ordered h-tuple sums by nested enumeration into a std::map.
inline std::map<unsigned __int128, std::uint64_t> tally_by_map(const std::vector<unsigned __int128>& values, unsigned h) {
  std::map<unsigned __int128, std::uint64_t> t;
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(h, 0);
  for (;;) {
    unsigned __int128 s = 0;
    for (auto i : idx) s += values[i];
    ++t[s];
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return t;
}

// E_h as the number of ordered pairs of h-tuples with equal sums, counted by
// sorting every h-tuple sum and squaring run lengths.
inline std::uint64_t energy_by_sorted_runs(const std::vector<unsigned __int128>& values, unsigned h) {
  const std::size_t n = values.size();
  std::vector<unsigned __int128> sums;
  std::vector<std::size_t> idx(h, 0);
  for (;;) {
    unsigned __int128 s = 0;
    for (auto i : idx) s += values[i];
    sums.push_back(s);
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  std::sort(sums.begin(), sums.end());
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    e += (j - i) * (j - i);
    i = j;
  }
  return e;
}

}  // namespace oracle
