#pragma once

#include <optional>
#include <vector>

#include "binrep/min_rep.hpp"
#include "binrep/representation.hpp"

namespace binrep {

struct LeadingTerm {
  Index index;        // largest n with C(n, k) <= N
  WideInt remainder;  // N - C(n, k), always < C(n, k-1)
};

// Greedy step: the largest sequence element not exceeding n.
LeadingTerm greedy_leading_term(WideInt n, unsigned k);

// Indices (descending) of at most two triangular numbers C(a,2) + C(b,2) = r.
// Empty for r = 0, one index when r is itself triangular, nullopt when no
// such decomposition exists. DistinctOnly requires a != b.
std::optional<std::vector<Index>> two_triangular(WideInt r, SearchMode mode);

// At most three triangular numbers summing to n: greedy leading term plus a
// two-term remainder, falling back to exhaustive search when that fails.
std::optional<Representation> decompose_k2(WideInt n, SearchMode mode);

// Repeatedly takes the greedy leading term until nothing is left. Returns
// nullopt if more than max_terms terms would be needed.
std::optional<Representation> greedy_chain(WideInt n, unsigned k, unsigned max_terms);

// One term of a signed sum of binomials: sign * C(index, order).
struct SignedTerm {
  Index index;
  int sign;  // +1 or -1

  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

struct K3Decomposition {
  Representation representation;     // at most seven tetrahedral terms
  Representation remainder_triangles;  // leading-term remainder as <= 3 triangular terms
  std::vector<SignedTerm> telescoped;  // C(n1,3) + sum of (C(m+1,3) - C(m,3)) over the triangles
  bool used_exhaustive_fallback = false;
};

inline constexpr unsigned kTelescopingTermCap = 7;

// Cubic construction: greedy leading term, the remainder as triangular
// numbers, each rewritten as a difference of consecutive tetrahedral numbers.
// The positive-term result comes from a greedy chain capped at seven terms,
// with a bounded exhaustive search as fallback.
std::optional<K3Decomposition> decompose_k3_telescoping(WideInt n);

// Evaluates a signed sum of C(index, order); throws OverflowError if negative.
WideInt evaluate_signed(const std::vector<SignedTerm>& terms, unsigned order);

}  // namespace binrep
