#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "binrep/wide_int.hpp"

namespace binrep {

using Index = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

// Exact C(n, k) by the falling-factorial product with interleaved division.
// Returns 0 when n < k. Throws OverflowError if the result exceeds 128 bits;
// use binom_big() for those arguments.
WideInt binom(Index n, unsigned k);

// Same as binom() but reports overflow as nullopt instead of throwing.
std::optional<WideInt> try_binom(Index n, unsigned k) noexcept;

// Arbitrary-precision C(n, k) for ranges that do not fit in WideInt.
BigInt binom_big(Index n, unsigned k);

// Largest n with C(n, k) <= x. Requires k >= 1 and x >= 1.
Index floor_index(unsigned k, WideInt x);

// A_k(x) = #{n >= k : C(n, k) <= x} = floor_index(k, x) - k + 1.
Index count_A(unsigned k, WideInt x);

// A_k(x) / ((k!)^{1/k} x^{1/k}). Diagnostic only; never used for exact decisions.
double asymptotic_ratio(unsigned k, WideInt x);

// C(n+1, k) - C(n, k). Checks the Pascal identity gap == C(n, k-1) before
// returning. Requires k >= 1 and n >= k.
WideInt gap(unsigned k, Index n);

// Index of x in S_k if x is an element, otherwise nullopt. Requires k >= 1.
std::optional<Index> sequence_index_of(unsigned k, WideInt x);

// The increasing sequence S_k = { C(n, k) : n >= k } for a fixed order k >= 1.
class BinomialSequence {
 public:
  explicit BinomialSequence(unsigned order);

  unsigned order() const noexcept { return order_; }
  Index first_index() const noexcept { return order_; }

  WideInt value(Index n) const { return binom(n, order_); }
  Index floor_index(WideInt x) const { return binrep::floor_index(order_, x); }
  Index count(WideInt x) const { return count_A(order_, x); }
  WideInt gap(Index n) const { return binrep::gap(order_, n); }
  std::optional<Index> index_of(WideInt x) const { return sequence_index_of(order_, x); }

 private:
  unsigned order_;
};

}  // namespace binrep
