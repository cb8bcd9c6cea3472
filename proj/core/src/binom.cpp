#include "binrep/binom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace binrep {
namespace {

using raw = WideInt::raw_type;

raw raw_gcd(raw a, raw b) {
  while (b != 0) {
    raw t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// C(n, k) or nullopt on overflow. Each partial product equals C(n-k+i, i),
// which increases with i, so overflow in an intermediate step implies the
// final value overflows too.
std::optional<raw> binom_raw(Index n, unsigned k) noexcept {
  if (n < k) return raw{0};
  Index kk = std::min<Index>(k, n - k);
  raw r = 1;
  for (Index i = 1; i <= kk; ++i) {
    raw factor = static_cast<raw>(n - kk + i);
    raw g = raw_gcd(r, static_cast<raw>(i));
    raw reduced = r / g;
    raw step = factor / (static_cast<raw>(i) / g);
    raw next = 0;
    if (__builtin_mul_overflow(reduced, step, &next)) return std::nullopt;
    r = next;
  }
  return r;
}

void require_order(unsigned k, const char* op) {
  if (k < 1) throw InputError(std::string(op) + ": order k must be >= 1");
}

}  // namespace

WideInt binom(Index n, unsigned k) {
  auto r = binom_raw(n, k);
  if (!r) {
    throw OverflowError("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds 128 bits; use binom_big");
  }
  return WideInt::from_raw(*r);
}

std::optional<WideInt> try_binom(Index n, unsigned k) noexcept {
  auto r = binom_raw(n, k);
  if (!r) return std::nullopt;
  return WideInt::from_raw(*r);
}

BigInt binom_big(Index n, unsigned k) {
  if (n < k) return 0;
  Index kk = std::min<Index>(k, n - k);
  BigInt r = 1;
  for (Index i = 1; i <= kk; ++i) {
    r *= n - kk + i;
    r /= i;
  }
  return r;
}

Index floor_index(unsigned k, WideInt x) {
  require_order(k, "floor_index");
  if (x < WideInt(1u)) throw InputError("floor_index: x must be >= 1");
  auto le = [&](Index n) {
    auto v = try_binom(n, k);
    return v && *v <= x;
  };
  // C(k, k) = 1 <= x, so lo always qualifies.
  Index lo = k;
  Index step = 1;
  Index hi = 0;
  for (;;) {
    const Index probe = step > UINT64_MAX - lo ? UINT64_MAX : lo + step;
    if (!le(probe)) {
      hi = probe;
      break;
    }
    lo = probe;
    if (lo == UINT64_MAX) {
      // The answer is UINT64_MAX unless C(2^64, k) also fits under x.
      auto a = try_binom(UINT64_MAX, k);
      auto b = try_binom(UINT64_MAX, k - 1);
      if (!a || !b || WideInt::max() - *a < *b || *a + *b > x) return lo;
      throw OverflowError("floor_index: index exceeds 64 bits");
    }
    step = step > UINT64_MAX / 2 ? UINT64_MAX : step * 2;
  }
  // Invariant: le(lo) and !le(hi).
  while (hi - lo > 1) {
    Index mid = lo + (hi - lo) / 2;
    if (le(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Index count_A(unsigned k, WideInt x) { return floor_index(k, x) - k + 1; }

double asymptotic_ratio(unsigned k, WideInt x) {
  require_order(k, "asymptotic_ratio");
  long double count = static_cast<long double>(count_A(k, x));
  long double log_scale = (std::lgamma(static_cast<long double>(k) + 1.0L) + std::log(x.to_long_double())) /
                          static_cast<long double>(k);
  return static_cast<double>(count / std::exp(log_scale));
}

WideInt gap(unsigned k, Index n) {
  require_order(k, "gap");
  if (n < k) throw InputError("gap: n must be >= k");
  if (n == UINT64_MAX) throw OverflowError("gap: n + 1 exceeds 64 bits");
  WideInt g = binom(n + 1, k) - binom(n, k);
  if (g != binom(n, k - 1)) {
    throw std::logic_error("gap: Pascal identity violated at n=" + std::to_string(n) +
                           ", k=" + std::to_string(k));
  }
  return g;
}

std::optional<Index> sequence_index_of(unsigned k, WideInt x) {
  require_order(k, "sequence_index_of");
  if (x < WideInt(1u)) return std::nullopt;
  Index n = floor_index(k, x);
  if (binom(n, k) == x) return n;
  return std::nullopt;
}

BinomialSequence::BinomialSequence(unsigned order) : order_(order) { require_order(order, "BinomialSequence"); }

}  // namespace binrep
