#include "binrep/sequence.hpp"

namespace binrep {

std::string_view to_string(SequenceKind kind) noexcept {
  return kind == SequenceKind::Binomial ? "binomial" : "power";
}

SequenceKind parse_sequence_kind(std::string_view text) {
  if (text == "binomial") return SequenceKind::Binomial;
  if (text == "power") return SequenceKind::PurePower;
  throw InputError("unknown sequence kind '" + std::string(text) + "' (expected binomial|power)");
}

Sequence::Sequence(SequenceKind kind, unsigned order) : kind_(kind), order_(order) {
  if (order < 1) throw InputError("Sequence: order must be >= 1");
}

std::optional<WideInt> Sequence::try_value(Index n) const noexcept {
  if (kind_ == SequenceKind::Binomial) return try_binom(n, order_);
  WideInt::raw_type r = 1;
  for (unsigned i = 0; i < order_; ++i) {
    if (__builtin_mul_overflow(r, static_cast<WideInt::raw_type>(n), &r)) return std::nullopt;
  }
  return WideInt::from_raw(r);
}

WideInt Sequence::value(Index n) const {
  if (n < first_index()) throw InputError("Sequence: index below the first admissible index");
  auto v = try_value(n);
  if (!v) throw OverflowError("Sequence: value at index " + std::to_string(n) + " exceeds 128 bits");
  return *v;
}

std::optional<Index> Sequence::floor_index(WideInt x) const {
  if (kind_ == SequenceKind::Binomial) {
    if (x < WideInt(1u)) return std::nullopt;
    return binrep::floor_index(order_, x);
  }
  if (x < WideInt(1u)) return std::nullopt;
  auto le = [&](Index n) {
    auto v = try_value(n);
    return v && *v <= x;
  };
  Index lo = 1;
  Index hi = 2;
  while (le(hi)) {
    lo = hi;
    if (hi > UINT64_MAX / 2) throw OverflowError("Sequence::floor_index: index exceeds 64 bits");
    hi *= 2;
  }
  while (hi - lo > 1) {
    Index mid = lo + (hi - lo) / 2;
    (le(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<WideInt> Sequence::values_up_to_index(Index max_index) const {
  std::vector<WideInt> out;
  if (max_index < first_index()) return out;
  out.reserve(max_index - first_index() + 1);
  for (Index n = first_index(); n <= max_index; ++n) out.push_back(value(n));
  return out;
}

}  // namespace binrep
