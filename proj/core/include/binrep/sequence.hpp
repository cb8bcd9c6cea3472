#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binrep/binom.hpp"

namespace binrep {

enum class SequenceKind { Binomial, PurePower };

std::string_view to_string(SequenceKind kind) noexcept;
SequenceKind parse_sequence_kind(std::string_view text);

// A strictly increasing integer sequence used as the summand set of the
// tally engine: binomials C(n, k) for n >= k, or pure powers n^k for n >= 1.
class Sequence {
 public:
  Sequence(SequenceKind kind, unsigned order);

  static Sequence binomial(unsigned order) { return {SequenceKind::Binomial, order}; }
  static Sequence power(unsigned order) { return {SequenceKind::PurePower, order}; }

  SequenceKind kind() const noexcept { return kind_; }
  unsigned order() const noexcept { return order_; }
  Index first_index() const noexcept { return kind_ == SequenceKind::Binomial ? order_ : 1; }

  WideInt value(Index n) const;
  std::optional<WideInt> try_value(Index n) const noexcept;

  // Largest index whose value is <= x, or nullopt when even the first value exceeds x.
  std::optional<Index> floor_index(WideInt x) const;

  // Values for indices first_index()..max_index.
  std::vector<WideInt> values_up_to_index(Index max_index) const;

  // Number of indices in [first_index(), max_index] (0 if max_index is below the start).
  Index admissible_count(Index max_index) const noexcept {
    return max_index < first_index() ? 0 : max_index - first_index() + 1;
  }

 private:
  SequenceKind kind_;
  unsigned order_;
};

}  // namespace binrep
