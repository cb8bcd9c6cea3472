#pragma once

#include <string_view>
#include <vector>

#include "binrep/binom.hpp"

namespace binrep {

enum class SearchMode { RepeatsAllowed, DistinctOnly };

std::string_view to_string(SearchMode mode) noexcept;  // "repeats" | "distinct"
SearchMode parse_search_mode(std::string_view text);

// target = sum of C(n_i, order). Indices are kept in descending order and the
// sum is verified on construction; "at most h" means fewer indices, never a
// zero-valued term.
class Representation {
 public:
  Representation(WideInt target, unsigned order, std::vector<Index> indices);

  WideInt target() const noexcept { return target_; }
  unsigned order() const noexcept { return order_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool distinct() const noexcept { return distinct_; }

  std::vector<WideInt> values() const;

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  WideInt target_;
  unsigned order_;
  std::vector<Index> indices_;
  bool distinct_;
};

}  // namespace binrep
