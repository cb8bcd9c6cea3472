#include "binrep/representation.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace binrep {

std::string_view to_string(SearchMode mode) noexcept {
  return mode == SearchMode::RepeatsAllowed ? "repeats" : "distinct";
}

SearchMode parse_search_mode(std::string_view text) {
  if (text == "repeats") return SearchMode::RepeatsAllowed;
  if (text == "distinct") return SearchMode::DistinctOnly;
  throw InputError("unknown mode '" + std::string(text) + "' (expected repeats|distinct)");
}

Representation::Representation(WideInt target, unsigned order, std::vector<Index> indices)
    : target_(target), order_(order), indices_(std::move(indices)), distinct_(true) {
  if (order_ < 1) throw InputError("Representation: order must be >= 1");
  std::sort(indices_.begin(), indices_.end(), std::greater<>());
  WideInt sum;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < order_) {
      throw InputError("Representation: index " + std::to_string(indices_[i]) + " below order " +
                       std::to_string(order_));
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) distinct_ = false;
    sum += binom(indices_[i], order_);
  }
  if (sum != target_) {
    throw InputError("Representation: terms sum to " + sum.to_string() + ", not " + target_.to_string());
  }
}

std::vector<WideInt> Representation::values() const {
  std::vector<WideInt> out;
  out.reserve(indices_.size());
  for (Index n : indices_) out.push_back(binom(n, order_));
  return out;
}

}  // namespace binrep
