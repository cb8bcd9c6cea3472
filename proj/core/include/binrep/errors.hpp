#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace binrep {

// Exact arithmetic left the representable range. Never silently wraps.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A table, bitset or enumeration would exceed its configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + " (requires " + std::to_string(required) +
                           ", budget " + std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// Caller supplied arguments outside an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace binrep
