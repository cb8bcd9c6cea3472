#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "binrep/errors.hpp"

namespace binrep {

// Non-negative exact integer of up to 128 bits. Every operation is checked:
// overflow and negative results throw OverflowError instead of wrapping.
class WideInt {
 public:
  using raw_type = unsigned __int128;

  constexpr WideInt() noexcept = default;

  template <std::unsigned_integral T>
  constexpr WideInt(T v) noexcept : v_(v) {}  // NOLINT(implicit)

  template <std::signed_integral T>
  constexpr WideInt(T v) : v_(static_cast<raw_type>(v)) {  // NOLINT(implicit)
    if (v < 0) throw OverflowError("WideInt: negative value");
  }

  static constexpr WideInt from_raw(raw_type v) noexcept {
    WideInt w;
    w.v_ = v;
    return w;
  }
  static constexpr WideInt max() noexcept { return from_raw(~raw_type{0}); }

  // Parses a decimal string of digits only.
  static WideInt parse(std::string_view text);

  constexpr raw_type raw() const noexcept { return v_; }
  constexpr bool fits_u64() const noexcept { return v_ <= UINT64_MAX; }
  std::uint64_t to_u64() const;
  double to_double() const noexcept { return static_cast<double>(v_); }
  long double to_long_double() const noexcept { return static_cast<long double>(v_); }
  std::string to_string() const;

  friend constexpr bool operator==(WideInt a, WideInt b) noexcept = default;
  friend constexpr std::strong_ordering operator<=>(WideInt a, WideInt b) noexcept {
    return a.v_ <=> b.v_;
  }

  friend constexpr WideInt operator+(WideInt a, WideInt b) {
    raw_type r = a.v_ + b.v_;
    if (r < a.v_) throw OverflowError("WideInt: addition overflow");
    return from_raw(r);
  }
  friend constexpr WideInt operator-(WideInt a, WideInt b) {
    if (b.v_ > a.v_) throw OverflowError("WideInt: subtraction below zero");
    return from_raw(a.v_ - b.v_);
  }
  friend constexpr WideInt operator*(WideInt a, WideInt b) {
    raw_type r = 0;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw OverflowError("WideInt: multiplication overflow");
    return from_raw(r);
  }
  friend constexpr WideInt operator/(WideInt a, WideInt b) {
    if (b.v_ == 0) throw InputError("WideInt: division by zero");
    return from_raw(a.v_ / b.v_);
  }
  friend constexpr WideInt operator%(WideInt a, WideInt b) {
    if (b.v_ == 0) throw InputError("WideInt: division by zero");
    return from_raw(a.v_ % b.v_);
  }

  constexpr WideInt& operator+=(WideInt o) { return *this = *this + o; }
  constexpr WideInt& operator-=(WideInt o) { return *this = *this - o; }
  constexpr WideInt& operator*=(WideInt o) { return *this = *this * o; }
  constexpr WideInt& operator/=(WideInt o) { return *this = *this / o; }

 private:
  raw_type v_ = 0;
};

// Division rounding towards +infinity.
WideInt ceil_div(WideInt num, WideInt den);
WideInt gcd(WideInt a, WideInt b) noexcept;
// base^exp with overflow checking.
WideInt pow(WideInt base, unsigned exp);

std::ostream& operator<<(std::ostream& os, WideInt v);

}  // namespace binrep

template <>
struct std::hash<binrep::WideInt> {
  std::size_t operator()(binrep::WideInt v) const noexcept {
    auto r = v.raw();
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(r) ^
                                      (static_cast<std::uint64_t>(r >> 64) * 0x9e3779b97f4a7c15ULL));
  }
};
