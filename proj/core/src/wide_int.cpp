#include "binrep/wide_int.hpp"

#include <algorithm>
#include <ostream>

namespace binrep {

WideInt WideInt::parse(std::string_view text) {
  if (text.empty()) throw InputError("WideInt: empty integer literal");
  WideInt out;
  for (char c : text) {
    if (c < '0' || c > '9') throw InputError("WideInt: not a decimal integer: '" + std::string(text) + "'");
    try {
      out = out * WideInt(10u) + WideInt(static_cast<unsigned>(c - '0'));
    } catch (const OverflowError&) {
      throw OverflowError("WideInt: '" + std::string(text) + "' exceeds 128 bits");
    }
  }
  return out;
}

std::uint64_t WideInt::to_u64() const {
  if (!fits_u64()) throw OverflowError("WideInt: value " + to_string() + " does not fit in 64 bits");
  return static_cast<std::uint64_t>(v_);
}

std::string WideInt::to_string() const {
  if (v_ == 0) return "0";
  std::string s;
  raw_type v = v_;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

WideInt ceil_div(WideInt num, WideInt den) {
  WideInt q = num / den;
  return (num % den == WideInt{}) ? q : q + WideInt(1u);
}

WideInt gcd(WideInt a, WideInt b) noexcept {
  auto x = a.raw();
  auto y = b.raw();
  while (y != 0) {
    auto t = x % y;
    x = y;
    y = t;
  }
  return WideInt::from_raw(x);
}

WideInt pow(WideInt base, unsigned exp) {
  WideInt result(1u);
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

std::ostream& operator<<(std::ostream& os, WideInt v) { return os << v.to_string(); }

}  // namespace binrep
