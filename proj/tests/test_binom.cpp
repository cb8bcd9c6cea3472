#include <doctest.h>

#include <cmath>
#include <random>

#include "binrep/binom.hpp"
#include "binrep/sequence.hpp"
#include "oracles.hpp"

using namespace binrep;

TEST_CASE("binom: identity, small and Pascal-oracle values") {
  for (unsigned k = 0; k < 40; ++k) CHECK(binom(k, k) == WideInt(1u));
  CHECK(binom(5, 2) == WideInt(10u));
  const auto rows = oracle::pascal(50);
  CHECK(binom(50, 3) == WideInt::from_raw(rows[50][3]));
  CHECK(binom(50, 3) == WideInt(19600u));
}

TEST_CASE("binom: n < k is zero, k = 0 is one") {
  CHECK(binom(2, 3) == WideInt{});
  CHECK(binom(0, 5) == WideInt{});
  CHECK(binom(0, 0) == WideInt(1u));
  CHECK(binom(123456789, 0) == WideInt(1u));
}

TEST_CASE("binom: agrees with the Pascal triangle up to row 120") {
  const auto rows = oracle::pascal(120);
  for (std::size_t n = 0; n <= 120; ++n) {
    for (unsigned k = 0; k <= n; ++k) REQUIRE(binom(n, k).raw() == rows[n][k]);
  }
}

TEST_CASE("binom: overflow is an explicit error, escape hatch is exact") {
  CHECK_THROWS_AS(binom(200, 100), OverflowError);
  CHECK_FALSE(try_binom(200, 100).has_value());
  // C(200,100) = C(199,99) + C(199,100), checked in arbitrary precision.
  CHECK(binom_big(200, 100) == binom_big(199, 99) + binom_big(199, 100));
  CHECK(binom_big(50, 3) == 19600);
  // Largest central coefficient that fits.
  CHECK_NOTHROW(binom(130, 65));
  CHECK(BigInt(binom(130, 65).to_string()) == binom_big(130, 65));
}

TEST_CASE("property: Pascal recurrence for 1 <= k <= n <= 500 where representable") {
  for (Index n = 1; n <= 500; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      auto a = try_binom(n, k);
      auto b = try_binom(n - 1, k);
      auto c = try_binom(n - 1, k - 1);
      if (a && b && c) {
        REQUIRE(*a == *b + *c);
      } else {
        REQUIRE(binom_big(n, k) == binom_big(n - 1, k) + binom_big(n - 1, k - 1));
      }
    }
  }
}

TEST_CASE("property: strict monotonicity in n") {
  for (unsigned k = 1; k <= 6; ++k) {
    WideInt prev = binom(k, k);
    for (Index n = k + 1; n <= 10000; ++n) {
      WideInt cur = binom(n, k);
      REQUIRE(prev < cur);
      prev = cur;
    }
  }
}

TEST_CASE("floor_index and count_A") {
  CHECK(floor_index(2, WideInt(10u)) == 5);
  CHECK(oracle::scan_floor_index(2, 10) == 5);
  CHECK(floor_index(1, WideInt(7u)) == 7);
  CHECK(floor_index(3, WideInt(1u)) == 3);
  CHECK(count_A(2, WideInt(10u)) == 4);
  CHECK(count_A(1, WideInt(7u)) == 7);
  // Enumeration oracle: 1, 4, 10, 20 are all <= 20.
  CHECK(oracle::elements_up_to(3, 20).size() == 4);
  CHECK(count_A(3, WideInt(20u)) == 4);
  CHECK_THROWS_AS(floor_index(0, WideInt(5u)), InputError);
  CHECK_THROWS_AS(floor_index(2, WideInt{}), InputError);
}

TEST_CASE("floor_index: large arguments") {
  CHECK(floor_index(1, WideInt(UINT64_MAX)) == UINT64_MAX);
  CHECK_THROWS_AS(floor_index(1, WideInt(UINT64_MAX) + WideInt(1u)), OverflowError);
  const WideInt big = WideInt::max();
  const Index n = floor_index(4, big);
  CHECK(binom(n, 4) <= big);
  CHECK_FALSE(try_binom(n + 1, 4).has_value());
}

TEST_CASE("property: floor_index brackets X for randomized (k, X)") {
  std::mt19937_64 rng(20261017);
  for (int i = 0; i < 3000; ++i) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 8);
    const WideInt x = WideInt::from_raw((static_cast<unsigned __int128>(rng()) << (rng() % 50)) | 1);
    if (k == 1 && x > WideInt(UINT64_MAX)) {
      REQUIRE_THROWS_AS(floor_index(k, x), OverflowError);
      continue;
    }
    const Index n = floor_index(k, x);
    REQUIRE(binom(n, k) <= x);
    auto next = try_binom(n + 1, k);
    REQUIRE((!next || x < *next));
  }
  for (std::uint64_t x = 1; x <= 3000; ++x) {
    for (unsigned k = 1; k <= 4; ++k) REQUIRE(floor_index(k, WideInt(x)) == oracle::scan_floor_index(k, x));
  }
}

TEST_CASE("asymptotic_ratio") {
  CHECK(asymptotic_ratio(1, WideInt(1000u)) == doctest::Approx(1.0).epsilon(1e-12));
  const double r2 = asymptotic_ratio(2, WideInt(1000000u));
  CHECK(r2 >= 0.99);
  CHECK(r2 <= 1.01);
  const double r3 = asymptotic_ratio(3, WideInt(1000000000u));
  CHECK(r3 >= 0.98);
  CHECK(r3 <= 1.02);
  for (unsigned k = 2; k <= 4; ++k) {
    CHECK(std::abs(asymptotic_ratio(k, WideInt(100000000u)) - 1.0) <
          std::abs(asymptotic_ratio(k, WideInt(10000u)) - 1.0));
  }
}

TEST_CASE("gap equals C(n, k-1)") {
  CHECK(gap(3, 4) == WideInt(6u));
  CHECK(gap(3, 4) == binom(4, 2));
  CHECK(gap(1, 5) == WideInt(1u));
  CHECK(gap(2, 7) == WideInt(7u));
  CHECK(gap(2, 7) == binom(7, 1));
  for (unsigned k = 2; k <= 6; ++k) {
    for (Index n = k; n <= 1000; ++n) REQUIRE(gap(k, n) == binom(n, k - 1));
  }
  CHECK_THROWS_AS(gap(3, 2), InputError);
}

TEST_CASE("sequence_index_of and BinomialSequence") {
  CHECK(sequence_index_of(3, WideInt(20u)) == Index{6});
  CHECK_FALSE(sequence_index_of(3, WideInt(21u)).has_value());
  BinomialSequence tri(2);
  CHECK(tri.value(5) == WideInt(10u));
  CHECK(tri.count(WideInt(10u)) == 4);
  CHECK(tri.gap(7) == WideInt(7u));
  CHECK_THROWS_AS(BinomialSequence(0), InputError);
}

TEST_CASE("pure-power comparison sequence") {
  const Sequence cubes = Sequence::power(3);
  CHECK(cubes.first_index() == 1);
  CHECK(cubes.value(4) == WideInt(64u));
  CHECK(cubes.floor_index(WideInt(63u)) == Index{3});
  CHECK(cubes.floor_index(WideInt(64u)) == Index{4});
  CHECK(cubes.values_up_to_index(4) == std::vector<WideInt>{1u, 8u, 27u, 64u});
  const Sequence tet = Sequence::binomial(3);
  CHECK(tet.values_up_to_index(6) == std::vector<WideInt>{1u, 4u, 10u, 20u});
  CHECK(parse_sequence_kind("power") == SequenceKind::PurePower);
  CHECK_THROWS_AS(parse_sequence_kind("cube"), InputError);
}

TEST_CASE("WideInt: checked arithmetic and parsing") {
  CHECK_THROWS_AS(WideInt::max() + WideInt(1u), OverflowError);
  CHECK_THROWS_AS(WideInt(1u) - WideInt(2u), OverflowError);
  CHECK_THROWS_AS(WideInt::max() * WideInt(2u), OverflowError);
  CHECK_THROWS_AS(WideInt(-1), OverflowError);
  CHECK(WideInt::parse("340282366920938463463374607431768211455") == WideInt::max());
  CHECK_THROWS_AS(WideInt::parse("340282366920938463463374607431768211456"), OverflowError);
  CHECK_THROWS_AS(WideInt::parse("12a"), InputError);
  CHECK(WideInt::max().to_string() == "340282366920938463463374607431768211455");
  CHECK(ceil_div(WideInt(81u), WideInt(15u)) == WideInt(6u));
  CHECK(pow(WideInt(3u), 4) == WideInt(81u));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const WideInt v = WideInt::from_raw((static_cast<unsigned __int128>(rng()) << 64) | rng());
    REQUIRE(WideInt::parse(v.to_string()) == v);
  }
}
