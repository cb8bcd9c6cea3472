#include <doctest.h>

#include <cmath>
#include <random>

#include "binrep/energy.hpp"
#include "oracles.hpp"

using namespace binrep;

namespace {

Tally from_map(const std::map<unsigned __int128, std::uint64_t>& m) {
  Tally t;
  for (auto [s, c] : m) t.push_back({WideInt::from_raw(s), c});
  return t;
}

}  // namespace

TEST_CASE("multiplicity_map: hand-tallied examples") {
  const auto t = multiplicity_map(Sequence::binomial(2), 2, 4);
  CHECK(t == Tally{{2, 1}, {4, 2}, {6, 1}, {7, 2}, {9, 2}, {12, 1}});
  const auto id = multiplicity_map(Sequence::binomial(1), 1, 5);
  CHECK(id == Tally{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
  const auto cubic = multiplicity_map(Sequence::binomial(3), 2, 5);
  std::uint64_t total = 0;
  for (const auto& e : cubic) total += e.count;
  CHECK(total == 9);
  CHECK(cubic == from_map(oracle::tally_by_map({1, 4, 10}, 2)));
}

TEST_CASE("energy_report: hand-computed example") {
  const auto r = energy_report(Sequence::binomial(2), 2, 4);
  CHECK(r.total_tuples == WideInt(9u));
  CHECK(r.energy == WideInt(15u));
  CHECK(r.distinct_sums == WideInt(6u));
  CHECK(r.max_multiplicity == WideInt(2u));
  CHECK(r.cs_lower_bound == WideInt(6u));
  const auto diag = energy_report(Sequence::binomial(1), 1, 10);
  CHECK(diag.energy == WideInt(10u));
  CHECK(diag.total_tuples == WideInt(10u));
}

TEST_CASE("energy_report: meet-in-the-middle equals direct triple enumeration (k=2, h=3, M=30)") {
  TallyOptions direct{.path = TallyPath::Direct};
  TallyOptions mitm{.path = TallyPath::MeetInTheMiddle};
  const auto seq = Sequence::binomial(2);
  const auto a = multiplicity_map(seq, 3, 30, direct);
  const auto b = multiplicity_map(seq, 3, 30, mitm);
  CHECK(a == b);
  const auto values = seq.values_up_to_index(30);
  CHECK(a == from_map(oracle::tally_by_map(oracle::raw_values(values), 3)));
  const auto r = summarize_tally(b, seq, 3, 30);
  CHECK(r.total_tuples == WideInt(29u * 29u * 29u));
  CHECK(r.energy == WideInt(oracle::energy_by_sorted_runs(oracle::raw_values(values), 3)));
  // Regression constant for this instance.
  CHECK(r.energy == WideInt(850409u));
}

TEST_CASE("property: dual paths agree and moments match the 2h-tuple definition") {
  for (SequenceKind kind : {SequenceKind::Binomial, SequenceKind::PurePower}) {
    for (unsigned k = 1; k <= 4; ++k) {
      const Sequence seq(kind, k);
      for (unsigned h = 1; h <= 4; ++h) {
        for (Index count = 1; count <= 9; count += 2) {
          const Index m = seq.first_index() + count - 1;
          const auto values = seq.values_up_to_index(m);
          const auto direct = multiplicity_map(seq, h, m, {.path = TallyPath::Direct});
          const auto mitm = multiplicity_map(seq, h, m, {.threads = 3, .path = TallyPath::MeetInTheMiddle});
          REQUIRE(direct == mitm);
          const auto r = summarize_tally(mitm, seq, h, m);
          REQUIRE(r.total_tuples == pow(WideInt(count), h));
          if (std::pow(double(count), 2.0 * h) <= 2e7) {
            REQUIRE(r.energy == WideInt(oracle::energy_by_2h_tuples(oracle::raw_values(values), h)));
          }
          REQUIRE(r.energy >= r.total_tuples);
          REQUIRE(r.distinct_sums >= r.cs_lower_bound);
          REQUIRE(r.distinct_sums * r.max_multiplicity >= r.total_tuples);
        }
      }
    }
  }
}

TEST_CASE("tally: thread count does not change results") {
  const auto seq = Sequence::binomial(3);
  const auto ref = multiplicity_map(seq, 4, 40, {.threads = 1});
  for (unsigned t : {2u, 5u, 8u}) REQUIRE(multiplicity_map(seq, 4, 40, {.threads = t}) == ref);
  // Sparse combine path: wide value range relative to the tuple count.
  const auto big = Sequence::power(6);
  const auto sparse_ref = multiplicity_map(big, 3, 30, {.threads = 1});
  for (unsigned t : {2u, 7u}) REQUIRE(multiplicity_map(big, 3, 30, {.threads = t}) == sparse_ref);
  REQUIRE(sparse_ref == from_map(oracle::tally_by_map(oracle::raw_values(big.values_up_to_index(30)), 3)));
}

TEST_CASE("tally: sums beyond 64 bits use the wide path") {
  std::vector<WideInt> values;
  for (Index n = 200000; n <= 200012; ++n) values.push_back(binom(n, 4));
  REQUIRE_FALSE((values.back() * WideInt(3u)).fits_u64());
  Tally expected;
  for (auto [s, c] : oracle::tally_by_map(oracle::raw_values(values), 3)) expected.push_back({WideInt::from_raw(s), c});
  CHECK(tally_sums(values, 3, {.threads = 3, .path = TallyPath::Direct}) == expected);
  CHECK(tally_sums(values, 3, {.threads = 3, .path = TallyPath::MeetInTheMiddle}) == expected);
  const std::vector<WideInt> huge{WideInt::max() / WideInt(2u), WideInt::max() / WideInt(2u) + WideInt(1u)};
  CHECK_THROWS_AS(tally_sums(huge, 3), OverflowError);
}

TEST_CASE("tally: budget and argument errors") {
  CHECK_THROWS_AS(multiplicity_map(Sequence::binomial(2), 4, 1000, {.work_budget = 1000}), ResourceError);
  CHECK_THROWS_AS(multiplicity_map(Sequence::binomial(2), 2, 1), InputError);
  CHECK_THROWS_AS(tally_sums(std::vector<WideInt>{1u, 2u}, 0), InputError);
}

TEST_CASE("multiplicity_extremes") {
  const auto top = multiplicity_extremes(Sequence::binomial(2), 2, 4, 1);
  REQUIRE(top.size() == 1);
  CHECK(top.front() == TallyEntry{4, 2});
  const auto lin = multiplicity_extremes(Sequence::binomial(1), 2, 10, 1);
  CHECK(lin.front() == TallyEntry{11, 10});
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& e : multiplicity_extremes(Sequence::binomial(k), 1, 30, 100)) REQUIRE(e.count == 1);
  }
  // Sums of three cubes: multiplicities grow with the index bound.
  const auto cubes_small = multiplicity_extremes(Sequence::power(3), 3, 20, 1);
  const auto cubes_large = multiplicity_extremes(Sequence::power(3), 3, 200, 1);
  CHECK(cubes_large.front().count > cubes_small.front().count);
}

TEST_CASE("Fraction parsing") {
  CHECK(Fraction::parse("1/2") == Fraction{1, 2});
  CHECK(Fraction::parse("2/4") == Fraction{1, 2});
  CHECK(Fraction::parse("0.9") == Fraction{9, 10});
  CHECK(Fraction::parse(".25") == Fraction{1, 4});
  CHECK_THROWS_AS(Fraction::parse("1"), InputError);
  CHECK_THROWS_AS(Fraction::parse("3/2"), InputError);
  CHECK_THROWS_AS(Fraction::parse("0/5"), InputError);
}

TEST_CASE("restricted_distinct_sums: examples") {
  RestrictedTupleSpec spec{Sequence::binomial(2), 2, WideInt(100u), {1, 2}};
  CHECK(spec.per_term_cap() == WideInt(25u));
  const auto r = restricted_distinct_sums(spec);
  CHECK(r.admissible == 6);
  CHECK(r.max_index == Index{7});
  CHECK(r.distinct_sums >= WideInt(6u));
  CHECK(r.total_tuples == WideInt(36u));
  REQUIRE(r.tally.has_value());
  const auto tally = multiplicity_map(Sequence::binomial(2), 2, 7);
  CHECK(tally.back().sum <= WideInt(50u));

  RestrictedTupleSpec cubic{Sequence::binomial(3), 3, WideInt(1000000u), Fraction::parse("0.9")};
  const auto rc = restricted_distinct_sums(cubic);
  REQUIRE(rc.tally.has_value());
  CHECK(rc.distinct_sums >= ceil_div(rc.total_tuples, rc.tally->max_multiplicity));
  CHECK(rc.tally->max_multiplicity <= pow(WideInt(rc.admissible), 2));
  CHECK(rc.cs_holds());
  CHECK(rc.trivial_bound_holds());
  CHECK(rc.floor_holds());
}

TEST_CASE("restricted_distinct_sums: no admissible index") {
  RestrictedTupleSpec spec{Sequence::binomial(3), 4, WideInt(5u), {1, 2}};
  const auto r = restricted_distinct_sums(spec);
  CHECK(r.admissible == 0);
  CHECK(r.distinct_sums == WideInt{});
  CHECK(r.total_tuples == WideInt{});
}

TEST_CASE("bitset sumset matches the tally count") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const unsigned k = 1 + rng() % 3;
    const unsigned h = 1 + rng() % 4;
    const Index m = k + rng() % 25;
    const auto values = Sequence::binomial(k).values_up_to_index(m);
    const auto tally = tally_sums(values, h);
    REQUIRE(sumset_size_bitset(values, h, {.threads = 1 + static_cast<unsigned>(rng() % 4)}) == tally.size());
  }
  // Restricted reports fall back to the bitset when the tally is over budget.
  RestrictedTupleSpec spec{Sequence::binomial(2), 3, WideInt(200000u), {1, 2}};
  const auto full = restricted_distinct_sums(spec);
  const auto bits = restricted_distinct_sums(spec, {.work_budget = 1000});
  CHECK(full.distinct_sums_method == "tally");
  CHECK(bits.distinct_sums_method == "bitset");
  CHECK(full.distinct_sums == bits.distinct_sums);
  CHECK_FALSE(bits.tally.has_value());
}

TEST_CASE("fit_energy_exponent") {
  const std::vector<WideInt> xs{WideInt(10u), WideInt(100u), WideInt(1000u)};
  const auto fit = fit_energy_exponent(Sequence::binomial(1), 1, xs);
  CHECK(fit.alpha_hat == doctest::Approx(1.0).epsilon(0.01));
  CHECK(fit.residual < 1e-9);
  CHECK(fit.comparison == doctest::Approx(1.0));
  CHECK(fit.observations[2].energy == WideInt(1000u));

  const std::vector<WideInt> ladder{WideInt(1000u), WideInt(10000u), WideInt(100000u), WideInt(1000000u)};
  const auto fit22 = fit_energy_exponent(Sequence::binomial(2), 2, ladder);
  CHECK(fit22.comparison == doctest::Approx(1.0));
  CHECK(std::isfinite(fit22.alpha_hat));
  CHECK(fit22.residual >= 0.0);
  CHECK(fit22.hypothesis_plausible == (fit22.alpha_hat < 1.0));

  const std::vector<WideInt> cubic{WideInt(1000u), WideInt(8000u), WideInt(64000u)};
  const auto fit33 = fit_energy_exponent(Sequence::binomial(3), 3, cubic);
  CHECK(fit33.observations.size() == 3);
  CHECK(std::isfinite(fit33.residual));

  CHECK_THROWS_AS(fit_energy_exponent(Sequence::binomial(1), 1, std::vector<WideInt>{WideInt(10u), WideInt(20u)}),
                  InputError);
  CHECK_THROWS_AS(
      fit_energy_exponent(Sequence::binomial(1), 1, std::vector<WideInt>{WideInt(10u), WideInt(5u), WideInt(20u)}),
      InputError);
}

TEST_CASE("index conventions") {
  const auto seq = Sequence::binomial(2);
  CHECK(index_bound_for(seq, WideInt(10u), IndexConvention::ValueBound) == 5);
  CHECK(index_bound_for(seq, WideInt(10u), IndexConvention::LiteralIndex) == 10);
  CHECK(parse_index_convention("index") == IndexConvention::LiteralIndex);
}
