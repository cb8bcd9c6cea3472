#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binrep/min_rep.hpp"
#include "binrep/sequence.hpp"

namespace binrep {

// r(s): number of ordered h-tuples of admissible indices whose values sum to s.
struct TallyEntry {
  WideInt sum;
  std::uint64_t count;

  friend bool operator==(const TallyEntry&, const TallyEntry&) = default;
};

// Entries sorted by ascending sum, counts strictly positive.
using Tally = std::vector<TallyEntry>;

enum class TallyPath { Auto, Direct, MeetInTheMiddle };

inline constexpr std::uint64_t kDefaultWorkBudget = 400'000'000;

struct TallyOptions {
  unsigned threads = 1;
  TallyPath path = TallyPath::Auto;
  // Upper bound on tuple combinations enumerated (direct: n^h, split: |L| * |R|).
  std::uint64_t work_budget = kDefaultWorkBudget;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

// Tally of ordered h-tuples drawn from `values` (one entry per admissible index).
// Auto uses direct enumeration for h <= 2 and meet-in-the-middle otherwise.
Tally tally_sums(std::span<const WideInt> values, unsigned h, const TallyOptions& options = {});

// Tally over indices [seq.first_index(), index_bound].
Tally multiplicity_map(const Sequence& seq, unsigned h, Index index_bound, const TallyOptions& options = {});

struct EnergyReport {
  SequenceKind kind = SequenceKind::Binomial;
  unsigned order = 0;
  unsigned arity = 0;
  Index index_bound = 0;
  Index admissible = 0;        // number of admissible indices
  WideInt total_tuples;        // sum_s r(s)
  WideInt energy;              // sum_s r(s)^2
  WideInt distinct_sums;       // |S|
  WideInt max_multiplicity;    // max_s r(s)
  WideInt cs_lower_bound;      // ceil(total^2 / energy)

  friend bool operator==(const EnergyReport&, const EnergyReport&) = default;
};

// Aggregates a tally; checks total_tuples == admissible^h.
EnergyReport summarize_tally(const Tally& tally, const Sequence& seq, unsigned h, Index index_bound);

EnergyReport energy_report(const Sequence& seq, unsigned h, Index index_bound, const TallyOptions& options = {});

// How an integer bound X becomes an index bound M.
enum class IndexConvention {
  ValueBound,    // M = max{n : value(n) <= X}
  LiteralIndex,  // M = X
};

std::string_view to_string(IndexConvention c) noexcept;
IndexConvention parse_index_convention(std::string_view text);

// Index bound for X under the given convention; first_index() - 1 when no index qualifies.
Index index_bound_for(const Sequence& seq, WideInt x, IndexConvention convention);

// Exact rational in (0, 1).
struct Fraction {
  std::uint64_t num = 1;
  std::uint64_t den = 2;

  // Accepts "p/q" or a decimal literal such as "0.9".
  static Fraction parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct RestrictedTupleSpec {
  Sequence seq = Sequence::binomial(2);
  unsigned h = 2;
  WideInt x;
  Fraction c;

  // floor(c * x / h), computed exactly.
  WideInt per_term_cap() const;
};

struct RestrictedReport {
  RestrictedTupleSpec spec;
  WideInt per_term_cap;
  std::optional<Index> max_index;    // largest admissible index, if any
  Index admissible = 0;              // M_c(X)
  WideInt total_tuples;              // M_c^h
  WideInt distinct_sums;             // |S|
  std::string distinct_sums_method;  // "tally" or "bitset"
  // Multiplicity statistics; absent when the tally exceeded the work budget
  // and |S| came from the bitset sumset instead.
  std::optional<EnergyReport> tally;
  WideInt trivial_bound;             // M_c^(h-1)
  std::optional<WideInt> floor_bound;  // ceil(total / max r)

  bool trivial_bound_holds() const;
  bool floor_holds() const;
  bool cs_holds() const;
};

// Tuple statistics restricted to indices with value <= floor(c x / h).
RestrictedReport restricted_distinct_sums(const RestrictedTupleSpec& spec, const TallyOptions& options = {});

// Number of distinct exactly-h-term sums via iterated bitset shifts.
std::uint64_t sumset_size_bitset(std::span<const WideInt> values, unsigned h, const TallyOptions& options = {});

struct EnergyObservation {
  WideInt x;
  Index index_bound;
  WideInt energy;

  friend bool operator==(const EnergyObservation&, const EnergyObservation&) = default;
};

struct ExponentFit {
  std::vector<EnergyObservation> observations;
  double alpha_hat = 0;
  double intercept = 0;
  double residual = 0;     // Euclidean norm of the log-log residuals
  double comparison = 0;   // 2h/k - 1
  bool hypothesis_plausible = false;
};

// Least-squares slope of log E_h against log X.
ExponentFit fit_energy_exponent(const Sequence& seq, unsigned h, std::span<const WideInt> xs,
                                IndexConvention convention = IndexConvention::ValueBound,
                                const TallyOptions& options = {});

// The top_t sums by multiplicity, descending; ties broken by smaller sum.
std::vector<TallyEntry> multiplicity_extremes(const Sequence& seq, unsigned h, Index index_bound, std::size_t top_t,
                                              const TallyOptions& options = {});

}  // namespace binrep
