#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binrep/cache.hpp"
#include "binrep/energy.hpp"
#include "binrep/min_rep.hpp"
#include "binrep/record.hpp"
#include "binrep/sequence.hpp"

namespace binrep::io {

// Experiment kind plus its parameters in canonical order. Execution knobs
// (threads, chunks, budgets) are not parameters: they never change results.
struct ExperimentRequest {
  ExperimentKind kind = ExperimentKind::MinRep;
  std::vector<Field> params;
};

// Stable text key: tool version, kind and parameters sorted by name.
std::string fingerprint(const ExperimentRequest& request);

struct RunOptions {
  unsigned threads = 1;
  std::size_t chunks = 1;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  std::uint64_t work_budget = kDefaultWorkBudget;
};

ExperimentRequest min_rep_request(unsigned k, WideInt n, unsigned h_max, SearchMode mode);
ExperimentRequest survey_h_request(unsigned k, std::uint64_t n_min, std::uint64_t n_max, SearchMode mode,
                                   unsigned h_max = 8, std::size_t witness_limit = 16,
                                   std::optional<unsigned> claimed_bound = std::nullopt);
ExperimentRequest energy_request(SequenceKind seq, unsigned k, unsigned h, Index index_bound, std::size_t top = 0);
ExperimentRequest restricted_request(SequenceKind seq, unsigned k, unsigned h, WideInt x, Fraction c);
ExperimentRequest coverage_request(std::uint64_t r_max, SearchMode mode);
ExperimentRequest fit_request(SequenceKind seq, unsigned k, unsigned h, const std::vector<WideInt>& xs,
                              IndexConvention convention = IndexConvention::ValueBound);
ExperimentRequest ratio_request(unsigned k, const std::vector<WideInt>& xs);

SurveyRecord run_experiment(const ExperimentRequest& request, const RunOptions& options = {});

struct CachedRun {
  SurveyRecord record;
  bool cache_hit = false;
};

// Consults the cache first when one is given; stores fresh results.
CachedRun run_cached(const ExperimentRequest& request, const RunOptions& options, ResultCache* cache,
                     std::ostream* warnings = nullptr);

// One human-readable line, e.g. "H_emp(2, [1,1000000]) = 3".
std::string summary_line(const SurveyRecord& record);

}  // namespace binrep::io
