#include "binrep/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "binrep/binom.hpp"
#include "binrep/coverage.hpp"
#include "binrep/version.hpp"

namespace binrep::io {
namespace {

Scalar int_or_text(std::optional<WideInt> v, const char* absent) {
  if (v) return *v;
  return std::string(absent);
}

Scalar count_scalar(SummandCount c) {
  if (c == kExceedsCap) return std::string("exceeds");
  return WideInt(static_cast<unsigned>(c));
}

std::string join_xs(const std::vector<WideInt>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += xs[i].to_string();
  }
  return out;
}

std::vector<WideInt> split_xs(const std::string& text) {
  std::vector<WideInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(WideInt::parse(item));
  if (out.empty()) throw InputError("expected a comma-separated list of integers");
  return out;
}

// Typed access to request parameters.
class Params {
 public:
  explicit Params(const ExperimentRequest& r) : r_(r) {}

  const Scalar& raw(std::string_view name) const {
    for (const auto& f : r_.params) {
      if (f.name == name) return f.value;
    }
    throw InputError(std::string("missing parameter '") + std::string(name) + "' for " +
                     std::string(to_string(r_.kind)));
  }
  WideInt wide(std::string_view name) const {
    const auto& v = raw(name);
    if (auto p = std::get_if<WideInt>(&v)) return *p;
    throw InputError(std::string("parameter '") + std::string(name) + "' must be an integer");
  }
  std::uint64_t u64(std::string_view name) const { return wide(name).to_u64(); }
  unsigned small(std::string_view name) const {
    auto v = u64(name);
    if (v > 1'000'000) throw InputError(std::string("parameter '") + std::string(name) + "' is too large");
    return static_cast<unsigned>(v);
  }
  std::string text(std::string_view name) const { return scalar_text(raw(name)); }

 private:
  const ExperimentRequest& r_;
};

TallyOptions tally_options(const RunOptions& o) {
  TallyOptions t;
  t.threads = std::max(1u, o.threads);
  t.memory_budget = o.memory_budget;
  t.work_budget = o.work_budget;
  return t;
}

SurveyRecord run_min_rep(const Params& p, const RunOptions& o) {
  const unsigned k = p.small("k");
  const WideInt n = p.wide("n");
  const unsigned h_max = p.small("h_max");
  const SearchMode mode = parse_search_mode(p.text("mode"));
  const MinRepResult r = min_rep_single(n, k, h_max, mode, o.memory_budget);
  SurveyRecord rec;
  rec.results = {
      {"summands", r.summands ? Scalar(WideInt(*r.summands)) : Scalar(std::string("exceeds"))},
      {"exceeds_h_max", r.exceeds()},
  };
  rec.row_columns = {"index", "value"};
  if (r.witness) {
    for (Index idx : r.witness->indices()) rec.rows.push_back({WideInt(idx), binom(idx, k)});
  }
  return rec;
}

SurveyRecord run_survey_h(const Params& p, const RunOptions& o) {
  SurveyOptions so;
  so.threads = std::max(1u, o.threads);
  so.chunks = std::max<std::size_t>(1, o.chunks);
  so.h_max = p.small("h_max");
  so.witness_limit = p.u64("witness_limit");
  if (auto claim = p.text("claimed_bound"); claim != "none") so.claimed_bound = p.small("claimed_bound");
  so.memory_budget = o.memory_budget;
  const SurveyResult r =
      survey_H(p.small("k"), p.u64("n_min"), p.u64("n_max"), parse_search_mode(p.text("mode")), so);
  SurveyRecord rec;
  rec.results = {
      {"h_star", count_scalar(r.h_star)},
      {"exceeds_h_max", r.h_star == kExceedsCap},
      {"attaining", WideInt(r.attaining)},
      {"exception_count", WideInt(r.exception_count)},
  };
  rec.row_columns = {"role", "n", "s"};
  for (const auto& w : r.witnesses) rec.rows.push_back({std::string("witness"), WideInt(w.n), count_scalar(w.count)});
  for (const auto& e : r.exceptions) rec.rows.push_back({std::string("exception"), WideInt(e.n), count_scalar(e.count)});
  return rec;
}

SurveyRecord run_energy(const Params& p, const RunOptions& o) {
  const Sequence seq(parse_sequence_kind(p.text("sequence")), p.small("k"));
  const unsigned h = p.small("h");
  const Index m = p.u64("index_bound");
  const auto opts = tally_options(o);
  const Tally tally = multiplicity_map(seq, h, m, opts);
  const EnergyReport r = summarize_tally(tally, seq, h, m);
  SurveyRecord rec;
  rec.results = {
      {"admissible", WideInt(r.admissible)},
      {"total_tuples", r.total_tuples},
      {"energy", r.energy},
      {"distinct_sums", r.distinct_sums},
      {"max_multiplicity", r.max_multiplicity},
      {"cs_lower_bound", r.cs_lower_bound},
      {"cs_holds", r.distinct_sums >= r.cs_lower_bound},
  };
  rec.row_columns = {"sum", "multiplicity"};
  const std::size_t top = p.u64("top");
  if (top > 0) {
    for (const auto& e : multiplicity_extremes(seq, h, m, top, opts)) {
      rec.rows.push_back({WideInt(e.sum), WideInt(e.count)});
    }
  }
  return rec;
}

SurveyRecord run_restricted(const Params& p, const RunOptions& o) {
  RestrictedTupleSpec spec;
  spec.seq = Sequence(parse_sequence_kind(p.text("sequence")), p.small("k"));
  spec.h = p.small("h");
  spec.x = p.wide("x");
  spec.c = Fraction::parse(p.text("c"));
  const RestrictedReport r = restricted_distinct_sums(spec, tally_options(o));
  const auto na = std::string("n/a");
  SurveyRecord rec;
  rec.results = {
      {"per_term_cap", r.per_term_cap},
      {"max_index", r.max_index ? Scalar(WideInt(*r.max_index)) : Scalar(std::string("none"))},
      {"admissible", WideInt(r.admissible)},
      {"total_tuples", r.total_tuples},
      {"distinct_sums", r.distinct_sums},
      {"distinct_over_x", r.distinct_sums.to_double() / spec.x.to_double()},
      {"method", r.distinct_sums_method},
      {"trivial_bound", r.trivial_bound},
      {"energy", r.tally ? Scalar(r.tally->energy) : Scalar(na)},
      {"max_multiplicity", r.tally ? Scalar(r.tally->max_multiplicity) : Scalar(na)},
      {"cs_lower_bound", r.tally ? Scalar(r.tally->cs_lower_bound) : Scalar(na)},
      {"floor_bound", r.floor_bound ? Scalar(*r.floor_bound) : Scalar(na)},
      {"cs_holds", r.cs_holds()},
      {"trivial_bound_holds", r.trivial_bound_holds()},
      {"floor_holds", r.floor_holds()},
  };
  return rec;
}

SurveyRecord run_coverage(const Params& p, const RunOptions& o) {
  const CoverageReport r = sumset_coverage_threshold(p.u64("r_max"), parse_search_mode(p.text("mode")), o.memory_budget);
  auto opt = [](std::optional<std::uint64_t> v) -> std::optional<WideInt> {
    if (v) return WideInt(*v);
    return std::nullopt;
  };
  SurveyRecord rec;
  rec.results = {
      {"threshold", int_or_text(opt(r.threshold), "none")},
      {"largest_miss", int_or_text(opt(r.largest_miss), "none")},
      {"misses_in_upper_half", WideInt(r.misses_in_upper_half)},
      {"total_misses", WideInt(r.total_misses)},
  };
  return rec;
}

SurveyRecord run_fit(const Params& p, const RunOptions& o) {
  const Sequence seq(parse_sequence_kind(p.text("sequence")), p.small("k"));
  const auto xs = split_xs(p.text("xs"));
  const ExponentFit fit =
      fit_energy_exponent(seq, p.small("h"), xs, parse_index_convention(p.text("convention")), tally_options(o));
  SurveyRecord rec;
  rec.results = {
      {"alpha_hat", fit.alpha_hat},
      {"intercept", fit.intercept},
      {"residual", fit.residual},
      {"comparison", fit.comparison},
      {"hypothesis_plausible", fit.hypothesis_plausible},
  };
  rec.row_columns = {"x", "index_bound", "energy"};
  for (const auto& ob : fit.observations) rec.rows.push_back({ob.x, WideInt(ob.index_bound), ob.energy});
  return rec;
}

SurveyRecord run_ratio(const Params& p, const RunOptions&) {
  const unsigned k = p.small("k");
  const auto xs = split_xs(p.text("xs"));
  SurveyRecord rec;
  rec.row_columns = {"x", "floor_index", "count_a", "ratio"};
  for (WideInt x : xs) {
    rec.rows.push_back({x, WideInt(floor_index(k, x)), WideInt(count_A(k, x)), asymptotic_ratio(k, x)});
  }
  const auto& last = rec.rows.back();
  rec.results = {{"x_max", last[0]}, {"floor_index_at_max", last[1]}, {"count_a_at_max", last[2]}, {"ratio_at_max", last[3]}};
  return rec;
}

}  // namespace

std::string fingerprint(const ExperimentRequest& request) {
  std::vector<const Field*> sorted;
  for (const auto& f : request.params) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(), [](const Field* a, const Field* b) { return a->name < b->name; });
  std::string out = std::string("binrep/") + kVersion + "|" + std::string(to_string(request.kind));
  for (const Field* f : sorted) out += "|" + f->name + "=" + scalar_text(f->value);
  return out;
}

ExperimentRequest min_rep_request(unsigned k, WideInt n, unsigned h_max, SearchMode mode) {
  return {ExperimentKind::MinRep,
          {{"k", WideInt(k)}, {"n", n}, {"h_max", WideInt(h_max)}, {"mode", std::string(to_string(mode))}}};
}

ExperimentRequest survey_h_request(unsigned k, std::uint64_t n_min, std::uint64_t n_max, SearchMode mode,
                                   unsigned h_max, std::size_t witness_limit, std::optional<unsigned> claimed_bound) {
  return {ExperimentKind::SurveyH,
          {{"k", WideInt(k)},
           {"n_min", WideInt(n_min)},
           {"n_max", WideInt(n_max)},
           {"mode", std::string(to_string(mode))},
           {"h_max", WideInt(h_max)},
           {"witness_limit", WideInt(static_cast<std::uint64_t>(witness_limit))},
           {"claimed_bound", claimed_bound ? Scalar(WideInt(*claimed_bound)) : Scalar(std::string("none"))}}};
}

ExperimentRequest energy_request(SequenceKind seq, unsigned k, unsigned h, Index index_bound, std::size_t top) {
  return {ExperimentKind::Energy,
          {{"sequence", std::string(to_string(seq))},
           {"k", WideInt(k)},
           {"h", WideInt(h)},
           {"index_bound", WideInt(index_bound)},
           {"top", WideInt(static_cast<std::uint64_t>(top))}}};
}

ExperimentRequest restricted_request(SequenceKind seq, unsigned k, unsigned h, WideInt x, Fraction c) {
  return {ExperimentKind::RestrictedSums,
          {{"sequence", std::string(to_string(seq))},
           {"k", WideInt(k)},
           {"h", WideInt(h)},
           {"x", x},
           {"c", c.to_string()}}};
}

ExperimentRequest coverage_request(std::uint64_t r_max, SearchMode mode) {
  return {ExperimentKind::CoverageThreshold, {{"r_max", WideInt(r_max)}, {"mode", std::string(to_string(mode))}}};
}

ExperimentRequest fit_request(SequenceKind seq, unsigned k, unsigned h, const std::vector<WideInt>& xs,
                              IndexConvention convention) {
  return {ExperimentKind::ExponentFit,
          {{"sequence", std::string(to_string(seq))},
           {"k", WideInt(k)},
           {"h", WideInt(h)},
           {"xs", join_xs(xs)},
           {"convention", std::string(to_string(convention))}}};
}

ExperimentRequest ratio_request(unsigned k, const std::vector<WideInt>& xs) {
  return {ExperimentKind::AsymptoticRatio, {{"k", WideInt(k)}, {"xs", join_xs(xs)}}};
}

SurveyRecord run_experiment(const ExperimentRequest& request, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Params p(request);
  SurveyRecord rec;
  switch (request.kind) {
    case ExperimentKind::MinRep: rec = run_min_rep(p, options); break;
    case ExperimentKind::SurveyH: rec = run_survey_h(p, options); break;
    case ExperimentKind::Energy: rec = run_energy(p, options); break;
    case ExperimentKind::RestrictedSums: rec = run_restricted(p, options); break;
    case ExperimentKind::CoverageThreshold: rec = run_coverage(p, options); break;
    case ExperimentKind::ExponentFit: rec = run_fit(p, options); break;
    case ExperimentKind::AsymptoticRatio: rec = run_ratio(p, options); break;
  }
  rec.kind = request.kind;
  rec.params = request.params;
  rec.tool_version = kVersion;
  rec.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

CachedRun run_cached(const ExperimentRequest& request, const RunOptions& options, ResultCache* cache,
                     std::ostream* warnings) {
  const std::string fp = fingerprint(request);
  if (cache) {
    if (auto hit = cache->lookup(fp, warnings)) return {std::move(*hit), true};
  }
  SurveyRecord rec = run_experiment(request, options);
  if (cache) cache->store(fp, rec);
  return {std::move(rec), false};
}

std::string summary_line(const SurveyRecord& r) {
  auto param = [&](std::string_view n) { return r.param(n) ? scalar_text(*r.param(n)) : std::string("?"); };
  auto result = [&](std::string_view n) { return r.result(n) ? scalar_text(*r.result(n)) : std::string("?"); };
  switch (r.kind) {
    case ExperimentKind::MinRep:
      return "s(" + param("n") + ", " + param("k") + ") = " + result("summands") + " [" + param("mode") +
             ", h_max " + param("h_max") + "]";
    case ExperimentKind::SurveyH:
      return "H_emp(" + param("k") + ", [" + param("n_min") + "," + param("n_max") + "]) = " + result("h_star") +
             " [" + param("mode") + "]";
    case ExperimentKind::Energy:
      return "E_" + param("h") + "(k=" + param("k") + ", M=" + param("index_bound") + ") = " + result("energy") +
             ", |S| = " + result("distinct_sums");
    case ExperimentKind::RestrictedSums:
      return "|S|(k=" + param("k") + ", h=" + param("h") + ", X=" + param("x") + ", c=" + param("c") +
             ") = " + result("distinct_sums");
    case ExperimentKind::CoverageThreshold:
      return "coverage threshold(R_max=" + param("r_max") + ", " + param("mode") + ") = " + result("threshold");
    case ExperimentKind::ExponentFit:
      return "alpha_hat(k=" + param("k") + ", h=" + param("h") + ") = " + result("alpha_hat") +
             " (residual " + result("residual") + ", compare " + result("comparison") + ")";
    case ExperimentKind::AsymptoticRatio:
      return "A_" + param("k") + " ratio at X=" + scalar_text(r.rows.back()[0]) + " = " + result("ratio_at_max");
  }
  return {};
}

}  // namespace binrep::io
