// binrep: command-line front end for representation surveys, energy
// diagnostics and decompositions.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "binrep/binom.hpp"
#include "binrep/decompose.hpp"
#include "binrep/experiments.hpp"
#include "binrep/parallel.hpp"
#include "binrep/version.hpp"

using namespace binrep;
using namespace binrep::io;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kOverflow = 2, kResource = 3, kNoRepresentation = 4 };

struct NoRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "json";
  std::string out;
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = default_thread_count();
  std::size_t chunks = 64;
  std::string mode = "repeats";
  bool timing = false;
};

struct Params {
  std::string kind;
  unsigned k = 2;
  unsigned h = 2;
  std::string n;
  std::uint64_t min = 1;
  std::uint64_t max = 0;
  unsigned h_max = 8;
  std::size_t witnesses = 16;
  std::optional<unsigned> claimed_bound;
  std::optional<Index> index_bound;
  std::vector<std::string> xs;
  std::string c = "1/2";
  std::uint64_t r_max = 0;
  std::string sequence = "binomial";
  std::size_t top = 0;
  std::string convention = "value";
};

void add_common(CLI::App* cmd, Common& c, bool with_mode = true,
                std::vector<std::string> formats = {"csv", "json"}) {
  cmd->add_option("--format", c.format, "Export format")->check(CLI::IsMember(formats))->capture_default_str();
  cmd->add_option("--out", c.out, "Write the export to PATH (atomically) instead of stdout");
  cmd->add_option("--cache-dir", c.cache_dir, "Result cache directory")->envname(kCacheDirEnv);
  cmd->add_flag("--no-cache", c.no_cache, "Ignore the result cache");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--chunks", c.chunks, "Work chunks for surveys")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--timing", c.timing, "Include wall-clock duration in exports");
  if (with_mode) {
    cmd->add_option("--mode", c.mode, "repeats|distinct")->check(CLI::IsMember({"repeats", "distinct"}));
  }
}

std::vector<WideInt> parse_list(const std::vector<std::string>& items) {
  std::vector<WideInt> out;
  for (const auto& s : items) out.push_back(WideInt::parse(s));
  return out;
}

std::vector<ExperimentRequest> build_requests(ExperimentKind kind, const Params& p, const Common& c,
                                              bool mode_given) {
  const SearchMode mode = parse_search_mode(c.mode);
  auto need = [](bool ok, const char* what) {
    if (!ok) throw InputError(what);
  };
  switch (kind) {
    case ExperimentKind::MinRep:
      need(!p.n.empty(), "min-rep needs --n");
      return {min_rep_request(p.k, WideInt::parse(p.n), p.h_max, mode)};
    case ExperimentKind::SurveyH:
      need(p.max >= p.min && p.max > 0, "survey-H needs --max >= --min");
      return {survey_h_request(p.k, p.min, p.max, mode, p.h_max, p.witnesses, p.claimed_bound)};
    case ExperimentKind::Energy:
      if (!p.xs.empty()) return build_requests(ExperimentKind::RestrictedSums, p, c, mode_given);
      need(p.index_bound.has_value(), "energy needs --index-bound (or --x with --c for restricted sums)");
      return {energy_request(parse_sequence_kind(p.sequence), p.k, p.h, *p.index_bound, p.top)};
    case ExperimentKind::RestrictedSums:
      need(p.xs.size() == 1, "restricted sums need exactly one --x");
      return {restricted_request(parse_sequence_kind(p.sequence), p.k, p.h, WideInt::parse(p.xs.front()),
                                 Fraction::parse(p.c))};
    case ExperimentKind::CoverageThreshold: {
      const std::uint64_t r_max = p.r_max ? p.r_max : p.max;
      need(r_max > 0, "coverage needs --r-max");
      if (mode_given) return {coverage_request(r_max, mode)};
      return {coverage_request(r_max, SearchMode::RepeatsAllowed), coverage_request(r_max, SearchMode::DistinctOnly)};
    }
    case ExperimentKind::ExponentFit:
      return {fit_request(parse_sequence_kind(p.sequence), p.k, p.h, parse_list(p.xs),
                          parse_index_convention(p.convention))};
    case ExperimentKind::AsymptoticRatio:
      need(!p.xs.empty(), "asymptotic-ratio needs --x");
      return {ratio_request(p.k, parse_list(p.xs))};
  }
  throw InputError("unsupported experiment kind");
}

int run_and_export(const std::vector<ExperimentRequest>& requests, const Common& c) {
  std::optional<ResultCache> cache;
  if (!c.no_cache && !c.cache_dir.empty()) cache.emplace(c.cache_dir);
  const RunOptions options{.threads = c.threads, .chunks = c.chunks};
  std::vector<SurveyRecord> records;
  std::vector<std::string> summaries;
  for (const auto& req : requests) {
    CachedRun run = run_cached(req, options, cache ? &*cache : nullptr, &std::cerr);
    summaries.push_back(summary_line(run.record) + (run.cache_hit ? " (cached)" : ""));
    records.push_back(std::move(run.record));
  }
  const ExportOptions eo{.include_timing = c.timing};
  std::string text;
  if (c.format == "csv") {
    text = to_csv(records, eo);
  } else {
    text = records.size() == 1 ? to_json(records.front(), eo) : to_json(records, eo);
  }
  if (!c.out.empty()) {
    write_file_atomic(c.out, text);
    for (const auto& s : summaries) std::cout << s << "\n";
  } else {
    std::cout << text;
    for (const auto& s : summaries) std::cerr << s << "\n";
  }
  return kOk;
}

std::string join(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s + "]";
}

struct DecomposeArgs {
  unsigned k = 2;
  std::string n;
  std::string algorithm = "greedy";
  std::optional<unsigned> max_terms;
};

int run_decompose(const DecomposeArgs& a, const Common& c) {
  const WideInt n = WideInt::parse(a.n);
  const SearchMode mode = parse_search_mode(c.mode);
  const bool distinct = mode == SearchMode::DistinctOnly;
  std::optional<Representation> rep;
  std::optional<K3Decomposition> k3;
  unsigned cap = 0;
  if (a.algorithm == "greedy") {
    if (a.k == 2) {
      cap = 3;
      rep = decompose_k2(n, mode);
    } else {
      cap = a.max_terms.value_or(8);
      rep = greedy_chain(n, a.k, cap);
      if (rep && distinct && !rep->distinct()) rep.reset();
    }
  } else if (a.algorithm == "exact") {
    cap = a.max_terms.value_or(8);
    auto r = min_rep_single(n, a.k, cap, mode);
    rep = r.witness;
  } else {
    if (a.k != 3) throw InputError("the telescoping algorithm requires --k 3");
    cap = kTelescopingTermCap;
    k3 = decompose_k3_telescoping(n);
    if (k3) rep = k3->representation;
    if (rep && distinct && !rep->distinct()) rep.reset();
  }
  if (!rep) {
    throw NoRepresentation("no representation with ≤ " + std::to_string(cap) + (distinct ? " distinct" : "") +
                           " terms");
  }

  std::vector<std::string> idx;
  std::vector<std::string> val;
  for (Index i : rep->indices()) idx.push_back(std::to_string(i));
  for (WideInt v : rep->values()) val.push_back(v.to_string());

  std::ostringstream os;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["k"] = std::to_string(a.k);
    j["n"] = n.to_string();
    j["mode"] = c.mode;
    j["algorithm"] = a.algorithm;
    j["terms"] = std::to_string(rep->size());
    j["indices"] = idx;
    j["values"] = val;
    if (k3) {
      nlohmann::ordered_json tel = nlohmann::ordered_json::array();
      for (const auto& t : k3->telescoped) {
        tel.push_back({{"sign", t.sign > 0 ? "+" : "-"}, {"index", std::to_string(t.index)}});
      }
      j["telescoped"] = tel;
    }
    os << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "term,index,value\n";
    for (std::size_t i = 0; i < idx.size(); ++i) os << i + 1 << "," << idx[i] << "," << val[i] << "\n";
  } else {
    os << "N = " << n << ", k = " << a.k << ", " << c.mode << ", " << a.algorithm << "\n";
    os << "indices: " << join(idx) << "\n";
    os << "values: " << join(val) << "\n";
    if (k3) {
      os << "telescoped:";
      for (const auto& t : k3->telescoped) os << " " << (t.sign > 0 ? '+' : '-') << "C(" << t.index << ",3)";
      os << "\n";
    }
  }
  if (!c.out.empty()) {
    write_file_atomic(c.out, os.str());
    std::cout << "N = " << n << ": " << rep->size() << " terms, values " << join(val) << "\n";
  } else {
    std::cout << os.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binrep: representations of integers as sums of binomial coefficients"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  Common common;
  Params params;
  DecomposeArgs dec;
  std::optional<ExperimentKind> fixed_kind;

  auto* decompose = app.add_subcommand("decompose", "Write N as a short sum of C(n, k)");
  add_common(decompose, common, true, {"text", "csv", "json"});
  decompose->add_option("--k", dec.k, "Order k")->required()->check(CLI::PositiveNumber);
  decompose->add_option("--n", dec.n, "Target N")->required();
  decompose->add_option("--algorithm", dec.algorithm, "greedy|exact|telescoping")
      ->check(CLI::IsMember({"greedy", "exact", "telescoping"}))
      ->capture_default_str();
  decompose->add_option("--max-terms", dec.max_terms, "Term cap for greedy chains and exact search");

  auto add_k = [&](CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("--k", params.k, "Order k")->check(CLI::PositiveNumber);
    if (required) o->required();
  };
  auto add_xs = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--x", params.xs, help)->delimiter(',');
  };
  auto add_sequence = [&](CLI::App* cmd) {
    cmd->add_option("--sequence", params.sequence, "binomial|power")
        ->check(CLI::IsMember({"binomial", "power"}))
        ->capture_default_str();
  };

  auto* min_rep = app.add_subcommand("min-rep", "Minimal number of summands for one N");
  add_common(min_rep, common);
  add_k(min_rep);
  min_rep->add_option("--n", params.n, "Target N")->required();
  min_rep->add_option("--h-max", params.h_max, "Search depth")->capture_default_str();

  auto* survey = app.add_subcommand("survey", "Run any experiment kind");
  add_common(survey, common);
  survey->add_option("--kind", params.kind, "Experiment kind")
      ->required()
      ->check(CLI::IsMember({"min-rep", "survey-H", "energy", "restricted-sums", "coverage-threshold",
                             "exponent-fit", "asymptotic-ratio"}));
  add_k(survey, false);
  survey->add_option("--h", params.h, "Arity h");
  survey->add_option("--n", params.n, "Target N (min-rep)");
  survey->add_option("--min", params.min, "Range start (survey-H)");
  survey->add_option("--max", params.max, "Range end (survey-H)");
  survey->add_option("--h-max", params.h_max, "Search depth / DP cap");
  survey->add_option("--witnesses", params.witnesses, "Witnesses kept per survey");
  survey->add_option("--claimed-bound", params.claimed_bound, "Report targets needing more summands");
  survey->add_option("--index-bound", params.index_bound, "Index bound M (energy)");
  add_xs(survey, "Bound X, or a comma list of bounds");
  survey->add_option("--c", params.c, "Per-term fraction c in (0,1)");
  survey->add_option("--r-max", params.r_max, "Range end (coverage-threshold)");
  add_sequence(survey);
  survey->add_option("--top", params.top, "Largest multiplicities to list (energy)");
  survey->add_option("--convention", params.convention, "value|index (exponent-fit)");

  auto* energy = app.add_subcommand("energy", "Additive energy, or restricted distinct sums with --x/--c");
  add_common(energy, common, false);
  add_k(energy);
  energy->add_option("--h", params.h, "Arity h")->capture_default_str();
  energy->add_option("--index-bound", params.index_bound, "Index bound M");
  energy->add_option("--x", params.xs, "Bound X for restricted sums");
  energy->add_option("--c", params.c, "Per-term fraction c in (0,1)")->capture_default_str();
  energy->add_option("--top", params.top, "Largest multiplicities to list");
  add_sequence(energy);

  auto* coverage = app.add_subcommand("coverage", "Coverage threshold of sums of two triangular numbers");
  add_common(coverage, common);
  coverage->add_option("--r-max", params.r_max, "Range end")->required();

  auto* fit = app.add_subcommand("fit", "Least-squares energy exponent over an X ladder");
  add_common(fit, common, false);
  add_k(fit);
  fit->add_option("--h", params.h, "Arity h")->capture_default_str();
  fit->add_option("--x", params.xs, "Comma list of increasing bounds")->delimiter(',')->required();
  fit->add_option("--convention", params.convention, "value|index")
      ->check(CLI::IsMember({"value", "index"}))
      ->capture_default_str();
  add_sequence(fit);

  auto* table = app.add_subcommand("table", "A_k(X) against the counting law");
  add_common(table, common, false);
  add_k(table);
  table->add_option("--x", params.xs, "Comma list of bounds (default 10,100,...,10^12)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (decompose->parsed()) {
      if (common.format == "json" && decompose->count("--format") == 0) common.format = "text";
      return run_decompose(dec, common);
    }
    bool mode_given = true;
    if (min_rep->parsed()) fixed_kind = ExperimentKind::MinRep;
    if (energy->parsed()) fixed_kind = ExperimentKind::Energy;
    if (coverage->parsed()) {
      fixed_kind = ExperimentKind::CoverageThreshold;
      mode_given = coverage->count("--mode") > 0;
    }
    if (fit->parsed()) fixed_kind = ExperimentKind::ExponentFit;
    if (table->parsed()) {
      fixed_kind = ExperimentKind::AsymptoticRatio;
      if (params.xs.empty()) {
        std::string x = "1";
        for (int i = 1; i <= 12; ++i) params.xs.push_back(x += "0");
      }
    }
    if (survey->parsed()) {
      fixed_kind = parse_experiment_kind(params.kind);
      mode_given = survey->count("--mode") > 0;
      if (fixed_kind == ExperimentKind::AsymptoticRatio || fixed_kind == ExperimentKind::ExponentFit) {
        if (params.xs.empty()) throw InputError(params.kind + " needs --x");
      }
    }
    return run_and_export(build_requests(*fixed_kind, params, common, mode_given), common);
  } catch (const NoRepresentation& e) {
    std::cerr << "binrep: " << e.what() << "\n";
    return kNoRepresentation;
  } catch (const OverflowError& e) {
    std::cerr << "binrep: arithmetic overflow: " << e.what() << "\n";
    return kOverflow;
  } catch (const ResourceError& e) {
    std::cerr << "binrep: resource budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const InputError& e) {
    std::cerr << "binrep: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "binrep: error: " << e.what() << "\n";
    return kUsage;
  }
}
