#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "binrep/wide_int.hpp"

namespace binrep::io {

enum class ExperimentKind {
  MinRep,
  SurveyH,
  Energy,
  RestrictedSums,
  CoverageThreshold,
  ExponentFit,
  AsymptoticRatio,
};

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view text);

// Integers serialize as decimal strings, reals as JSON numbers.
using Scalar = std::variant<WideInt, double, bool, std::string>;

std::string scalar_text(const Scalar& v);

struct Field {
  std::string name;
  Scalar value;

  friend bool operator==(const Field&, const Field&) = default;
};

using Row = std::vector<Scalar>;

struct SurveyRecord {
  ExperimentKind kind = ExperimentKind::MinRep;
  std::vector<Field> params;
  std::vector<Field> results;
  std::vector<std::string> row_columns;
  std::vector<Row> rows;
  std::string tool_version;
  std::optional<double> duration_seconds;

  const Scalar* param(std::string_view name) const;
  const Scalar* result(std::string_view name) const;

  friend bool operator==(const SurveyRecord&, const SurveyRecord&) = default;
};

struct ExportOptions {
  // Wall-clock time differs between runs, so it is left out unless asked for.
  bool include_timing = false;
};

// One JSON object, or an array when given several records. Output ends with a newline.
std::string to_json(const SurveyRecord& record, const ExportOptions& options = {});
std::string to_json(std::span<const SurveyRecord> records, const ExportOptions& options = {});
// Accepts a single object or an array of objects.
std::vector<SurveyRecord> records_from_json(std::string_view text);

// CSV with a header row. Columns: kind, tool_version, [duration_seconds],
// parameters, scalar results, then row columns; one line per row (or one line
// when there are no rows). All records must share the same column layout.
std::string to_csv(std::span<const SurveyRecord> records, const ExportOptions& options = {});
std::string to_csv(const SurveyRecord& record, const ExportOptions& options = {});

// Minimal RFC-4180 reader: header plus data lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};
CsvTable parse_csv(std::string_view text);

}  // namespace binrep::io
