#include "binrep/record.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

namespace binrep::io {
namespace {

using nlohmann::ordered_json;

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kKindNames{{
    {ExperimentKind::MinRep, "min-rep"},
    {ExperimentKind::SurveyH, "survey-H"},
    {ExperimentKind::Energy, "energy"},
    {ExperimentKind::RestrictedSums, "restricted-sums"},
    {ExperimentKind::CoverageThreshold, "coverage-threshold"},
    {ExperimentKind::ExponentFit, "exponent-fit"},
    {ExperimentKind::AsymptoticRatio, "asymptotic-ratio"},
}};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string format_double(double d) { return ordered_json(d).dump(); }

ordered_json scalar_to_json(const Scalar& v) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, WideInt>) {
          return x.to_string();
        } else {
          return x;
        }
      },
      v);
}

Scalar scalar_from_json(const ordered_json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_number_unsigned()) return WideInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return WideInt(j.get<std::int64_t>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (all_digits(s)) return WideInt::parse(s);
    return s;
  }
  throw InputError("record: unsupported JSON value " + j.dump());
}

ordered_json fields_to_json(const std::vector<Field>& fields) {
  ordered_json obj = ordered_json::object();
  for (const auto& f : fields) obj[f.name] = scalar_to_json(f.value);
  return obj;
}

std::vector<Field> fields_from_json(const ordered_json& obj) {
  std::vector<Field> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out.push_back({it.key(), scalar_from_json(it.value())});
  return out;
}

ordered_json record_to_json(const SurveyRecord& r, const ExportOptions& options) {
  ordered_json j;
  j["kind"] = std::string(to_string(r.kind));
  j["tool_version"] = r.tool_version;
  if (options.include_timing && r.duration_seconds) j["duration_seconds"] = *r.duration_seconds;
  j["params"] = fields_to_json(r.params);
  j["results"] = fields_to_json(r.results);
  if (!r.row_columns.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      ordered_json jr = ordered_json::array();
      for (const auto& v : row) jr.push_back(scalar_to_json(v));
      rows.push_back(std::move(jr));
    }
    j["rows"] = {{"columns", r.row_columns}, {"data", std::move(rows)}};
  }
  return j;
}

SurveyRecord record_from_json(const ordered_json& j) {
  SurveyRecord r;
  r.kind = parse_experiment_kind(j.at("kind").get<std::string>());
  r.tool_version = j.at("tool_version").get<std::string>();
  if (j.contains("duration_seconds")) r.duration_seconds = j.at("duration_seconds").get<double>();
  r.params = fields_from_json(j.at("params"));
  r.results = fields_from_json(j.at("results"));
  if (j.contains("rows")) {
    r.row_columns = j.at("rows").at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows").at("data")) {
      Row row;
      for (const auto& v : jr) row.push_back(scalar_from_json(v));
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_header(const SurveyRecord& r, const ExportOptions& options) {
  std::vector<std::string> h{"kind", "tool_version"};
  if (options.include_timing) h.push_back("duration_seconds");
  for (const auto& f : r.params) h.push_back(f.name);
  for (const auto& f : r.results) h.push_back(f.name);
  for (const auto& c : r.row_columns) h.push_back(c);
  return h;
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(cells[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw InputError("unknown experiment kind '" + std::string(text) + "'");
}

std::string scalar_text(const Scalar& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, WideInt>) {
          return x.to_string();
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

const Scalar* SurveyRecord::param(std::string_view name) const {
  for (const auto& f : params) {
    if (f.name == name) return &f.value;
  }
  return nullptr;
}

const Scalar* SurveyRecord::result(std::string_view name) const {
  for (const auto& f : results) {
    if (f.name == name) return &f.value;
  }
  return nullptr;
}

std::string to_json(const SurveyRecord& record, const ExportOptions& options) {
  return record_to_json(record, options).dump(2) + "\n";
}

std::string to_json(std::span<const SurveyRecord> records, const ExportOptions& options) {
  if (records.size() == 1) return to_json(records.front(), options);
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r, options));
  return arr.dump(2) + "\n";
}

std::vector<SurveyRecord> records_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("record: malformed JSON: ") + e.what());
  }
  std::vector<SurveyRecord> out;
  try {
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(record_from_json(item));
    } else {
      out.push_back(record_from_json(j));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("record: missing or mistyped field: ") + e.what());
  }
  return out;
}

std::string to_csv(std::span<const SurveyRecord> records, const ExportOptions& options) {
  if (records.empty()) return {};
  const auto header = csv_header(records.front(), options);
  std::string out;
  append_line(out, header);
  for (const auto& r : records) {
    if (csv_header(r, options) != header) throw InputError("to_csv: records have different column layouts");
    std::vector<std::string> prefix{std::string(to_string(r.kind)), r.tool_version};
    if (options.include_timing) prefix.push_back(r.duration_seconds ? format_double(*r.duration_seconds) : "");
    for (const auto& f : r.params) prefix.push_back(scalar_text(f.value));
    for (const auto& f : r.results) prefix.push_back(scalar_text(f.value));
    if (r.rows.empty()) {
      auto cells = prefix;
      cells.resize(header.size());
      append_line(out, cells);
    }
    for (const auto& row : r.rows) {
      auto cells = prefix;
      for (const auto& v : row) cells.push_back(scalar_text(v));
      cells.resize(header.size());
      append_line(out, cells);
    }
  }
  return out;
}

std::string to_csv(const SurveyRecord& record, const ExportOptions& options) {
  return to_csv(std::span<const SurveyRecord>(&record, 1), options);
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cur;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      cur.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        cur.push_back(std::move(cell));
        lines.push_back(std::move(cur));
      }
      cur.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) throw InputError("csv: unterminated quoted field");
  if (any || !cell.empty()) {
    cur.push_back(std::move(cell));
    lines.push_back(std::move(cur));
  }
  CsvTable t;
  if (lines.empty()) return t;
  t.header = std::move(lines.front());
  t.rows.assign(std::make_move_iterator(lines.begin() + 1), std::make_move_iterator(lines.end()));
  return t;
}

}  // namespace binrep::io
