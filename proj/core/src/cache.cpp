#include "binrep/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

namespace binrep::io {
namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::filesystem::path> ResultCache::dir_from_env() {
  const char* v = std::getenv(kCacheDirEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

std::string ResultCache::entry_name(const std::string& fingerprint) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(fingerprint)));
  return std::string(buf) + ".json";
}

std::optional<SurveyRecord> ResultCache::lookup(const std::string& fingerprint, std::ostream* warnings) const {
  const auto path = dir_ / entry_name(fingerprint);
  auto text = read_file(path);
  if (!text) return std::nullopt;
  try {
    auto j = nlohmann::ordered_json::parse(*text);
    if (j.at("fingerprint").get<std::string>() != fingerprint) return std::nullopt;
    auto records = records_from_json(j.at("record").dump());
    if (records.size() != 1) throw InputError("expected one record");
    return records.front();
  } catch (const std::exception& e) {
    if (warnings) *warnings << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& fingerprint, const SurveyRecord& record) {
  std::lock_guard lock(mutex_);
  const std::string name = entry_name(fingerprint);
  nlohmann::ordered_json entry;
  entry["fingerprint"] = fingerprint;
  entry["record"] = nlohmann::ordered_json::parse(to_json(record, {.include_timing = true}));
  write_file_atomic(dir_ / name, entry.dump(2) + "\n");

  CacheManifest m = manifest();
  m.entries[fingerprint] = name;
  nlohmann::ordered_json jm = nlohmann::ordered_json::object();
  for (const auto& [fp, file] : m.entries) jm[fp] = file;
  write_file_atomic(dir_ / "manifest.json", jm.dump(2) + "\n");
}

CacheManifest ResultCache::manifest() const {
  CacheManifest m;
  auto text = read_file(dir_ / "manifest.json");
  if (!text) return m;
  try {
    auto j = nlohmann::ordered_json::parse(*text);
    for (auto it = j.begin(); it != j.end(); ++it) m.entries[it.key()] = it.value().get<std::string>();
  } catch (const std::exception&) {
    // A damaged index is rebuilt on the next store; entry files stay authoritative.
    m.entries.clear();
  }
  return m;
}

}  // namespace binrep::io
