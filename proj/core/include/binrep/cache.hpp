#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "binrep/record.hpp"

namespace binrep::io {

inline constexpr const char* kCacheDirEnv = "BINREP_CACHE_DIR";

// Writes `content` to a temporary file in the same directory, then renames it
// over `path`, so readers see either the old or the new file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Fingerprint -> entry file name.
struct CacheManifest {
  std::map<std::string, std::string> entries;
};

// Flat-file result cache. Each entry file holds its fingerprint and the full
// record; manifest.json indexes them. Corrupt entries read as misses.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  // Directory from BINREP_CACHE_DIR, if set and non-empty.
  static std::optional<std::filesystem::path> dir_from_env();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::optional<SurveyRecord> lookup(const std::string& fingerprint, std::ostream* warnings = nullptr) const;
  void store(const std::string& fingerprint, const SurveyRecord& record);

  CacheManifest manifest() const;
  static std::string entry_name(const std::string& fingerprint);

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace binrep::io
