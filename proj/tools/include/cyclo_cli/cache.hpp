#pragma once

// File-backed store of circle profiles, one JSON document per cache
// directory. Readers and writers hold an exclusive lock file; writes go to a
// temporary file that is renamed over the store.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/circle.hpp"

namespace cyclo::cli {

struct CacheKey {
  std::string n;
  int grid_mult = 16;
  double tolerance = 1e-12;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheEntry {
  CacheKey key;
  CircleProfile value;
  std::string created_at;
  std::string tool_version;
};

/// $CYCLO_EXTREMAL_CACHE_DIR, else $XDG_CACHE_HOME/cyclo-extremal, else
/// ~/.cache/cyclo-extremal.
std::filesystem::path default_cache_dir();

class CircleCache {
 public:
  explicit CircleCache(std::filesystem::path dir);

  /// Hit only on an exact key and tool version match.
  std::optional<CircleProfile> lookup(const CacheKey& key) const;
  void store(const CacheKey& key, const CircleProfile& value);

  /// Entries of every tool version. Items that do not parse are described in
  /// `rejected` when it is given.
  std::vector<CacheEntry> entries(std::vector<std::string>* rejected = nullptr) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path store_path() const { return dir_ / "circle-cache.json"; }

 private:
  std::filesystem::path dir_;
};

}  // namespace cyclo::cli
