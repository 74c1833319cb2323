#include "cyclo_cli/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "cyclo/error.hpp"
#include "cyclo/report.hpp"

namespace cyclo::cli {
namespace fs = std::filesystem;
namespace {

class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0)
      throw Error(ErrorCode::InvalidArgument, "cannot lock " + path.string());
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json read_store(const fs::path& path, std::vector<std::string>* rejected = nullptr) {
  std::ifstream in(path);
  if (!in) return Json::array();
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    if (rejected) rejected->push_back(path.string() + " is not a JSON array");
    return Json::array();
  }
  return j;
}

CacheKey key_from_json(const Json& j) {
  return CacheKey{j.at("n").get<std::string>(), j.at("grid_mult").get<int>(),
                  j.at("tolerance").get<double>()};
}

Json key_to_json(const CacheKey& k) {
  return Json{{"n", k.n}, {"grid_mult", k.grid_mult}, {"tolerance", k.tolerance}};
}

}  // namespace

fs::path default_cache_dir() {
  if (const char* dir = std::getenv("CYCLO_EXTREMAL_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "cyclo-extremal";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "cyclo-extremal";
  return fs::temp_directory_path() / "cyclo-extremal";
}

CircleCache::CircleCache(fs::path dir) : dir_(std::move(dir)) {}

std::optional<CircleProfile> CircleCache::lookup(const CacheKey& key) const {
  for (const auto& e : entries())
    if (e.key == key && e.tool_version == kToolVersion) return e.value;
  return std::nullopt;
}

std::vector<CacheEntry> CircleCache::entries(std::vector<std::string>* rejected) const {
  std::vector<CacheEntry> out;
  if (!fs::exists(dir_)) return out;
  FileLock lock(dir_ / "circle-cache.lock");
  for (const auto& item : read_store(store_path(), rejected)) {
    try {
      CacheEntry e;
      e.key = key_from_json(item.at("key"));
      e.value = circle_profile_from_json(item.at("value"));
      e.created_at = item.at("created_at").get<std::string>();
      e.tool_version = item.at("tool_version").get<std::string>();
      out.push_back(std::move(e));
    } catch (const std::exception& ex) {
      if (rejected) rejected->push_back(item.dump() + ": " + ex.what());
    }
  }
  return out;
}

void CircleCache::store(const CacheKey& key, const CircleProfile& value) {
  fs::create_directories(dir_);
  FileLock lock(dir_ / "circle-cache.lock");
  Json store = read_store(store_path());
  Json fresh = Json::array();
  for (auto& item : store) {
    const bool same = item.contains("key") && item.contains("tool_version") &&
                      item["tool_version"] == kToolVersion && item["key"] == key_to_json(key);
    if (!same) fresh.push_back(std::move(item));
  }
  fresh.push_back(Json{{"key", key_to_json(key)},
                       {"value", to_json(value)},
                       {"created_at", utc_now()},
                       {"tool_version", std::string(kToolVersion)}});
  const fs::path tmp = dir_ / ("circle-cache.json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << fresh.dump(1) << '\n';
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
  }
  fs::rename(tmp, store_path());
}

}  // namespace cyclo::cli
