#pragma once

// Persistent table cache. One JSON file per key, named by the SHA-256 of the
// key; the stored value carries a SHA-256 checksum of its canonical dump.

#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace twistkl {

/// Bumped whenever an exported format or a table algorithm changes.
inline constexpr const char* kCodeVersion = "twistkl-0.1.0/tables-1";

std::string sha256_hex(std::string_view data);

struct CacheKey {
  std::string module, kind, system;
  std::string version = kCodeVersion;
  std::string id() const { return module + "/" + kind + "/" + system + "@" + version; }
};

class Cache {
 public:
  /// A disabled cache never hits and never writes.
  Cache(std::string dir, bool enabled);

  bool enabled() const { return enabled_; }
  const std::string& dir() const { return dir_; }

  /// nullopt on a miss or a version mismatch. A file that fails to parse or
  /// whose checksum does not match is an InternalError.
  std::optional<nlohmann::json> load(const CacheKey& key) const;
  /// Atomic write (temp file, then rename); safe to call from several threads.
  void store(const CacheKey& key, const nlohmann::json& value);
  std::string path_for(const CacheKey& key) const;

 private:
  std::string dir_;
  bool enabled_;
  std::mutex write_mutex_;
};

}  // namespace twistkl
