#include "twistkl/app/cache.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "twistkl/errors.hpp"

namespace twistkl {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Cache::Cache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::string Cache::path_for(const CacheKey& key) const {
  return (fs::path(dir_) / (sha256_hex(key.id()) + ".json")).string();
}

std::optional<nlohmann::json> Cache::load(const CacheKey& key) const {
  if (!enabled_) return std::nullopt;
  const std::string path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json entry;
  try {
    entry = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception&) {
    throw InternalError("cache entry " + path + " is not valid JSON (checksum cannot be verified)");
  }
  if (!entry.is_object() || !entry.contains("key") || !entry.contains("checksum") || !entry.contains("value"))
    throw InternalError("cache entry " + path + " is malformed");
  if (entry["key"].value("version", "") != key.version || entry["key"].value("id", "") != key.id())
    return std::nullopt;
  const auto& value = entry["value"];
  if (sha256_hex(value.dump()) != entry["checksum"].get<std::string>())
    throw InternalError("cache entry " + path + " failed its checksum (" + key.id() + ")");
  return std::optional<nlohmann::json>(std::in_place, value);
}

void Cache::store(const CacheKey& key, const nlohmann::json& value) {
  if (!enabled_) return;
  std::lock_guard<std::mutex> lock(write_mutex_);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create cache directory " + dir_ + ": " + ec.message());
  nlohmann::json entry;
  entry["key"] = {{"module", key.module}, {"kind", key.kind}, {"system", key.system},
                  {"version", key.version}, {"id", key.id()}};
  entry["checksum"] = sha256_hex(value.dump());
  entry["value"] = value;
  const std::string path = path_for(key);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write cache file " + tmp);
    out << entry.dump();
  }
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move cache file into place: " + ec.message());
}

}  // namespace twistkl
