#pragma once

// Run configuration: a key = value file (TOML subset) plus command-line
// overrides. Keys: group, sigma, delta, out, cache, jobs and the oracle block
// oracle_n, oracle_q, oracle_twist (also accepted as n, q, twist inside an
// [oracle] section).

#include <memory>
#include <string>

#include "twistkl/weyl.hpp"

namespace twistkl {

inline constexpr const char* kCacheEnvVar = "TWISTKL_CACHE_DIR";

struct OracleConfig {
  int n = 0;  // 0 disables the flag oracle
  int q = 0;
  bool twisted = false;
  bool enabled() const { return n > 0; }
};

struct RunConfig {
  std::string group = "A2";
  std::string sigma = "id";
  std::string delta = "id";
  OracleConfig oracle;
  std::string out = "twistkl-out";
  std::string cache;  // empty: $TWISTKL_CACHE_DIR, then <out>/cache
  bool use_cache = true;
  unsigned jobs = 1;
};

/// Reads `path` over the defaults. Unknown keys and malformed values are
/// ConfigErrors.
RunConfig read_config_file(const std::string& path);

/// The cache directory after the environment override.
std::string resolve_cache_dir(const RunConfig& c);

/// A validated configuration: the Weyl group W, the system W^sigma (or W), sigma
/// and delta on W, and delta restricted to the system's generators.
struct Setup {
  RunConfig config;
  std::shared_ptr<const WeightedSystem> weyl;
  std::shared_ptr<const WeightedSystem> system;
  DiagramAutomorphism sigma, delta, system_delta;
};

/// Parses the group, sigma and delta; checks sigma delta = delta sigma and that
/// an oracle block names A_{n-1} with sigma the flip exactly when twisted.
/// Throws ConfigError.
Setup validate(const RunConfig& c);

}  // namespace twistkl
