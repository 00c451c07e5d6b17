#include "twistkl/app/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>

#include "CLI11.hpp"
#include "twistkl/errors.hpp"

namespace twistkl {

namespace {

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError("config key '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

DiagramAutomorphism parse_automorphism(const std::string& text, const CoxeterDescriptor& d) {
  const int r = d.rank;
  if (text != "flip") return DiagramAutomorphism::parse(text, r);
  std::vector<int> p(r);
  for (int i = 0; i < r; ++i) p[i] = i;
  if (d.type == 'A') {
    for (int i = 0; i < r; ++i) p[i] = r - 1 - i;
  } else if (d.type == 'D' && r >= 4) {
    std::swap(p[r - 2], p[r - 1]);
  } else if (d.type == 'E' && r == 6) {
    p = {5, 1, 4, 3, 2, 0};
  } else {
    throw ConfigError("'flip' is not defined for " + d.label());
  }
  return DiagramAutomorphism(std::move(p));
}

}  // namespace

RunConfig read_config_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file '" + path + "' not found");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    throw ConfigError("cannot parse config '" + path + "': " + e.what());
  }
  RunConfig c;
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;  // section markers
    std::string key = it.fullname();
    if (key.rfind("oracle.", 0) == 0) key = "oracle_" + key.substr(7);
    if (it.inputs.size() != 1) throw ConfigError("config key '" + key + "' expects one value");
    const std::string& v = it.inputs.front();
    if (key == "group") c.group = v;
    else if (key == "sigma") c.sigma = v;
    else if (key == "delta") c.delta = v;
    else if (key == "out") c.out = v;
    else if (key == "cache") c.cache = v;
    else if (key == "use_cache") c.use_cache = to_bool(key, v);
    else if (key == "jobs") {
      const int j = to_int(key, v);
      if (j < 1) throw ConfigError("jobs must be positive");
      c.jobs = static_cast<unsigned>(j);
    } else if (key == "oracle_n") c.oracle.n = to_int(key, v);
    else if (key == "oracle_q") c.oracle.q = to_int(key, v);
    else if (key == "oracle_twist") c.oracle.twisted = to_bool(key, v);
    else throw ConfigError("unknown config key '" + key + "' in " + path);
  }
  return c;
}

std::string resolve_cache_dir(const RunConfig& c) {
  if (!c.cache.empty()) return c.cache;
  if (const char* env = std::getenv(kCacheEnvVar); env != nullptr && *env != '\0') return env;
  return (std::filesystem::path(c.out) / "cache").string();
}

Setup validate(const RunConfig& c) {
  if (c.jobs < 1) throw ConfigError("jobs must be positive");
  Setup s;
  s.config = c;
  const auto d = CoxeterDescriptor::parse(c.group);
  s.weyl = WeightedSystem::build_weyl(d);
  const auto m = s.weyl->group().coxeter_matrix();
  s.sigma = parse_automorphism(c.sigma, d);
  s.sigma.validate(m);
  s.delta = parse_automorphism(c.delta, d);
  s.delta.validate(m);
  if (s.sigma.compose(s.delta) != s.delta.compose(s.sigma))
    throw ConfigError("sigma " + s.sigma.str() + " and delta " + s.delta.str() + " do not commute");

  if (c.oracle.enabled()) {
    const int n = c.oracle.n;
    if (d.type != 'A' || d.rank != n - 1)
      throw ConfigError("oracle n = " + std::to_string(n) + " needs group A" + std::to_string(n - 1) +
                        ", config has " + d.label());
    std::vector<int> flip(d.rank);
    for (int i = 0; i < d.rank; ++i) flip[i] = d.rank - 1 - i;
    const bool is_flip = s.sigma == DiagramAutomorphism(flip) && !s.sigma.is_identity();
    if (c.oracle.twisted && !is_flip) throw ConfigError("twisted oracle needs sigma = flip, config has " + s.sigma.str());
    if (!c.oracle.twisted && !s.sigma.is_identity())
      throw ConfigError("untwisted oracle needs sigma = id, config has " + s.sigma.str());
    if (c.oracle.twisted && n == 2) throw ConfigError("twisted oracle needs n >= 3");
  } else if (c.oracle.q != 0 || c.oracle.twisted) {
    throw ConfigError("oracle_q or oracle_twist given without oracle_n");
  }

  s.system = s.sigma.is_identity() ? s.weyl : fixed_subgroup(s.weyl, s.sigma);
  s.system_delta = restrict_automorphism(*s.system, s.delta);
  return s;
}

}  // namespace twistkl
