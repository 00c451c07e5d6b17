#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "twistkl/app/exports.hpp"
#include "twistkl/app/verify.hpp"
#include "twistkl/errors.hpp"

using namespace twistkl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::path(::testing::TempDir()) / ("twistkl_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST(Config, ReadsFlatAndSectionKeys) {
  const auto d = fresh_dir("config");
  write(d / "a.toml", "group = \"A3\"\nsigma = \"flip\"\njobs = 2\n[oracle]\nn = 4\nq = 2\ntwist = true\n");
  const auto c = read_config_file((d / "a.toml").string());
  EXPECT_EQ(c.group, "A3");
  EXPECT_EQ(c.sigma, "flip");
  EXPECT_EQ(c.jobs, 2u);
  EXPECT_EQ(c.oracle.n, 4);
  EXPECT_EQ(c.oracle.q, 2);
  EXPECT_TRUE(c.oracle.twisted);
  EXPECT_NO_THROW(validate(c));

  write(d / "b.toml", "group = A2\noracle_n = 3\noracle_q = 3\n");
  const auto b = read_config_file((d / "b.toml").string());
  EXPECT_EQ(b.oracle.n, 3);
  EXPECT_FALSE(b.oracle.twisted);
}

TEST(Config, Rejections) {
  const auto d = fresh_dir("config_bad");
  write(d / "unknown.toml", "group = A2\ncolour = blue\n");
  EXPECT_THROW(read_config_file((d / "unknown.toml").string()), ConfigError);
  write(d / "jobs.toml", "jobs = many\n");
  EXPECT_THROW(read_config_file((d / "jobs.toml").string()), ConfigError);
  EXPECT_THROW(read_config_file((d / "missing.toml").string()), ConfigError);

  RunConfig c;
  c.group = "A3";
  c.sigma = "flip";
  c.oracle = {4, 2, false};
  EXPECT_THROW(validate(c), ConfigError);  // sigma must be id when untwisted
  c.sigma = "id";
  c.oracle.twisted = true;
  EXPECT_THROW(validate(c), ConfigError);  // and the flip when twisted
  c.group = "B3";
  c.oracle = {4, 2, false};
  EXPECT_THROW(validate(c), ConfigError);  // oracle needs type A
  c.group = "G2";
  c.oracle = {};
  c.sigma = "flip";
  EXPECT_THROW(validate(c), ConfigError);
  c.sigma = "1:3,3:1";
  EXPECT_THROW(validate(c), ConfigError);  // index out of range for G2
}

TEST(Config, CacheDirectoryPrecedence) {
  RunConfig c;
  c.out = "outdir";
  ::unsetenv(kCacheEnvVar);
  EXPECT_EQ(resolve_cache_dir(c), (fs::path("outdir") / "cache").string());
  ::setenv(kCacheEnvVar, "/tmp/from_env", 1);
  EXPECT_EQ(resolve_cache_dir(c), "/tmp/from_env");
  c.cache = "explicit";
  EXPECT_EQ(resolve_cache_dir(c), "explicit");
  ::unsetenv(kCacheEnvVar);
}

TEST(Cache, RoundTripVersionAndCorruption) {
  const auto d = fresh_dir("cache");
  Cache cache(d.string(), true);
  const CacheKey key{"hecke", "P", "A2 sigma=id"};
  EXPECT_FALSE(cache.load(key).has_value());
  const nlohmann::json value = {{"entries", {1, 2, 3}}};
  cache.store(key, value);
  EXPECT_EQ(cache.load(key), value);

  CacheKey other = key;
  other.version = "older";
  EXPECT_FALSE(cache.load(other).has_value());

  auto text = slurp(cache.path_for(key));
  text.replace(text.find("[1,2,3]"), 7, "[1,2,4]");
  write(cache.path_for(key), text);
  EXPECT_THROW(cache.load(key), InternalError);
  write(cache.path_for(key), "{not json");
  EXPECT_THROW(cache.load(key), InternalError);

  Cache off(d.string(), false);
  off.store(key, value);
  EXPECT_FALSE(off.load(key).has_value());
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Exports, TablesRoundTrip) {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{{"A3", "id"}, {"A3", "flip"}, {"G2", "id"}}) {
    auto p = testing_support::make_pipeline(g, s);
    auto& t = p->cell_tables();
    for (const auto& [kind, tab] : std::vector<std::pair<std::string, const XTable*>>{{"R", &t.r}, {"P", &t.p}, {"Q", &t.q}})
      EXPECT_EQ(import_xtable(*t.sys, export_xtable(*t.sys, *tab, kind), kind), *tab) << g << kind;
    const auto h2 = import_structure_constants(*t.sys, export_structure_constants(*t.sys, t.h));
    EXPECT_EQ(export_structure_constants(*t.sys, h2), export_structure_constants(*t.sys, t.h));
    EXPECT_THROW(import_xtable(*t.sys, export_xtable(*t.sys, t.p, "P"), "Q"), InternalError);
  }
}

TEST(Exports, A2FlipPTableHasThreeEntries) {
  auto p = testing_support::make_pipeline("A2", "flip");
  const auto j = export_xtable(p->system(), p->tables().p, "P");
  EXPECT_EQ(j["entries"].size(), 3u);
  EXPECT_EQ(j["kind"], "P");
}

TEST(Exports, SortedByWeightThenIds) {
  auto p = testing_support::make_pipeline("A3");
  const auto& sys = p->system();
  const auto j = export_xtable(sys, p->tables().p, "P");
  std::vector<std::tuple<int, ElementId, ElementId>> keys;
  for (const auto& e : j["entries"]) {
    const auto w = *sys.parse_element(e["w"].get<std::string>());
    const auto y = *sys.parse_element(e["y"].get<std::string>());
    keys.emplace_back(sys.weight(w), w, y);
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  std::set<std::string> ws;
  for (const auto& e : j["entries"]) ws.insert(e["w"].get<std::string>());
  EXPECT_EQ(ws.size(), 24u);
}

TEST(Exports, JTriplesAndCells) {
  auto p = testing_support::make_pipeline("A2");
  auto& t = p->cell_tables();
  const auto j = export_j_ring(*t.sys, t.j);
  for (const auto& tr : j["triples"]) EXPECT_EQ(tr.size(), 4u);
  const auto c = export_cells(*t.sys, t.cells, {});
  EXPECT_EQ(c["two_sided"].size(), 3u);
  EXPECT_EQ(c["two_sided"][1]["a"], 1);
  EXPECT_FALSE(c["two_sided"][0].contains("bang"));
}

TEST(Pipeline, SecondRunHitsCache) {
  const auto d = fresh_dir("pipeline_cache");
  RunConfig c;
  c.group = "A3";
  c.sigma = "flip";
  c.out = (d / "out").string();
  c.cache = (d / "cache").string();
  {
    Pipeline p(validate(c));
    p.cell_tables();
    EXPECT_EQ(p.cache_hits(), 0u);
    EXPECT_EQ(p.cache_misses(), 4u);
    p.write_exports();
  }
  const auto first = slurp(d / "out" / "P.json");
  std::vector<std::string> log;
  Pipeline p(validate(c), [&](const std::string& m) { log.push_back(m); });
  p.cell_tables();
  EXPECT_EQ(p.cache_hits(), 4u);
  EXPECT_EQ(p.cache_misses(), 0u);
  EXPECT_EQ(std::count_if(log.begin(), log.end(), [](const auto& m) { return m.rfind("cache hit", 0) == 0; }), 4);
  p.write_exports();
  EXPECT_EQ(slurp(d / "out" / "P.json"), first);
}

TEST(Verify, SuitesAndExitCode) {
  auto p = testing_support::make_pipeline("A2", "flip");
  const auto rep = run_verify(*p, "all");
  EXPECT_EQ(rep.exit_code(), 0) << rep.text();
  EXPECT_EQ(rep.suites, (std::vector<std::string>{"hecke", "cells", "reps"}));
  EXPECT_THROW(run_verify(*p, "everything"), ConfigError);
  EXPECT_THROW(run_verify(*p, "oracle"), ConfigError);
  const auto j = rep.json();
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(j["checks"].size(), rep.checks.size());
}

TEST(Verify, ExitCodeTriage) {
  VerifyReport r;
  r.checks.push_back({"s", "s.a", "x", CheckKind::Claim, CheckStatus::Pass, 1, ""});
  EXPECT_EQ(r.exit_code(), 0);
  r.checks.push_back({"s", "s.b", "x", CheckKind::Claim, CheckStatus::Fail, 1, "boom"});
  EXPECT_EQ(r.exit_code(), 1);
  r.checks.push_back({"s", "s.c", "x", CheckKind::Internal, CheckStatus::Fail, 1, "bug"});
  EXPECT_EQ(r.exit_code(), 2);
  r.checks.push_back({"s", "s.d", "x", CheckKind::Internal, CheckStatus::Skipped, 0, "n/a"});
  EXPECT_EQ(r.exit_code(), 2);
}

#ifdef TWISTKL_CLI
namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const auto d = fs::path(::testing::TempDir()) / "twistkl_cli_capture.txt";
  const std::string cmd = std::string(TWISTKL_CLI) + " " + args + " > " + d.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(d)};
}

}  // namespace

TEST(Cli, ShowQueries) {
  const auto d = fresh_dir("cli_show");
  const std::string common = " -q --no-cache --out " + (d / "out").string();
  EXPECT_EQ(cli("show --group A2 --query a" + common).out, "0,1,1,1,1,3\n");
  EXPECT_EQ(cli("show --group A2 --query element:e" + common).out, "e, L=0, cell #0\n");
  EXPECT_EQ(cli("show --group A3 --query P:s2,s2s1s3s2" + common).out, "P[s2, s2s1s3s2] = 1+X\n");
  EXPECT_EQ(cli("show --group A3 --query P:2132,2132" + common).out, "P[s2s1s3s2, s2s1s3s2] = 1\n");
  EXPECT_EQ(cli("show --group A3 --query colour" + common).code, 3);
  EXPECT_EQ(cli("show --group A3 --query P:9,1" + common).code, 3);
}

TEST(Cli, ExitCodes) {
  const auto d = fresh_dir("cli_exit");
  write(d / "flag.toml", "group = A3\nsigma = flip\n[oracle]\nn = 4\nq = 2\ntwist = true\n");
  const std::string cfg = (d / "flag.toml").string();
  const std::string out = " -q --out " + (d / "out").string() + " --cache " + (d / "cache").string();
  const auto ok = cli("verify " + cfg + out);
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_TRUE(fs::exists(d / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(d / "out" / "N.csv"));

  EXPECT_EQ(cli("verify " + cfg + " --sigma id" + out).code, 3);
  EXPECT_EQ(cli("verify " + cfg + " --suite nonsense" + out).code, 3);
  EXPECT_EQ(cli("verify --group Q7" + out).code, 3);
  EXPECT_EQ(cli("verify --bogus-flag").code, 3);

  // Corrupt one cache entry: the next run must stop with exit 2 and say why.
  fs::path victim;
  for (const auto& e : fs::directory_iterator(d / "cache")) victim = e.path();
  auto text = slurp(victim);
  const auto pos = text.find("\"poly\":\"");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 8, "7+");
  write(victim, text);
  const auto bad = cli("verify " + cfg + out);
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("checksum"), std::string::npos) << bad.out;
}

TEST(Cli, TablesWritesEverything) {
  const auto d = fresh_dir("cli_tables");
  const auto r = cli("tables --group A3 -q --no-cache --out " + (d / "out").string());
  EXPECT_EQ(r.code, 0) << r.out;
  for (const char* f : {"R.json", "P.json", "Q.json", "C.json", "h.json", "cells.json", "J.json", "phi.json", "reps.json"})
    EXPECT_TRUE(fs::exists(d / "out" / f)) << f;
}
#endif
