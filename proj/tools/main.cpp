#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twistkl/app/config.hpp"
#include "twistkl/app/pipeline.hpp"
#include "twistkl/app/verify.hpp"
#include "twistkl/errors.hpp"

using namespace twistkl;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> group, sigma, delta, out, cache;
  std::optional<int> oracle_n, oracle_q, jobs;
  std::optional<bool> oracle_twist;
  bool no_cache = false;
  bool quiet = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("config", o.config_path, "key = value run configuration file");
  sub->add_option("--group", o.group, "Cartan type, e.g. A3, B2, G2");
  sub->add_option("--sigma", o.sigma, "diagram automorphism defining W^sigma: id, flip or 1:3,3:1");
  sub->add_option("--delta", o.delta, "diagram automorphism twisting traces");
  sub->add_option("--oracle-n", o.oracle_n, "flag oracle: GL_n or U_n with n in [2, 4]");
  sub->add_option("--oracle-q", o.oracle_q, "flag oracle: field size q");
  sub->add_option("--oracle-twist", o.oracle_twist, "flag oracle: unitary (twisted) Frobenius");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--cache", o.cache, "cache directory (default $TWISTKL_CACHE_DIR, then <out>/cache)");
  sub->add_option("-j,--jobs", o.jobs, "worker threads");
  sub->add_flag("--no-cache", o.no_cache, "neither read nor write the cache");
  sub->add_flag("-q,--quiet", o.quiet, "no progress log on stderr");
}

RunConfig build_config(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : read_config_file(o.config_path);
  if (o.group) c.group = *o.group;
  if (o.sigma) c.sigma = *o.sigma;
  if (o.delta) c.delta = *o.delta;
  if (o.out) c.out = *o.out;
  if (o.cache) c.cache = *o.cache;
  if (o.oracle_n) c.oracle.n = *o.oracle_n;
  if (o.oracle_q) c.oracle.q = *o.oracle_q;
  if (o.oracle_twist) c.oracle.twisted = *o.oracle_twist;
  if (o.jobs) {
    if (*o.jobs < 1) throw ConfigError("--jobs must be positive");
    c.jobs = static_cast<unsigned>(*o.jobs);
  }
  if (o.no_cache) c.use_cache = false;
  return c;
}

// "2132" -> "s2s1s3s2"
std::string s_word(const std::string& digits) {
  if (digits == "e") return digits;
  std::string out;
  for (char ch : digits) out += std::string("s") + ch;
  return out;
}

ElementId element_arg(const WeightedSystem& sys, const std::string& text) {
  const auto id = sys.parse_element(text);
  if (!id) throw ConfigError("'" + text + "' is not an element of " + sys.descriptor());
  return *id;
}

std::string show(Pipeline& p, const std::string& query) {
  const auto& sys = p.system();
  const auto colon = query.find(':');
  const std::string head = query.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : query.substr(colon + 1);
  std::ostringstream os;
  if (query == "a") {
    auto& t = p.cell_tables();
    for (ElementId w = 0; w < sys.size(); ++w) os << (w ? "," : "") << t.cells.a[w];
    return os.str();
  }
  if (query == "cells") {
    auto& t = p.cell_tables();
    for (std::size_t c = 0; c < t.cells.two_cells.cells.size(); ++c) {
      const auto& m = t.cells.two_cells.cells[c];
      os << "cell #" << c << " a=" << t.cells.a[m.front()] << ":";
      for (ElementId w : m) os << " " << s_word(sys.ambient_word(w));
      os << "\n";
    }
    return os.str();
  }
  if (head == "element" && !arg.empty()) {
    const ElementId w = element_arg(sys, arg);
    os << s_word(sys.ambient_word(w)) << ", L=" << sys.weight(w);
    if (sys.size() <= kMaxCellOrder) os << ", cell #" << p.cell_tables().cells.two_cells.cell_of[w];
    return os.str();
  }
  if ((head == "P" || head == "Q" || head == "R") && arg.find(',') != std::string::npos) {
    const auto comma = arg.find(',');
    const ElementId a = element_arg(sys, arg.substr(0, comma));
    const ElementId b = element_arg(sys, arg.substr(comma + 1));
    auto& t = p.tables();
    const XTable& tab = head == "P" ? t.p : head == "Q" ? t.q : t.r;
    os << head << "[" << s_word(sys.ambient_word(a)) << ", " << s_word(sys.ambient_word(b)) << "] = " << tab[a][b].str();
    return os.str();
  }
  throw ConfigError("unknown query '" + query + "' (element:<w>, P:<y>,<w>, Q:<y>,<w>, R:<x>,<y>, a, cells)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KL polynomial tables, cells and twisted traces for finite Weyl groups and their fixed subgroups"};
  app.require_subcommand(1);
  Overrides o;
  std::string suite = "all", query;
  auto* tables = app.add_subcommand("tables", "compute and export every table");
  auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
  auto* showc = app.add_subcommand("show", "print one table entry");
  for (auto* sub : {tables, verify, showc}) add_common(sub, o);
  verify->add_option("--suite", suite, "hecke, cells, reps, oracle or all");
  showc->add_option("--query", query, "element:<w>, P:<y>,<w>, Q:<y>,<w>, R:<x>,<y>, a, cells")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    const RunConfig cfg = build_config(o);
    Pipeline::Log log;
    if (!o.quiet) log = [](const std::string& m) { std::cerr << "twistkl: " << m << "\n"; };
    Pipeline p(validate(cfg), log);

    if (*tables) {
      p.tables();
      if (p.system().size() <= kMaxCellOrder) {
        p.embedding();
        p.reps();
      } else if (log) {
        log(p.system().descriptor() + " exceeds the cell cap; exporting R, P, Q and C only");
      }
      if (cfg.oracle.enabled()) {
        p.r_counts();
        p.n_table();
      }
      p.write_exports();
      if (log) log("exports written to " + cfg.out);
      return 0;
    }
    if (*verify) {
      const VerifyReport rep = run_verify(p, suite);
      p.write_exports();
      write_text_file(cfg.out, "report.txt", rep.text());
      write_text_file(cfg.out, "report.json", rep.json().dump(1) + "\n");
      std::cout << rep.text();
      return rep.exit_code();
    }
    std::cout << show(p, query) << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "twistkl: configuration error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "twistkl: internal error: " << e.what() << "\n";
    return 2;
  } catch (const FalsifiedClaim& e) {
    std::cerr << "twistkl: claim falsified: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "twistkl: internal error: " << e.what() << "\n";
    return 2;
  }
}
