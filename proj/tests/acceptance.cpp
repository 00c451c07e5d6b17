// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
// Usage: acceptance [work-dir]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dense_kl.hpp"
#include "fixtures.hpp"
#include "twistkl/app/verify.hpp"

using namespace twistkl;
using testing_support::make_pipeline;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::vector<std::string> notes;
  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void need(const Outcome& o, const std::string& what) {
    need(o.ok, what + (o.detail.empty() ? "" : ": " + o.detail));
  }
};

std::vector<std::int64_t> coeffs64(const XPoly& p) {
  std::vector<std::int64_t> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_si());
  return out;
}

Result equal_parameter_regression() {
  Result r;
  std::size_t compared = 0;
  for (const char* g : {"A1", "A2", "A3", "B2"}) {
    auto p = make_pipeline(g);
    auto& t = p->tables();
    const auto dense = oracle::kl_polynomials(*t.sys);
    for (ElementId w = 0; w < t.sys->size(); ++w)
      for (ElementId y = 0; y < t.sys->size(); ++y) {
        ++compared;
        r.need(coeffs64(t.p[y][w]) == dense[y][w],
               std::string(g) + ": P mismatch at y=" + t.sys->ambient_word(y) + " w=" + t.sys->ambient_word(w));
        for (const auto& c : t.p[y][w].coeffs()) r.need(c >= 0, std::string(g) + ": negative coefficient");
      }
    if (std::string(g) == "A3")
      r.need(t.p[0][*t.sys->parse_element("2132")].str() == "1+X", "A3: P_{e,2132} != 1+X");
  }
  r.notes.push_back(std::to_string(compared) + " entries compared");
  return r;
}

Result unequal_parameter_engine() {
  Result r;
  for (const char* g : {"A3", "A2"}) {
    auto p = make_pipeline(g, "flip");
    auto& t = p->tables();
    const std::string tag = t.sys->descriptor();
    r.need(check_r_support(*t.sys, t.r), tag + " R support");
    r.need(check_r_product_identity(*t.hecke, t.r), tag + " R product identity");
    r.need(check_p_identity(*t.sys, t.r, t.p), tag + " P identity");
    r.need(check_q_inversion(*t.sys, t.p, t.q), tag + " Q inversion");
    r.need(check_bar_invariance(*t.hecke, t.cprime, "C'"), tag + " bar C'");
    r.need(check_bar_invariance(*t.hecke, t.csigned, "C"), tag + " bar C");
    r.need(check_signed_forms_agree(*t.hecke, t.p, t.csigned), tag + " signed forms");
    r.need(check_degree_bounds(*t.sys, t.p, "P"), tag + " P degrees");
    r.need(check_degree_bounds(*t.sys, t.q, "Q"), tag + " Q degrees");
  }
  return r;
}

Result geometric_oracle() {
  Result r;
  const std::vector<std::tuple<int, int, bool>> runs{{2, 2, false}, {2, 3, false}, {3, 2, false}, {3, 3, false},
                                                     {4, 2, false}, {4, 3, false}, {3, 2, true},  {4, 2, true}};
  std::size_t pairs = 0;
  for (const auto& [n, q, tw] : runs) {
    auto p = make_pipeline("A" + std::to_string(n - 1), tw ? "flip" : "id");
    const auto o = build_flag_oracle(n, q, tw);
    const auto rep = verify_r_counts(o, p->tables().r);
    const std::string tag = "n=" + std::to_string(n) + " q=" + std::to_string(q) + (tw ? " twisted" : "");
    r.need(rep.identity, tag);
    r.need(rep.well_defined, tag + " base independence");
    pairs += rep.rows.size();
    if (n == 3 && q == 2 && tw) {
      const auto counts = neighbor_counts(o);
      bool all8 = !counts.empty();
      for (const auto& per_s : counts)
        for (auto c : per_s) all8 = all8 && c == 8;
      r.need(all8, tag + ": some flag does not have exactly 8 neighbours in position s_omega");
    }
  }
  r.notes.push_back(std::to_string(pairs) + " (x, y) pairs");
  return r;
}

Result cells_and_j() {
  Result r;
  auto p = make_pipeline("A3", "flip");
  auto& t = p->cell_tables();
  auto* big = p->ambient_cell_tables();
  r.need(big != nullptr, "ambient cells unavailable");
  if (!big) return r;
  r.need(check_a_restriction(*big->sys, big->cells, *t.sys, t.cells), "a restriction");
  r.need(check_distinguished(*t.sys, t.cells), "distinguished involutions");
  r.need(t.cells.distinguished.size() == t.cells.left_cells.cells.size(), "one distinguished element per left cell");
  r.need(check_a_function(*t.sys, t.cells), "a function");
  r.need(check_j_associativity(t.j), "J associativity");
  r.need(check_j_unit(t.j), "J unit");
  r.need(check_phi_homomorphism(*t.sys, t.h, t.j, t.phi), "psi homomorphism");
  r.need(t.phi.invertible, "psi at v = 1 not invertible");
  r.need(check_star(*t.sys, t.cells), "star");
  r.need(p->embedding().outcome, "cell embedding");
  return r;
}

struct RepSystem {
  std::string group, sigma, delta;
};

Result representation_layer(const RepSystem& s, double& worst) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  auto p = make_pipeline(s.group, s.sigma, s.delta);
  const auto& sys = p->system();
  auto& t = p->cell_tables();
  const auto& rep = p->reps();
  const std::string tag = sys.descriptor() + " delta=" + s.delta;
  r.need(check_orthogonality(rep.table), tag + " orthogonality");
  long sq = 0;
  for (std::size_t e = 0; e < rep.table.size(); ++e) sq += rep.table.dim(e) * rep.table.dim(e);
  r.need(sq == static_cast<long>(sys.size()), tag + " sum of squared dimensions");
  r.need(check_delta_extensions(sys.group(), rep.models, rep.ext, rep.delta), tag + " M_E");
  for (std::size_t e = 0; e < rep.ext.size(); ++e)
    r.need(!rep.ext[e].stable || rep.ext[e].m_size == 2, tag + " |M_E| != 2 for E" + std::to_string(e));
  r.need(rep.sharp, tag + " E_spade");
  r.need(check_specialization(sys, rep), tag + " specialization");
  r.need(rep.bound, tag + " leading-term bound");
  r.need(check_a_support(sys, rep, t.cells), tag + " A support");
  r.need(check_a_span(sys, rep, t.cells), tag + " A span");
  r.need(check_pairing(sys, rep), tag + " pairing");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  worst = std::max(worst, secs);
  r.need(secs < 30, tag + " took longer than 30 s");
  return r;
}

Result representation_layer_all() {
  Result r;
  double worst = 0;
  const std::vector<RepSystem> systems{{"A2", "id", "id"}, {"A2", "id", "flip"}, {"A3", "id", "id"},
                                       {"A3", "id", "flip"}, {"A2", "flip", "id"}, {"A3", "flip", "id"},
                                       {"B2", "id", "id"}, {"G2", "id", "id"}, {"B3", "id", "id"}};
  for (const auto& s : systems) {
    auto one = representation_layer(s, worst);
    r.ok = r.ok && one.ok;
    r.notes.insert(r.notes.end(), one.notes.begin(), one.notes.end());
  }
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << systems.size() << " systems, slowest " << worst << "s";
  r.notes.push_back(os.str());
  return r;
}

Result leading_decomposition() {
  Result r;
  const std::vector<RepSystem> systems{{"A3", "flip", "id"}, {"A2", "id", "id"}, {"A3", "id", "id"},
                                       {"A2", "id", "flip"}, {"A3", "id", "flip"}};
  std::size_t elements = 0;
  for (const auto& s : systems) {
    auto p = make_pipeline(s.group, s.sigma, s.delta);
    auto& t = p->cell_tables();
    const auto& rep = p->reps();
    r.need(check_leading_decomposition(*t.sys, rep, t.cells), t.sys->descriptor() + " delta=" + s.delta);
    elements += t.sys->size();
  }
  r.notes.push_back(std::to_string(elements) + " elements");
  return r;
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir).string();
    if (rel.rfind("cache", 0) == 0) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[rel] = ss.str();
  }
  return files;
}

Result determinism(const fs::path& work) {
  Result r;
  auto run = [&](const std::string& name, unsigned jobs, bool cache) {
    RunConfig c;
    c.group = "A3";
    c.sigma = "flip";
    c.oracle = {4, 2, true};
    c.jobs = jobs;
    c.out = (work / name).string();
    c.cache = (work / "cache").string();
    c.use_cache = cache;
    fs::remove_all(c.out);
    Pipeline p(validate(c));
    const auto rep = run_verify(p, "all");
    p.write_exports();
    write_text_file(c.out, "report.txt", rep.text());
    write_text_file(c.out, "report.json", rep.json().dump(1) + "\n");
    r.need(rep.exit_code() == 0, name + ": verify all exited " + std::to_string(rep.exit_code()));
    return read_tree(c.out);
  };
  fs::remove_all(work / "cache");
  const auto serial = run("serial", 1, false);
  const auto parallel = run("parallel", 4, true);  // cold cache, fills it
  const auto warm = run("warm", 2, true);          // every table from the cache
  r.need(serial.size() >= 10, "too few export files");
  r.need(serial == parallel, "serial and parallel exports differ");
  r.need(serial == warm, "cached and cold exports differ");
  r.notes.push_back(std::to_string(serial.size()) + " files compared");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "twistkl_acceptance";
  fs::create_directories(work);

  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "equal-parameter P tables match the dense bar-invariance oracle", 10, equal_parameter_regression},
      {2, "unequal-parameter R, P, Q and C identities", 5, unequal_parameter_engine},
      {3, "flag counts equal R-polynomials; unitary n=3 q=2 has 8 neighbours", 60, geometric_oracle},
      {4, "cells, J, psi and the cell embedding for A3 with the flip", 30, cells_and_j},
      {5, "representation layer", 30 * 9, representation_layer_all},
      {6, "leading part of twisted traces decomposes over lower cells", 60, leading_decomposition},
      {7, "serial, parallel and cached verify runs give byte-identical exports", 300,
       [&] { return determinism(work); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) r.need(false, "runtime over the limit");
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", secs);
    std::cout << (r.ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << " (" << time;
    for (const auto& n : r.notes) std::cout << "; " << n;
    std::cout << ")" << std::endl;
    if (!r.ok) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
