#include "twistkl/app/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "twistkl/app/exports.hpp"
#include "twistkl/errors.hpp"

namespace twistkl {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

}  // namespace

void write_text_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

Pipeline::Pipeline(Setup setup, Log log)
    : setup_(std::move(setup)),
      log_(std::move(log)),
      cache_(resolve_cache_dir(setup_.config), setup_.config.use_cache) {}

void Pipeline::log(const std::string& msg) const {
  if (log_) log_(msg);
}

XTable Pipeline::cached_xtable(const WeightedSystem& sys, const std::string& kind,
                               const std::function<XTable()>& make) {
  const CacheKey key{"hecke", kind, sys.descriptor()};
  if (auto j = cache_.load(key)) {
    ++hits_;
    log("cache hit " + key.id());
    return import_xtable(sys, *j, kind);
  }
  ++misses_;
  Stopwatch sw;
  XTable t = make();
  log("computed " + kind + " for " + sys.descriptor() + " in " + fmt_seconds(sw.seconds()));
  cache_.store(key, export_xtable(sys, t, kind));
  return t;
}

void Pipeline::fill_hecke(SystemTables& t) {
  const unsigned j = jobs();
  t.hecke = std::make_unique<HeckeAlgebra>(t.sys);
  t.r = cached_xtable(*t.sys, "R", [&] { return compute_r_table(*t.hecke, j); });
  t.p = cached_xtable(*t.sys, "P", [&] { return compute_p_table(*t.sys, t.r, j); });
  t.q = cached_xtable(*t.sys, "Q", [&] { return compute_q_table(*t.sys, t.p, j); });
  t.cprime = c_basis_unsigned(*t.hecke, t.p);
  t.csigned = c_basis_signed(*t.hecke, t.p);
}

void Pipeline::fill_cells(SystemTables& t) {
  if (t.has_cells) return;
  const auto& sys = *t.sys;
  if (sys.size() > kMaxCellOrder)
    throw SizeError("cells need all structure constants; " + sys.descriptor() + " has " +
                    std::to_string(sys.size()) + " elements, cap is " + std::to_string(kMaxCellOrder));
  const CacheKey key{"hecke", "h", sys.descriptor()};
  if (auto j = cache_.load(key)) {
    ++hits_;
    log("cache hit " + key.id());
    t.h = import_structure_constants(sys, *j);
  } else {
    ++misses_;
    Stopwatch sw;
    t.h = compute_structure_constants(*t.hecke, t.cprime, t.p, jobs());
    log("computed h for " + sys.descriptor() + " in " + fmt_seconds(sw.seconds()));
    cache_.store(key, export_structure_constants(sys, t.h));
  }
  Stopwatch sw;
  t.cells = compute_cells(sys, t.h, t.p);
  t.j = build_j_ring(sys, t.h, t.cells);
  t.phi = build_phi(sys, t.h, t.cells, t.p);
  t.has_cells = true;
  log("cells, J and psi for " + sys.descriptor() + " in " + fmt_seconds(sw.seconds()));
}

SystemTables& Pipeline::tables() {
  if (!main_) {
    auto t = std::make_unique<SystemTables>();
    t->sys = setup_.system;
    fill_hecke(*t);
    main_ = std::move(t);
  }
  return *main_;
}

SystemTables& Pipeline::cell_tables() {
  auto& t = tables();
  fill_cells(t);
  return t;
}

SystemTables* Pipeline::ambient_cell_tables() {
  if (!setup_.system->is_fixed_subsystem()) return nullptr;
  if (!ambient_tried_) {
    ambient_tried_ = true;
    if (setup_.weyl->size() > kMaxCellOrder) {
      log("ambient " + setup_.weyl->descriptor() + " exceeds the cell cap; embedding checks skipped");
      return nullptr;
    }
    auto t = std::make_unique<SystemTables>();
    t->sys = setup_.weyl;
    fill_hecke(*t);
    fill_cells(*t);
    ambient_ = std::move(t);
  }
  return ambient_.get();
}

const CellEmbedding& Pipeline::embedding() {
  if (!embedding_) {
    auto& sub = cell_tables();
    if (auto* big = ambient_cell_tables())
      embedding_ = cell_embedding_check(*big->sys, big->cells, *sub.sys, sub.cells);
    else
      embedding_ = CellEmbedding{};
  }
  return *embedding_;
}

const RepPackage& Pipeline::reps() {
  if (!reps_) {
    auto& t = cell_tables();
    Stopwatch sw;
    reps_ = std::make_unique<RepPackage>(
        build_reps(*t.hecke, t.cprime, t.p, t.cells, t.phi, setup_.system_delta, jobs()));
    log("representations of " + t.sys->descriptor() + " in " + fmt_seconds(sw.seconds()));
  }
  return *reps_;
}

const FlagOracle& Pipeline::oracle() {
  const auto& oc = setup_.config.oracle;
  if (!oc.enabled()) throw ConfigError("no oracle block (oracle_n, oracle_q, oracle_twist) configured");
  if (!oracle_) {
    Stopwatch sw;
    oracle_ = std::make_unique<FlagOracle>(build_flag_oracle(oc.n, oc.q, oc.twisted, jobs()));
    check_internal(oracle_->system->descriptor() == setup_.system->descriptor() &&
                       oracle_->system->size() == setup_.system->size(),
                   "flag oracle system " + oracle_->system->descriptor() + " differs from " +
                       setup_.system->descriptor());
    log("flag oracle n=" + std::to_string(oc.n) + " q=" + std::to_string(oc.q) +
        (oc.twisted ? " twisted" : "") + ": " + std::to_string(oracle_->size()) + " flags in " +
        fmt_seconds(sw.seconds()));
  }
  return *oracle_;
}

const RCountReport& Pipeline::r_counts() {
  if (!r_counts_) {
    const auto& o = oracle();
    auto& t = tables();
    Stopwatch sw;
    r_counts_ = std::make_unique<RCountReport>(verify_r_counts(o, t.r, jobs()));
    log("flag counts against R in " + fmt_seconds(sw.seconds()));
  }
  return *r_counts_;
}

const NTable& Pipeline::n_table() {
  if (!n_table_) {
    const auto& o = oracle();
    Stopwatch sw;
    n_table_ = std::make_unique<NTable>(count_n(o, 600, jobs()));
    log("N table in " + fmt_seconds(sw.seconds()));
  }
  return *n_table_;
}

void Pipeline::write_exports() {
  const std::string& dir = setup_.config.out;
  auto put = [&](const std::string& name, const nlohmann::json& j) { write_text_file(dir, name, j.dump(1) + "\n"); };
  if (main_) {
    const auto& t = *main_;
    put("R.json", export_xtable(*t.sys, t.r, "R"));
    put("P.json", export_xtable(*t.sys, t.p, "P"));
    put("Q.json", export_xtable(*t.sys, t.q, "Q"));
    put("C.json", export_c_bases(*t.sys, t.cprime, t.csigned));
    if (t.has_cells) {
      put("h.json", export_structure_constants(*t.sys, t.h));
      put("cells.json", export_cells(*t.sys, t.cells, embedding_ ? embedding_->bang : std::vector<int>{}));
      put("J.json", export_j_ring(*t.sys, t.j));
      put("phi.json", export_phi(*t.sys, t.phi));
    }
  }
  if (ambient_ && ambient_->has_cells)
    put("ambient_cells.json", export_cells(*ambient_->sys, ambient_->cells, {}));
  if (reps_) put("reps.json", export_reps(*setup_.system, *reps_));
  if (oracle_ && r_counts_) put("oracle_r_counts.json", export_r_counts(*oracle_, *r_counts_));
  if (oracle_ && n_table_) write_text_file(dir, "N.csv", n_table_csv(*oracle_, *n_table_));
}

}  // namespace twistkl
