#pragma once

// Lazy, cached orchestration of every table for one configuration. Each
// accessor computes what it needs on first use; R, P, Q and h go through the
// persistent cache.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "twistkl/app/cache.hpp"
#include "twistkl/app/config.hpp"
#include "twistkl/cells.hpp"
#include "twistkl/flags.hpp"
#include "twistkl/wrep.hpp"

namespace twistkl {

/// Cells, J, psi and representations need all structure constants; beyond
/// this order the run is refused with a SizeError.
inline constexpr std::size_t kMaxCellOrder = 192;

struct SystemTables {
  std::shared_ptr<const WeightedSystem> sys;
  std::unique_ptr<HeckeAlgebra> hecke;
  XTable r, p, q;
  std::vector<HeckeElement> cprime, csigned;

  bool has_cells = false;
  StructureConstants h;
  CellData cells;
  JRing j;
  PhiMap phi;
};

class Pipeline {
 public:
  using Log = std::function<void(const std::string&)>;

  explicit Pipeline(Setup setup, Log log = {});

  const Setup& setup() const { return setup_; }
  const WeightedSystem& system() const { return *setup_.system; }
  unsigned jobs() const { return setup_.config.jobs; }

  /// R, P, Q and both C-bases of the configured system.
  SystemTables& tables();
  /// Adds h, cells, J and psi (SizeError above kMaxCellOrder).
  SystemTables& cell_tables();
  /// Cell tables of the ambient W when sigma is not the identity; nullptr
  /// otherwise or when W exceeds kMaxCellOrder.
  SystemTables* ambient_cell_tables();
  /// Cell embedding into W (empty bang when there is no ambient).
  const CellEmbedding& embedding();
  const RepPackage& reps();
  /// ConfigError if no oracle block is configured.
  const FlagOracle& oracle();
  const RCountReport& r_counts();
  const NTable& n_table();

  std::size_t cache_hits() const { return hits_; }
  std::size_t cache_misses() const { return misses_; }

  /// Writes every table computed so far into the output directory.
  void write_exports();

 private:
  void fill_hecke(SystemTables& t);
  void fill_cells(SystemTables& t);
  XTable cached_xtable(const WeightedSystem& sys, const std::string& kind, const std::function<XTable()>& make);
  void log(const std::string& msg) const;

  Setup setup_;
  Log log_;
  Cache cache_;
  std::size_t hits_ = 0, misses_ = 0;
  std::unique_ptr<SystemTables> main_, ambient_;
  bool ambient_tried_ = false;
  std::optional<CellEmbedding> embedding_;
  std::unique_ptr<RepPackage> reps_;
  std::unique_ptr<FlagOracle> oracle_;
  std::unique_ptr<RCountReport> r_counts_;
  std::unique_ptr<NTable> n_table_;
};

/// Writes `content` to out/name, creating the directory.
void write_text_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace twistkl
