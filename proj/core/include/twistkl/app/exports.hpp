#pragma once

// JSON and CSV renderings of every table. All orders are fixed by element ids
// so equal inputs give byte-identical files. Words are ambient canonical words.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twistkl/cells.hpp"
#include "twistkl/flags.hpp"
#include "twistkl/wrep.hpp"

namespace twistkl {

/// {"system", "kind", "entries": [{"y", "w", "poly"}]} over y <= w with a
/// nonzero entry, sorted by (L(w), w, y).
nlohmann::json export_xtable(const WeightedSystem& sys, const XTable& t, const std::string& kind);
/// Inverse of export_xtable. Throws InternalError on a mismatched system or
/// malformed entry.
XTable import_xtable(const WeightedSystem& sys, const nlohmann::json& j, const std::string& kind);

/// {"system", "kind": "h", "entries": [{"x", "y", "z", "poly"}]} sorted by ids.
nlohmann::json export_structure_constants(const WeightedSystem& sys, const StructureConstants& h);
StructureConstants import_structure_constants(const WeightedSystem& sys, const nlohmann::json& j);

/// Both C-bases, entries {"y", "w", "unsigned", "signed"} sorted like P.
nlohmann::json export_c_bases(const WeightedSystem& sys, const std::vector<HeckeElement>& cprime,
                              const std::vector<HeckeElement>& csigned);

/// Two-sided, left and right cells (words, a, star, bang) and per-element
/// L, a, Delta, n_z, distinguished flag. `bang` may be empty.
nlohmann::json export_cells(const WeightedSystem& sys, const CellData& cells, const std::vector<int>& bang);
/// {"system", "unit": [[d, n_d]], "triples": [[x, y, z, gamma_{x,y,z}]]}.
nlohmann::json export_j_ring(const WeightedSystem& sys, const JRing& j);
/// psi(C'_w) coefficients and the group-basis matrix at v = 1.
nlohmann::json export_phi(const WeightedSystem& sys, const PhiMap& phi);

/// Character table, per-E records, twisted traces, the A table and D(E, E').
nlohmann::json export_reps(const WeightedSystem& sys, const RepPackage& r);

/// N table as CSV (w,w',w'',count) and the count identity rows with both sides.
nlohmann::json export_r_counts(const FlagOracle& o, const RCountReport& rep);

}  // namespace twistkl
