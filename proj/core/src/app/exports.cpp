#include "twistkl/app/exports.hpp"

#include <algorithm>
#include <sstream>

#include "twistkl/errors.hpp"
#include "twistkl/poly_json.hpp"

namespace twistkl {

using nlohmann::json;

namespace {

// Ids ordered by (L(w), w).
std::vector<ElementId> by_weight(const WeightedSystem& sys) {
  std::vector<ElementId> ids(sys.size());
  for (ElementId w = 0; w < sys.size(); ++w) ids[w] = w;
  std::stable_sort(ids.begin(), ids.end(), [&](ElementId a, ElementId b) { return sys.weight(a) < sys.weight(b); });
  return ids;
}

ElementId element_of(const WeightedSystem& sys, const json& word) {
  const auto id = sys.parse_element(word.get<std::string>());
  check_internal(id.has_value(), "unknown element '" + word.dump() + "' in " + sys.descriptor() + " data");
  return *id;
}

void expect_header(const WeightedSystem& sys, const json& j, const std::string& kind) {
  check_internal(j.is_object() && j.value("system", "") == sys.descriptor() && j.value("kind", "") == kind,
                 "stored " + kind + " table does not belong to " + sys.descriptor());
}

int delta_matrix_order(const DeltaExtension& ext) {
  if (ext.m_size != 2) return 0;
  const std::size_t d = ext.delta.rows();
  const QMatrix id = QMatrix::identity(d);
  QMatrix m = ext.delta;
  for (int k = 1; k <= 2 * ext.order; ++k) {
    if (m == id) return k;
    m = m * ext.delta;
  }
  return -1;
}

}  // namespace

json export_xtable(const WeightedSystem& sys, const XTable& t, const std::string& kind) {
  json entries = json::array();
  for (ElementId w : by_weight(sys))
    for (ElementId y = 0; y < sys.size(); ++y)
      if (!t[y][w].is_zero())
        entries.push_back({{"y", sys.ambient_word(y)}, {"w", sys.ambient_word(w)}, {"poly", t[y][w].str()}});
  return {{"system", sys.descriptor()}, {"kind", kind}, {"entries", std::move(entries)}};
}

XTable import_xtable(const WeightedSystem& sys, const json& j, const std::string& kind) {
  expect_header(sys, j, kind);
  XTable t(sys.size(), std::vector<XPoly>(sys.size()));
  for (const auto& e : j.at("entries")) {
    const auto p = xpoly_from_text(e.at("poly").get<std::string>());
    check_internal(p.has_value(), "malformed polynomial in stored " + kind + " table");
    t[element_of(sys, e.at("y"))][element_of(sys, e.at("w"))] = *p;
  }
  return t;
}

json export_structure_constants(const WeightedSystem& sys, const StructureConstants& h) {
  json entries = json::array();
  for (ElementId x = 0; x < sys.size(); ++x)
    for (ElementId y = 0; y < sys.size(); ++y)
      for (const auto& [z, c] : h.row(x, y))
        entries.push_back({{"x", sys.ambient_word(x)}, {"y", sys.ambient_word(y)}, {"z", sys.ambient_word(z)},
                           {"poly", c.str()}});
  return {{"system", sys.descriptor()}, {"kind", "h"}, {"entries", std::move(entries)}};
}

StructureConstants import_structure_constants(const WeightedSystem& sys, const json& j) {
  expect_header(sys, j, "h");
  StructureConstants h(sys.size());
  for (const auto& e : j.at("entries")) {
    const auto p = laurent_from_text(e.at("poly").get<std::string>());
    check_internal(p.has_value(), "malformed polynomial in stored h table");
    h.row(element_of(sys, e.at("x")), element_of(sys, e.at("y"))).emplace_back(element_of(sys, e.at("z")), *p);
  }
  for (ElementId x = 0; x < sys.size(); ++x)
    for (ElementId y = 0; y < sys.size(); ++y) {
      auto& row = h.row(x, y);
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  return h;
}

json export_c_bases(const WeightedSystem& sys, const std::vector<HeckeElement>& cprime,
                    const std::vector<HeckeElement>& csigned) {
  json entries = json::array();
  for (ElementId w : by_weight(sys))
    for (ElementId y = 0; y < sys.size(); ++y) {
      const auto& u = cprime[w].c[y];
      const auto& s = csigned[w].c[y];
      if (u.is_zero() && s.is_zero()) continue;
      entries.push_back({{"y", sys.ambient_word(y)}, {"w", sys.ambient_word(w)}, {"unsigned", u.str()},
                         {"signed", s.str()}});
    }
  return {{"system", sys.descriptor()}, {"kind", "C"}, {"entries", std::move(entries)}};
}

json export_cells(const WeightedSystem& sys, const CellData& cells, const std::vector<int>& bang) {
  auto words = [&](const std::vector<ElementId>& ids) {
    json a = json::array();
    for (ElementId w : ids) a.push_back(sys.ambient_word(w));
    return a;
  };
  json two = json::array();
  for (std::size_t c = 0; c < cells.two_cells.cells.size(); ++c) {
    const auto& members = cells.two_cells.cells[c];
    json rec = {{"id", c}, {"elements", words(members)}, {"a", cells.a[members.front()]}, {"star", cells.star[c]}};
    if (!bang.empty()) rec["bang"] = bang[c];
    two.push_back(std::move(rec));
  }
  auto one_sided = [&](const Partition& p) {
    json out = json::array();
    for (std::size_t c = 0; c < p.cells.size(); ++c) {
      const auto& members = p.cells[c];
      out.push_back({{"id", c}, {"elements", words(members)}, {"a", cells.a[members.front()]},
                     {"two_sided", cells.two_cells.cell_of[members.front()]}});
    }
    return out;
  };
  json elements = json::array();
  for (ElementId w = 0; w < sys.size(); ++w)
    elements.push_back({{"w", sys.ambient_word(w)}, {"L", sys.weight(w)}, {"a", cells.a[w]},
                        {"Delta", cells.delta[w]}, {"n", coeff_json(cells.n[w])},
                        {"distinguished", static_cast<bool>(cells.is_distinguished[w])},
                        {"two_sided", cells.two_cells.cell_of[w]}, {"left", cells.left_cells.cell_of[w]},
                        {"right", cells.right_cells.cell_of[w]}});
  return {{"system", sys.descriptor()}, {"two_sided", std::move(two)}, {"left", one_sided(cells.left_cells)},
          {"right", one_sided(cells.right_cells)}, {"distinguished", words(cells.distinguished)},
          {"elements", std::move(elements)}};
}

json export_j_ring(const WeightedSystem& sys, const JRing& j) {
  const auto& g = sys.group();
  json triples = json::array();
  for (ElementId x = 0; x < j.n; ++x)
    for (ElementId y = 0; y < j.n; ++y) {
      // t_x t_y = sum_z gamma_{x,y,z^-1} t_z, so each term gives gamma at (x, y, z^-1).
      std::vector<std::pair<ElementId, mpz_class>> row;
      for (const auto& [z, c] : j.product(x, y)) row.emplace_back(g.inverse(z), c);
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [z, c] : row)
        triples.push_back({sys.ambient_word(x), sys.ambient_word(y), sys.ambient_word(z), coeff_json(c)});
    }
  json unit = json::array();
  for (const auto& [d, c] : j.unit) unit.push_back({sys.ambient_word(d), coeff_json(c)});
  return {{"system", sys.descriptor()}, {"unit", std::move(unit)}, {"triples", std::move(triples)}};
}

json export_phi(const WeightedSystem& sys, const PhiMap& phi) {
  json image = json::array();
  for (ElementId w = 0; w < sys.size(); ++w)
    for (ElementId z = 0; z < sys.size(); ++z)
      if (!phi.image[w][z].is_zero())
        image.push_back({{"w", sys.ambient_word(w)}, {"z", sys.ambient_word(z)}, {"poly", phi.image[w][z].str()}});
  json at_one = json::array();
  for (ElementId u = 0; u < sys.size(); ++u)
    for (ElementId z = 0; z < sys.size(); ++z)
      if (phi.group_to_j(u, z) != 0)
        at_one.push_back({sys.ambient_word(u), sys.ambient_word(z), coeff_json(phi.group_to_j(u, z))});
  return {{"system", sys.descriptor()}, {"image", std::move(image)}, {"group_to_j", std::move(at_one)},
          {"invertible", phi.invertible}};
}

json export_reps(const WeightedSystem& sys, const RepPackage& r) {
  const auto& t = r.table;
  json classes = json::array();
  for (std::size_t k = 0; k < t.classes.classes.size(); ++k)
    classes.push_back({{"id", k}, {"rep", sys.ambient_word(t.classes.rep(static_cast<int>(k)))},
                       {"size", t.classes.classes[k].size()}});
  json chars = json::array();
  for (std::size_t e = 0; e < t.size(); ++e)
    chars.push_back({{"id", e}, {"dim", t.dim(e)}, {"values", t.values[e]}, {"a_E", r.a[e]},
                     {"a_prime_E", r.a_prime[e]}, {"cell", r.cell[e]}, {"dagger", r.dagger[e]},
                     {"delta_stable", r.ext[e].stable}, {"M_size", r.ext[e].m_size},
                     {"delta_order", delta_matrix_order(r.ext[e])}});
  const std::size_t n = sys.size(), nk = r.irr.size();
  json a_table = json::array();
  for (ElementId w = 0; w < n; ++w) {
    json coeffs = json::object();
    for (std::size_t k = 0; k < nk; ++k)
      if (r.cprime[w][k] != 0) coeffs[std::to_string(r.irr[k])] = coeff_json(r.cprime[w][k]);
    a_table.push_back({{"w", sys.ambient_word(w)}, {"coeffs", std::move(coeffs)}});
  }
  json traces = json::array();
  for (std::size_t k = 0; k < nk; ++k)
    for (ElementId w = 0; w < n; ++w)
      traces.push_back({{"E", r.irr[k]}, {"w", sys.ambient_word(w)}, {"trace", r.trace[k][w].str()}});
  json pairing = json::array();
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t kk = 0; kk < nk; ++kk)
      pairing.push_back({{"E", r.irr[k]}, {"E_prime", r.irr[kk]}, {"D", r.pairing[k][kk].str()},
                         {"D_unnormalized", r.pairing_literal[k][kk].str()}});
  return {{"system", sys.descriptor()}, {"delta", r.delta.str()}, {"classes", std::move(classes)},
          {"characters", std::move(chars)}, {"irr_delta", r.irr}, {"A", std::move(a_table)},
          {"traces", std::move(traces)}, {"pairing", std::move(pairing)}};
}

json export_r_counts(const FlagOracle& o, const RCountReport& rep) {
  const auto& sys = *o.system;
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"x", sys.ambient_word(row.x)}, {"y", sys.ambient_word(row.y)}, {"lhs", coeff_json(row.lhs)},
                    {"rhs", coeff_json(row.rhs)}});
  const auto& v = *o.variety;
  return {{"system", sys.descriptor()}, {"n", v.n()}, {"q", v.q()}, {"twisted", v.twisted()},
          {"flags", v.size()}, {"rows", std::move(rows)}};
}

}  // namespace twistkl
