#include "twistkl/app/verify.hpp"

#include <algorithm>
#include <sstream>

#include "twistkl/errors.hpp"

namespace twistkl {

namespace {

class Runner {
 public:
  Runner(VerifyReport& r, std::string suite) : r_(r), suite_(std::move(suite)) {}

  void add(const std::string& id, const std::string& statement, CheckKind kind, const Outcome& o) {
    CheckRecord c;
    c.suite = suite_;
    c.id = suite_ + "." + id;
    c.statement = statement;
    c.kind = kind;
    c.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.checked = o.checked;
    c.detail = o.detail;
    r_.checks.push_back(std::move(c));
  }
  void skip(const std::string& id, const std::string& statement, CheckKind kind, const std::string& why) {
    CheckRecord c{suite_, suite_ + "." + id, statement, kind, CheckStatus::Skipped, 0, why};
    r_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& r_;
  std::string suite_;
};

constexpr auto kClaim = CheckKind::Claim;
constexpr auto kInternal = CheckKind::Internal;

void hecke_suite(Pipeline& p, VerifyReport& rep) {
  Runner run(rep, "hecke");
  auto& t = p.tables();
  const auto& sys = *t.sys;
  run.add("r_support", "R_{x,y} = 0 unless x <= y, and R_{w,w} = 1", kClaim, check_r_support(sys, t.r));
  run.add("r_product", "T_y T_{s_I} = sum_{x<=y} R_{x,y}(v^2) v^{2L(x)} T_{x s_I}", kClaim,
          check_r_product_identity(*t.hecke, t.r));
  run.add("p_identity", "v^{2L(w)} P_{y,w}(v^-2) = sum_z v^{2L(y)} R_{y,z}(v^2) P_{z,w}(v^2), zero remainder", kClaim,
          check_p_identity(sys, t.r, t.p));
  run.add("p_degree", "P_{w,w} = 1, deg P_{y,w} <= (L(w)-L(y)-1)/2 for y < w", kClaim,
          check_degree_bounds(sys, t.p, "P"));
  run.add("q_inversion", "sum_z sgn(z)sgn(w) P_{y,z} Q_{z,w} = delta_{y,w}", kClaim, check_q_inversion(sys, t.p, t.q));
  run.add("q_degree", "Q_{w,w} = 1, deg Q_{y,w} <= (L(w)-L(y)-1)/2 for y < w", kClaim,
          check_degree_bounds(sys, t.q, "Q"));
  run.add("bar_unsigned", "bar(C'_w) = C'_w for every w", kClaim, check_bar_invariance(*t.hecke, t.cprime, "C'"));
  run.add("bar_signed", "bar(C_w) = C_w for every w", kClaim, check_bar_invariance(*t.hecke, t.csigned, "C"));
  run.add("signed_forms", "the T-form and the barred-T form of C_w agree", kClaim,
          check_signed_forms_agree(*t.hecke, t.p, t.csigned));
  if (sys.is_fixed_subsystem()) {
    run.skip("p_nonnegative", "P_{y,w} has nonnegative coefficients (equal parameters)", kClaim,
             "only asserted for sigma = id");
  } else {
    Outcome o;
    for (ElementId w = 0; w < sys.size(); ++w)
      for (ElementId y = 0; y < sys.size(); ++y)
        for (const auto& c : t.p[y][w].coeffs()) {
          o.count();
          if (c < 0) o.fail("negative coefficient in P_{" + sys.ambient_word(y) + "," + sys.ambient_word(w) + "}");
        }
    run.add("p_nonnegative", "P_{y,w} has nonnegative coefficients (equal parameters)", kClaim, o);
  }
}

void cells_suite(Pipeline& p, VerifyReport& rep) {
  Runner run(rep, "cells");
  auto& t = p.cell_tables();
  const auto& sys = *t.sys;
  run.add("structure_constants", "C'_x C'_y = sum_z h_{x,y,z} C'_z, recomputed for all pairs", kInternal,
          check_structure_constants(*t.hecke, t.cprime, t.h));
  run.add("a_function", "a is constant on two-sided cells and a(z) = a(z^-1)", kClaim,
          check_a_function(sys, t.cells));
  run.add("distinguished", "a(z) <= Delta(z); D consists of involutions, one per left cell", kClaim,
          check_distinguished(sys, t.cells));
  run.add("star", "c -> c s_I is a bijection of two-sided cells reversing <=_LR", kClaim, check_star(sys, t.cells));
  run.add("j_associativity", "(t_x t_y) t_z = t_x (t_y t_z) for all triples", kClaim, check_j_associativity(t.j));
  run.add("j_unit", "sum_{d in D} n_d t_d is a two-sided unit of J", kClaim, check_j_unit(t.j));
  run.add("gamma_cells", "gamma_{x,y,z} != 0 implies x ~L y^-1, y ~L z^-1, z ~L x^-1", kClaim,
          check_gamma_cells(sys, t.j, t.cells));
  run.add("psi_homomorphism", "psi(C'_x C'_y) = psi(C'_x) psi(C'_y) for all pairs, psi(1) = unit", kClaim,
          check_phi_homomorphism(sys, t.h, t.j, t.phi));
  {
    Outcome o;
    o.count();
    if (!t.phi.invertible) o.fail("psi at v = 1 is singular on the group algebra");
    run.add("psi_invertible", "psi at v = 1 is invertible from Q[W] to Q (x) J", kClaim, o);
  }
  const std::string emb = "c -> c^! well defined and injective, c^! meets W^sigma in c, (c*)^! = (c^!)*";
  const std::string res = "a on W^sigma equals the restriction of a on W";
  if (!sys.is_fixed_subsystem()) {
    run.skip("embedding", emb, kClaim, "sigma = id");
    run.skip("a_restriction", res, kClaim, "sigma = id");
  } else if (auto* big = p.ambient_cell_tables()) {
    run.add("embedding", emb, kClaim, p.embedding().outcome);
    run.add("a_restriction", res, kClaim, check_a_restriction(*big->sys, big->cells, sys, t.cells));
  } else {
    const std::string why = "ambient group exceeds " + std::to_string(kMaxCellOrder) + " elements";
    run.skip("embedding", emb, kClaim, why);
    run.skip("a_restriction", res, kClaim, why);
  }
}

void reps_suite(Pipeline& p, VerifyReport& rep) {
  Runner run(rep, "reps");
  auto& t = p.cell_tables();
  const auto& sys = *t.sys;
  const auto& g = sys.group();
  const auto& r = p.reps();
  run.add("orthogonality", "row and column orthogonality, sum of dim^2 = |W|", kInternal, check_orthogonality(r.table));
  run.add("models", "matrix models satisfy the Coxeter relations and have the right characters", kInternal,
          check_models(g, r.table, r.models));
  run.add("delta_intertwiner", "Delta rho(w) = rho(delta(w)) Delta, Delta of finite order, unique up to sign",
          kClaim, check_delta_extensions(g, r.models, r.ext, r.delta));
  {
    Outcome o;
    for (std::size_t e = 0; e < r.ext.size(); ++e) {
      o.count();
      if (r.ext[e].stable && r.ext[e].m_size != 2)
        o.fail("E" + std::to_string(e) + " is delta-stable but |M_E| = " + std::to_string(r.ext[e].m_size) +
               (r.ext[e].note.empty() ? "" : " (" + r.ext[e].note + ")"));
    }
    run.add("m_e_size", "|M_E| = 2 for every delta-stable E", kClaim, o);
  }
  run.add("spade_module", "E_spade is a unital J-module on one two-sided cell, t_{delta(w)} Delta = Delta t_w",
          kClaim, r.sharp);
  run.add("rep_cells", "E^dagger^dagger = E, a' = a o dagger, every two-sided cell carries some E", kClaim,
          check_rep_cells(r, t.cells));
  run.add("specialization", "tr(Delta T_w, E_{v^2}) at v = 1 equals tr(Delta rho_E(w))", kClaim,
          check_specialization(sys, r));
  run.add("leading_bound", "tr(Delta T_w, E_{v^2}) has no exponent above L(w) + a'_E, integral top coefficient",
          kClaim, r.bound);
  run.add("cprime_cross", "c'_{w,Delta,E} equals the t_w trace on E^dagger_spade", kInternal,
          check_cprime_cross(sys, r));
  run.add("a_support", "A_w is supported on E with c_E = c* for the two-sided cell c of w", kClaim,
          check_a_support(sys, r, t.cells));
  run.add("a_span", "each E in Irr_delta lies in the span of A_x, x in (c_E)*", kClaim, check_a_span(sys, r, t.cells));
  run.add("pairing", "D(E, E') = 0 for E != E' and D(E, E)(1) = |W|", kClaim, check_pairing(sys, r));
  run.add("leading_decomposition",
          "top part of tr(Delta v^{L(w)} C'_w) = A_w + sum over w' strictly below w in <=_LR", kClaim,
          check_leading_decomposition(sys, r, t.cells));
}

void oracle_suite(Pipeline& p, VerifyReport& rep) {
  Runner run(rep, "oracle");
  const auto& o = p.oracle();
  run.add("field", "finite field axioms", kInternal, o.variety->field().check_axioms());
  run.add("positions", "relative position is a well-defined, F-compatible, G-invariant map to W^sigma", kInternal,
          check_positions(o));
  const auto& rc = p.r_counts();
  run.add("r_counts", "R_{x,y}(q) q^{L(x)} = N_{y, s_I, x s_I} for all x, y", kClaim, rc.identity);
  run.add("r_counts_base", "N_{y, s_I, x s_I} does not depend on the base pair", kClaim, rc.well_defined);
  run.add("hecke_module", "T_s acts on functions on flags by the quadratic relation with q^{L(s)} neighbours",
          kClaim, verify_hecke_module(o, p.jobs()));
  run.add("n_table", "N_{w,w',w''} does not depend on the base pair", kClaim, p.n_table().well_defined);
}

const char* status_word(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIP";
  }
  return "?";
}

}  // namespace

int VerifyReport::exit_code() const {
  int code = 0;
  for (const auto& c : checks) {
    if (c.status != CheckStatus::Fail) continue;
    if (c.kind == CheckKind::Internal) return 2;
    code = 1;
  }
  return code;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << "system " << system << "\n";
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) {
    os << "[" << status_word(c.status) << "] " << c.id << " (" << (c.kind == CheckKind::Claim ? "claim" : "internal")
       << ", " << c.checked << " cases): " << c.statement;
    if (!c.detail.empty()) os << "\n       " << c.detail;
    os << "\n";
    (c.status == CheckStatus::Pass ? pass : c.status == CheckStatus::Fail ? fail : skip)++;
  }
  os << pass << " passed, " << fail << " failed, " << skip << " skipped; exit " << exit_code() << "\n";
  return os.str();
}

nlohmann::json VerifyReport::json() const {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"id", c.id}, {"suite", c.suite}, {"statement", c.statement},
                   {"kind", c.kind == CheckKind::Claim ? "claim" : "internal"}, {"status", status_word(c.status)},
                   {"checked", c.checked}, {"detail", c.detail}});
  return {{"system", system}, {"suites", suites}, {"checks", std::move(arr)}, {"exit_code", exit_code()}};
}

VerifyReport run_verify(Pipeline& p, const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite '" + suite + "' (hecke, cells, reps, oracle, all)");
  VerifyReport rep;
  rep.system = p.system().descriptor();
  const bool all = suite == "all";
  if (all || suite == "hecke") {
    rep.suites.push_back("hecke");
    hecke_suite(p, rep);
  }
  if (all || suite == "cells") {
    rep.suites.push_back("cells");
    cells_suite(p, rep);
  }
  if (all || suite == "reps") {
    rep.suites.push_back("reps");
    reps_suite(p, rep);
  }
  if (suite == "oracle" || (all && p.setup().config.oracle.enabled())) {
    rep.suites.push_back("oracle");
    oracle_suite(p, rep);
  }
  return rep;
}

}  // namespace twistkl
