#pragma once

// Representations of W through the ring J: the J-modules E_spade, the
// H-modules E_{v^2}, twisted traces, leading coefficients c'_{w,Delta,E}, the
// vectors A_w, the pairing D(E, E') and the lower-cell decomposition of the
// leading part of tr(Delta C'_w).
//
// Convention: E_{v^2} is pulled back along Phi = psi o dagger, where psi is
// the map of cells.hpp built on C'_w and dagger is HeckeAlgebra::dagger.

#include <vector>

#include "twistkl/cells.hpp"
#include "twistkl/chartable.hpp"

namespace twistkl {

struct RepPackage {
  CharacterTable table;
  std::vector<MatrixModel> models;
  std::vector<DeltaExtension> ext;
  DiagramAutomorphism delta;

  std::vector<int> irr;      // characters with |M_E| = 2, ascending
  std::vector<int> dagger;   // E -> E (x) sgn
  std::vector<int> cell;     // E -> two-sided cell carrying E_spade, -1 if several
  std::vector<int> a, a_prime;

  /// Indexed [k][w] with k running over irr.
  std::vector<std::vector<LaurentQ>> trace;      // tr(Delta T_w, E_{v^2})
  std::vector<std::vector<LaurentQ>> trace_inv;  // tr(Delta^-1 T_w, E_{v^2})

  /// Indexed [w][k].
  std::vector<std::vector<mpq_class>> cprime;        // coefficient of v^{L(w)+a'_E}
  std::vector<std::vector<mpq_class>> cprime_cross;  // tr(Delta' t_w, E^dagger_spade)
  std::vector<std::vector<mpq_class>> leading_part;        // coefficient of v^{L(w)+a(w)} in tr(Delta v^{L(w)} C'_w)

  /// Indexed [k][k'].
  std::vector<std::vector<LaurentQ>> pairing;          // sum_u v^{-2L(u)} tr(Delta T_u, E') tr(Delta^-1 T_{u^-1}, E)
  std::vector<std::vector<LaurentQ>> pairing_literal;  // sum_u v^{2L(u)} tr(Delta T_u, E') tr(Delta T_u, E)

  /// Facts established while building E_spade: rho(unit) = 1, single support
  /// cell, and t_{delta(w)} Delta = Delta t_w.
  Outcome sharp;
  /// No exponent above L(w) + a'_E, and integral coefficients there.
  Outcome bound;

  std::size_t index_of(int e) const;  // position of E in irr, or npos
};

/// Everything above for one weighted system. `delta` acts on the system's own
/// generators. Throws InternalError when a construction step fails.
RepPackage build_reps(const HeckeAlgebra& h, const std::vector<HeckeElement>& cprime,
                      const XTable& p, const CellData& cells, const PhiMap& phi,
                      const DiagramAutomorphism& delta, unsigned jobs = 1);

/// E^dagger^dagger = E, a' = a o dagger, every two-sided cell carries some E.
Outcome check_rep_cells(const RepPackage& r, const CellData& cells);
/// tr(Delta T_w, E_{v^2}) at v = 1 equals tr(Delta rho_E(w)).
Outcome check_specialization(const WeightedSystem& sys, const RepPackage& r);
/// c' agrees with the t_w-variant trace on E^dagger_spade.
Outcome check_cprime_cross(const WeightedSystem& sys, const RepPackage& r);
/// A_w is supported on E with c_E = c* for the cell c of w.
Outcome check_a_support(const WeightedSystem& sys, const RepPackage& r, const CellData& cells);
/// Each E in Irr_delta lies in the rational span of A_x for x in (c_E)*.
Outcome check_a_span(const WeightedSystem& sys, const RepPackage& r, const CellData& cells);
/// The pairing vanishes off the diagonal and equals |W| at v = 1 on it.
Outcome check_pairing(const WeightedSystem& sys, const RepPackage& r);
/// The leading part of tr(Delta v^{L(w)} C'_w) is A_w plus a rational
/// combination of A_{w'} for w' strictly below w in the two-sided preorder.
Outcome check_leading_decomposition(const WeightedSystem& sys, const RepPackage& r, const CellData& cells);

}  // namespace twistkl
