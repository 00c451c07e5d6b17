#pragma once

// The Hecke algebra of a weighted Coxeter system over Z[v, v^-1], normalized by
// (T_s - v^{2L(s)})(T_s + 1) = 0, and the polynomial families R, P, Q computed
// from it. Elements are stored densely in the T-basis.

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "twistkl/laurent.hpp"
#include "twistkl/outcome.hpp"
#include "twistkl/weyl.hpp"

namespace twistkl {

struct HeckeElement {
  std::vector<LaurentZ> c;  // coefficient of T_w at index w

  bool is_zero() const;
  std::vector<ElementId> support() const;
  HeckeElement& add_scaled(const HeckeElement& o, const LaurentZ& f);
  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.c == b.c; }
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }
};

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(std::shared_ptr<const WeightedSystem> sys);

  const WeightedSystem& system() const { return *sys_; }
  const std::shared_ptr<const WeightedSystem>& system_ptr() const { return sys_; }
  std::size_t size() const { return sys_->size(); }

  HeckeElement zero() const;
  HeckeElement basis(ElementId w) const;
  HeckeElement scalar(const LaurentZ& a) const;

  HeckeElement left_generator(int s, const HeckeElement& x) const;   // T_s x
  HeckeElement right_generator(const HeckeElement& x, int s) const;  // x T_s
  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const;

  /// T_w^{-1} in the T-basis, verified by multiplying back to T_e.
  const HeckeElement& t_inverse(ElementId w) const;
  /// The ring involution a T_w -> bar(a) T_{w^-1}^{-1}.
  HeckeElement bar(const HeckeElement& x) const;
  /// The ring automorphism T_s -> (v^{2L(s)} - 1) - T_s, i.e.
  /// T_w -> sgn(w) v^{2L(w)} bar(T_w).
  HeckeElement dagger(const HeckeElement& x) const;

  std::string str(const HeckeElement& x) const;

 private:
  void build_inverses() const;

  std::shared_ptr<const WeightedSystem> sys_;
  mutable std::once_flag inverses_once_;
  mutable std::vector<HeckeElement> inverse_;
};

/// Square table of X-polynomials indexed [first][second].
using XTable = std::vector<std::vector<XPoly>>;

/// R_{x,y} from T_y = sum_x R_{x,y}(v^2) v^{2L(x)} bar(T_x), by a unitriangular
/// solve per y. Throws InternalError on a non-polynomial residue or support off
/// the Bruhat interval.
XTable compute_r_table(const HeckeAlgebra& h, unsigned jobs = 1);

/// P_{y,w} from
///   v^{2L(w)} P_{y,w}(v^-2) = sum_{y<=z<=w} v^{2L(y)} R_{y,z}(v^2) P_{z,w}(v^2)
/// by reading coefficients on the disjoint exponent families and asserting the
/// remainder vanishes.
XTable compute_p_table(const WeightedSystem& sys, const XTable& r, unsigned jobs = 1);

/// Q_{y,w} from sum_z sgn(z)sgn(w) P_{y,z} Q_{z,w} = delta_{y,w} by back-substitution.
XTable compute_q_table(const WeightedSystem& sys, const XTable& p, unsigned jobs = 1);

/// C'_w = v^{-L(w)} sum_y P_{y,w}(v^2) T_y.
std::vector<HeckeElement> c_basis_unsigned(const HeckeAlgebra& h, const XTable& p);
/// C_w = sum_y sgn(y)sgn(w) P_{y,w}(v^-2) v^{L(w)-2L(y)} T_y.
std::vector<HeckeElement> c_basis_signed(const HeckeAlgebra& h, const XTable& p);
/// The second expression sum_y sgn(y)sgn(w) P_{y,w}(v^2) v^{-L(w)+2L(y)} bar(T_y).
HeckeElement c_signed_barred_form(const HeckeAlgebra& h, const XTable& p, ElementId w);

/// Coordinates of x in a unitriangular basis b (b[z] has leading term
/// v^{-L(z)} T_z and is supported on lower ids).
std::vector<LaurentZ> to_basis(const WeightedSystem& sys, HeckeElement x,
                               const std::vector<HeckeElement>& b);

/// h_{x,y,z} with C'_x C'_y = sum_z h_{x,y,z} C'_z, stored sparsely per (x, y).
class StructureConstants {
 public:
  using Row = std::vector<std::pair<ElementId, LaurentZ>>;

  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), rows_(n * n) {}
  std::size_t size() const { return n_; }
  const Row& row(ElementId x, ElementId y) const { return rows_[x * n_ + y]; }
  Row& row(ElementId x, ElementId y) { return rows_[x * n_ + y]; }
  LaurentZ get(ElementId x, ElementId y, ElementId z) const;

 private:
  std::size_t n_ = 0;
  std::vector<Row> rows_;
};

StructureConstants compute_structure_constants(const HeckeAlgebra& h,
                                               const std::vector<HeckeElement>& cprime,
                                               const XTable& p, unsigned jobs = 1);

// Exhaustive identity checks. They never throw for a mathematical failure;
// the outcome records the first counterexample.

/// T_y T_{s_I} = sum_{x<=y} R_{x,y}(v^2) v^{2L(x)} T_{x s_I}.
Outcome check_r_product_identity(const HeckeAlgebra& h, const XTable& r);
/// The defining identity of P, re-evaluated on the finished table.
Outcome check_p_identity(const WeightedSystem& sys, const XTable& r, const XTable& p);
/// sum_z sgn(zw) P_{y,z} Q_{z,w} = delta_{y,w}.
Outcome check_q_inversion(const WeightedSystem& sys, const XTable& p, const XTable& q);
/// Degree bound (L(w)-L(y)-1)/2, unit diagonal and Bruhat support for a table.
Outcome check_degree_bounds(const WeightedSystem& sys, const XTable& t, const std::string& name);
/// bar(b_w) = b_w for every basis element.
Outcome check_bar_invariance(const HeckeAlgebra& h, const std::vector<HeckeElement>& basis,
                             const std::string& name);
/// Both displayed forms of the signed basis agree.
Outcome check_signed_forms_agree(const HeckeAlgebra& h, const XTable& p,
                                 const std::vector<HeckeElement>& signed_basis);
/// R_{x,y} = 0 unless x <= y, R_{w,w} = 1.
Outcome check_r_support(const WeightedSystem& sys, const XTable& r);
/// C'_x C'_y recomputed by direct multiplication for all pairs (x, y).
Outcome check_structure_constants(const HeckeAlgebra& h, const std::vector<HeckeElement>& cprime,
                                  const StructureConstants& hc);

}  // namespace twistkl
