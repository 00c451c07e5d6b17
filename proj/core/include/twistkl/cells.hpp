#pragma once

// Cell preorders and partitions on the unsigned C'-basis, the a-function,
// distinguished involutions, the ring J and the homomorphism psi: H -> A (x) J.

#include <cstdint>
#include <vector>

#include "twistkl/hecke.hpp"
#include "twistkl/ratmat.hpp"

namespace twistkl {

/// A preorder on {0..n-1} stored as bitset rows: above(x) = {y : x <= y}.
class Preorder {
 public:
  Preorder() = default;
  explicit Preorder(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}
  std::size_t size() const { return n_; }
  bool leq(std::size_t x, std::size_t y) const {
    return (rows_[x * words_ + y / 64] >> (y % 64)) & 1U;
  }
  void set(std::size_t x, std::size_t y) { rows_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64); }
  /// Reflexive-transitive closure.
  void close();
  /// Union with another preorder on the same set (not closed).
  void unite(const Preorder& o);

 private:
  std::size_t n_ = 0, words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Partition of the classes of mutual comparability, cells ordered by their
/// smallest member.
struct Partition {
  std::vector<int> cell_of;
  std::vector<std::vector<ElementId>> cells;
};

struct CellData {
  Preorder left, right, two_sided;
  Partition left_cells, right_cells, two_cells;
  std::vector<int> a;          // a-function
  std::vector<int> delta;      // L(z) - 2 deg P_{e,z}
  std::vector<mpz_class> n;    // leading coefficient of P_{e,z}
  std::vector<ElementId> distinguished;
  std::vector<bool> is_distinguished;
  std::vector<int> star;       // two-sided cell c -> c s_I
};

/// Builds preorders from C'_s C'_w, the cell partitions, a, Delta, n, the set of
/// distinguished involutions {a = Delta}, and the star map (when it is well
/// defined; otherwise star[c] = -1).
CellData compute_cells(const WeightedSystem& sys, const StructureConstants& hc, const XTable& p);

/// The left-cell, a-function and star facts: a constant on two-sided cells,
/// a(z) = a(z^-1), a <= Delta, every distinguished element an involution, one
/// per left cell.
Outcome check_distinguished(const WeightedSystem& sys, const CellData& cells);
Outcome check_a_function(const WeightedSystem& sys, const CellData& cells);
/// c s_I = s_I c is a two-sided cell and c -> c* reverses <=_LR; w -> w s_I maps
/// left cells to left cells.
Outcome check_star(const WeightedSystem& sys, const CellData& cells);

struct JRing {
  using Row = std::vector<std::pair<ElementId, mpz_class>>;
  std::size_t n = 0;
  std::vector<Row> mul;  // mul[x * n + y]: t_x t_y = sum (z, gamma_{x,y,z^-1}) t_z
  Row unit;              // sum over distinguished d of n_d t_d
  const Row& product(ElementId x, ElementId y) const { return mul[x * n + y]; }
};

JRing build_j_ring(const WeightedSystem& sys, const StructureConstants& hc, const CellData& cells);
Outcome check_j_associativity(const JRing& j);
Outcome check_j_unit(const JRing& j);
/// gamma_{x,y,z} != 0 implies x ~_L y^-1, y ~_L z^-1, z ~_L x^-1.
Outcome check_gamma_cells(const WeightedSystem& sys, const JRing& j, const CellData& cells);

/// Multiplies two elements of A (x) J given as dense coefficient vectors.
std::vector<LaurentZ> j_multiply(const JRing& j, const std::vector<LaurentZ>& a,
                                 const std::vector<LaurentZ>& b);

struct PhiMap {
  /// image[w][z]: coefficient of t_z in psi(C'_w).
  std::vector<std::vector<LaurentZ>> image;
  /// K[u][z]: coefficient of t_z in psi_Q(u) for a group element u.
  QMatrix group_to_j;
  /// M[u][z]: coefficient of u in psi_Q^{-1}(t_z).
  QMatrix j_to_group;
  bool invertible = false;
};

/// psi(C'_w) = sum over d in D, z with a(z) = a(d) of h_{w,d,z} n_d t_z, and its
/// specialization at v = 1 in the group basis.
PhiMap build_phi(const WeightedSystem& sys, const StructureConstants& hc, const CellData& cells,
                 const XTable& p);
/// psi(C'_x C'_y) = psi(C'_x) psi(C'_y) for all pairs, and psi(C'_e) = unit.
Outcome check_phi_homomorphism(const WeightedSystem& sys, const StructureConstants& hc,
                               const JRing& j, const PhiMap& phi);

/// Image in A (x) J of an arbitrary Hecke element.
std::vector<LaurentZ> apply_phi(const WeightedSystem& sys, const PhiMap& phi,
                                const std::vector<HeckeElement>& cprime, const HeckeElement& x);

/// For cells of W^sigma inside the cells of W: c -> c^! and the facts that it is
/// well defined, injective, c^! meets W^sigma in c, and (c*)^! = (c^!)*.
struct CellEmbedding {
  std::vector<int> bang;  // W^sigma two-sided cell -> W two-sided cell (-1 if undefined)
  Outcome outcome;
};
CellEmbedding cell_embedding_check(const WeightedSystem& big, const CellData& big_cells,
                                   const WeightedSystem& sub, const CellData& sub_cells);
/// a on W^sigma equals the restriction of a on W.
Outcome check_a_restriction(const WeightedSystem& big, const CellData& big_cells,
                            const WeightedSystem& sub, const CellData& sub_cells);

}  // namespace twistkl
