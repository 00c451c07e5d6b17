#pragma once

// Brute-force flag varieties over small finite fields: complete flags in F^n
// fixed by a (possibly twisted) Frobenius map, their relative positions in
// S_n, the counts N_{w,w',w''} and the Hecke-module structure on functions.

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "twistkl/hecke.hpp"
#include "twistkl/outcome.hpp"

namespace twistkl {

/// F_{p^k} with p^k <= 16 as addition and multiplication tables. Elements are
/// the integers 0..q-1 read as base-p digit vectors over a fixed irreducible.
class FiniteField {
 public:
  static FiniteField make(int q);  // ConfigError unless q is a prime power <= 16

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
  std::uint8_t pow(std::uint8_t a, int e) const;

  /// Associativity, commutativity, distributivity, identities and inverses.
  Outcome check_axioms() const;

 private:
  int p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

inline constexpr int kMaxFlagRank = 4;
inline constexpr std::size_t kMaxFlags = 3000;

/// Complete flag in F^n: row i is the normalized representative of V_{i+1}/V_i
/// (zero on the pivots of earlier rows, leading entry 1).
struct Flag {
  std::array<std::array<std::uint8_t, kMaxFlagRank>, kMaxFlagRank> row{};
  friend bool operator==(const Flag&, const Flag&) = default;
};

using Permutation = std::vector<int>;

/// Flags over F_q (untwisted) or over F_{q^2} with
/// F(V)_i = perp(Frob_q(V_{n-i})) for the antidiagonal unit form (twisted).
class FlagVariety {
 public:
  FlagVariety(int n, int q, bool twisted);

  int n() const { return n_; }
  int q() const { return q_; }
  bool twisted() const { return twisted_; }
  const FiniteField& field() const { return field_; }
  /// Number of F-stable flags.
  std::size_t size() const { return flags_.size(); }
  const Flag& flag(std::size_t i) const { return flags_[i]; }

  /// The Frobenius map on arbitrary flags over the ambient field.
  Flag frobenius(const Flag& f) const;
  /// Flag spanned by the prefixes of the rows of an invertible matrix.
  Flag from_basis(const std::vector<std::vector<std::uint8_t>>& rows) const;
  /// g . f for an invertible matrix g acting on column vectors.
  Flag act(const std::vector<std::vector<std::uint8_t>>& g, const Flag& f) const;
  /// Random flag or invertible matrix over the ambient field.
  std::vector<std::vector<std::uint8_t>> random_invertible(std::mt19937_64& rng) const;

  /// The permutation w with w(j) = i at the jump of dim(V_i cap V'_j).
  /// Throws InternalError if the jumps do not form a permutation.
  Permutation relative_position(const Flag& a, const Flag& b) const;

 private:
  void enumerate();

  int n_, q_;
  bool twisted_;
  FiniteField field_;
  std::vector<Flag> flags_;
};

/// The flag variety together with the matching weighted system: A_{n-1}, or
/// its fixed subgroup under the diagram flip when twisted. Positions of all
/// F-stable pairs are stored as element ids of that system.
struct FlagOracle {
  std::shared_ptr<const WeightedSystem> ambient;  // A_{n-1}
  std::shared_ptr<const WeightedSystem> system;   // W or W^sigma
  std::shared_ptr<const FlagVariety> variety;
  std::vector<ElementId> perm_to_ambient;  // indexed by encode(permutation)
  std::vector<Permutation> ambient_perm;   // ambient id -> permutation
  std::vector<std::uint16_t> position;     // size()^2, system ids

  std::size_t size() const { return variety->size(); }
  ElementId pos(std::size_t a, std::size_t b) const { return position[a * size() + b]; }
  ElementId ambient_position(const Flag& a, const Flag& b) const;
};

/// Validates the caps (2 <= n <= 4, q^(1 or 2) <= 16, twisted q in {2, 3},
/// at most kMaxFlags flags), enumerates and fills the position table.
/// Throws ConfigError or SizeError for bad parameters and InternalError when
/// an F-stable pair lands outside W^sigma.
FlagOracle build_flag_oracle(int n, int q, bool twisted, unsigned jobs = 1);

/// pos(f, f) = e, pos(g, f) = pos(f, g)^-1, every orbit nonempty, F(f) = f on
/// the list; on random flags over the ambient field: equivariance under GL_n,
/// (F f, F g) in position sigma(w), and F o F = id when twisted.
Outcome check_positions(const FlagOracle& o, std::uint64_t seed = 1);

struct RCountRow {
  ElementId x, y;
  mpz_class lhs, rhs;  // R_{x,y}(q) q^{L(x)} and N_{y, s_I, x s_I}
};

struct RCountReport {
  std::vector<RCountRow> rows;
  Outcome identity;        // lhs == rhs for every (x, y)
  Outcome well_defined;    // N independent of the base pair
};

/// R_{x,y}(q) q^{L(x)} = N_{y,s_I,x s_I} for all x, y, with N counted from
/// every base pair.
RCountReport verify_r_counts(const FlagOracle& o, const XTable& r, unsigned jobs = 1);

/// T_s T_w as counts for every generator s, w and pair, including the
/// quadratic relation; q^{L(s)} neighbors in position s; linear independence
/// of the T_w (disjoint nonempty supports).
Outcome verify_hecke_module(const FlagOracle& o, unsigned jobs = 1);

/// Neighbors of each flag in position s for each generator (histogram).
std::vector<std::vector<std::size_t>> neighbor_counts(const FlagOracle& o);

/// N_{w,w',w''} from the first base pair of each w''; when the variety has at
/// most `full_check_limit` flags every base pair is checked as well.
struct NTable {
  std::size_t n = 0;  // |W^sigma|
  std::vector<long> count;  // [(w * n + w') * n + w'']
  std::vector<bool> has_base;  // per w''
  Outcome well_defined;
  long at(ElementId w, ElementId w1, ElementId w2) const { return count[(w * n + w1) * n + w2]; }
};
NTable count_n(const FlagOracle& o, std::size_t full_check_limit = 600, unsigned jobs = 1);

/// CSV with columns w,w',w'',count, sorted by ids.
std::string n_table_csv(const FlagOracle& o, const NTable& t);

}  // namespace twistkl
