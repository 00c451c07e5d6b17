#pragma once

// Finite Weyl groups enumerated from a Cartan matrix, their Bruhat order,
// diagram automorphisms, and weighted Coxeter systems (W with L = l, or the
// fixed-point subgroup W^sigma with L = restriction of l).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twistkl {

using ElementId = std::uint32_t;
/// Generator indices, 0-based internally. Text forms are 1-based digits.
using Word = std::vector<int>;
using IntMatrix = std::vector<std::vector<int>>;

inline constexpr std::size_t kMaxGroupOrder = 1152;

/// A Cartan type such as A3, B2, G2.
struct CoxeterDescriptor {
  char type = 'A';
  int rank = 1;

  /// Parses "A3", "B2", "D4", "G2". Throws ConfigError.
  static CoxeterDescriptor parse(std::string_view text);
  std::string label() const;
  IntMatrix cartan_matrix() const;
  IntMatrix coxeter_matrix() const;
};

/// Validates a Coxeter matrix: symmetric, 1 on the diagonal, entries in
/// {2,3,4,6} off it. Throws ConfigError.
void validate_coxeter_matrix(const IntMatrix& m);

/// A finite Coxeter group, fully enumerated. Element ids are assigned in
/// (length, lexicographically least reduced word) order, so the identity is 0
/// and every prefix of a canonical word is itself canonical.
class CoxeterGroup {
 public:
  /// Enumerates the group of a (finite type) Cartan matrix. Throws SizeError
  /// when the order exceeds `cap`.
  static CoxeterGroup from_cartan(const IntMatrix& cartan, std::size_t cap = kMaxGroupOrder);
  /// Picks a crystallographic Cartan matrix realizing the Coxeter matrix and
  /// enumerates it. Requires a forest-shaped Coxeter graph.
  static CoxeterGroup from_coxeter_matrix(const IntMatrix& m, std::size_t cap = kMaxGroupOrder);

  std::size_t size() const { return length_.size(); }
  int rank() const { return rank_; }
  ElementId identity() const { return 0; }

  int length(ElementId w) const { return length_[w]; }
  const Word& word(ElementId w) const { return word_[w]; }
  ElementId left(int s, ElementId w) const { return left_[w * rank_ + s]; }    // s*w
  ElementId right(ElementId w, int s) const { return right_[w * rank_ + s]; }  // w*s
  ElementId inverse(ElementId w) const { return inverse_[w]; }
  ElementId multiply(ElementId x, ElementId y) const;
  ElementId from_word(const Word& w) const;
  bool is_right_descent(ElementId w, int s) const { return length(right(w, s)) < length(w); }
  bool is_left_descent(ElementId w, int s) const { return length(left(s, w)) < length(w); }

  /// Longest element of the standard parabolic subgroup on `subset`.
  ElementId longest_element(const std::vector<int>& subset) const;
  ElementId longest_element() const;

  /// Bruhat order x <= y, from the precomputed subword-criterion table.
  bool bruhat_leq(ElementId x, ElementId y) const {
    return (bruhat_[y][x / 64] >> (x % 64)) & 1U;
  }
  /// All x with x <= y, ascending id.
  std::vector<ElementId> bruhat_interval_below(ElementId y) const;

  IntMatrix coxeter_matrix() const;
  int order_of(ElementId w) const;

  /// "e" or 1-based digits of the canonical word.
  std::string word_string(ElementId w) const;
  /// Accepts "e", "2132" or "s2s1s3s2". nullopt if unparsable or out of range.
  std::optional<ElementId> parse_element(std::string_view text) const;

 private:
  void build_bruhat();

  int rank_ = 0;
  std::vector<int> length_;
  std::vector<Word> word_;
  std::vector<ElementId> left_, right_, inverse_;
  std::vector<std::vector<std::uint64_t>> bruhat_;  // bruhat_[y] bitset of {x <= y}
};

/// Permutation of the generator index set preserving the Coxeter matrix.
class DiagramAutomorphism {
 public:
  DiagramAutomorphism() = default;
  explicit DiagramAutomorphism(std::vector<int> perm) : perm_(std::move(perm)) {}
  static DiagramAutomorphism identity(int rank);
  /// Parses "1:3,3:1,2:2" (1-based, unlisted indices fixed) or "id". Throws ConfigError.
  static DiagramAutomorphism parse(std::string_view text, int rank);

  int rank() const { return static_cast<int>(perm_.size()); }
  int operator()(int i) const { return perm_[i]; }
  const std::vector<int>& permutation() const { return perm_; }
  bool is_identity() const;
  int order() const;
  /// Throws ConfigError unless m(perm(i), perm(j)) = m(i, j).
  void validate(const IntMatrix& coxeter) const;
  ElementId apply(const CoxeterGroup& g, ElementId w) const;
  DiagramAutomorphism compose(const DiagramAutomorphism& inner) const;  // this o inner
  std::string str() const;
  /// sigma-orbits on the index set, each sorted, ordered by smallest member.
  std::vector<std::vector<int>> orbits() const;

  friend bool operator==(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;

 private:
  std::vector<int> perm_;
};

/// A Coxeter system together with an integer weight function L. For W itself
/// L = l; for W^sigma the generators are the longest elements s_omega of the
/// sigma-orbit parabolics and L is the length in W.
class WeightedSystem {
 public:
  static std::shared_ptr<const WeightedSystem> build_weyl(const CoxeterDescriptor& d);

  const std::string& descriptor() const { return descriptor_; }
  const CoxeterGroup& group() const { return group_; }
  std::size_t size() const { return group_.size(); }
  int rank() const { return group_.rank(); }

  /// Coxeter length of the system itself (l-dot on W^sigma).
  int length(ElementId w) const { return group_.length(w); }
  int weight(ElementId w) const { return weight_[w]; }
  int generator_weight(int s) const { return gen_weight_[s]; }
  int sign(ElementId w) const { return group_.length(w) % 2 == 0 ? 1 : -1; }
  int max_weight() const { return weight_.back(); }

  /// Ambient W and the embedding (identity map when this is W itself).
  const CoxeterGroup& ambient() const { return ambient_ ? *ambient_ : group_; }
  std::shared_ptr<const CoxeterGroup> ambient_ptr() const { return ambient_; }
  ElementId embed(ElementId w) const { return ambient_ ? embed_[w] : w; }
  std::optional<ElementId> locate(ElementId ambient_id) const;
  const DiagramAutomorphism& sigma() const { return sigma_; }
  const CoxeterDescriptor& type() const { return type_; }
  /// For W^sigma: the sigma-orbit behind each generator.
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  bool is_fixed_subsystem() const { return static_cast<bool>(ambient_); }

  /// Ambient canonical word of w (1-based digits, "e" for identity).
  std::string ambient_word(ElementId w) const { return ambient().word_string(embed(w)); }
  /// Parses an ambient word and locates it here.
  std::optional<ElementId> parse_element(std::string_view text) const;

  ElementId longest_element() const { return group_.longest_element(); }

  friend std::shared_ptr<const WeightedSystem> fixed_subgroup(
      const std::shared_ptr<const WeightedSystem>&, const DiagramAutomorphism&);

 private:
  std::string descriptor_;
  CoxeterDescriptor type_;
  CoxeterGroup group_;
  std::vector<int> weight_;
  std::vector<int> gen_weight_;
  std::shared_ptr<const CoxeterGroup> ambient_;
  std::vector<ElementId> embed_;
  std::vector<std::int64_t> locate_;
  DiagramAutomorphism sigma_;
  std::vector<std::vector<int>> orbits_;
};

/// W^sigma with generators s_omega and weight l|_{W^sigma}. Verifies closure,
/// the Coxeter presentation (by isomorphism with the abstract Coxeter group of
/// the computed Coxeter matrix), the weight-function property and that the
/// intrinsic Bruhat order equals the restriction of the ambient one. Any
/// failure is an InternalError. `w` must be an unweighted Weyl system.
std::shared_ptr<const WeightedSystem> fixed_subgroup(
    const std::shared_ptr<const WeightedSystem>& w, const DiagramAutomorphism& sigma);

/// The automorphism of W^sigma induced by delta (which must commute with sigma),
/// as a permutation of the W^sigma generators. Throws ConfigError.
DiagramAutomorphism restrict_automorphism(const WeightedSystem& sys,
                                          const DiagramAutomorphism& delta);

}  // namespace twistkl
