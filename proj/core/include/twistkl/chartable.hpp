#pragma once

// Rational representation theory of a finite Coxeter group: conjugacy classes,
// the character table (Dixon's modular method with an exact integer lift),
// explicit rational matrix models and delta-twisted intertwiners.

#include <string>
#include <vector>

#include "twistkl/outcome.hpp"
#include "twistkl/ratmat.hpp"
#include "twistkl/weyl.hpp"

namespace twistkl {

struct ConjugacyClasses {
  std::vector<int> class_of;
  std::vector<std::vector<ElementId>> classes;  // ordered by smallest member
  std::vector<int> inverse_class;
  ElementId rep(int k) const { return classes[k].front(); }
};

ConjugacyClasses conjugacy_classes(const CoxeterGroup& g);

struct CharacterTable {
  std::size_t order = 0;
  ConjugacyClasses classes;
  /// values[i][k]: character i on class k. Sorted by dimension, then by value
  /// vector descending, so the trivial character comes first.
  std::vector<std::vector<long>> values;

  std::size_t size() const { return values.size(); }
  long dim(std::size_t i) const { return values[i][0]; }
  long value(std::size_t i, ElementId w) const { return values[i][classes.class_of[w]]; }
  /// Index of the character equal to chi_i times the sign character.
  int tensor_sign(std::size_t i, const CoxeterGroup& g) const;
  /// Index of the character chi_i o delta.
  int twist(std::size_t i, const CoxeterGroup& g, const DiagramAutomorphism& delta) const;
};

/// Throws InternalError when the modular computation or its exact lift fails.
CharacterTable character_table(const CoxeterGroup& g);
/// Row and column orthogonality, sum of squared dimensions, integrality.
Outcome check_orthogonality(const CharacterTable& t);

struct MatrixModel {
  std::vector<QMatrix> generators;  // rho(s)
  std::vector<QMatrix> elements;    // rho(w) for every w
  std::size_t dim() const { return generators.empty() ? 0 : generators.front().rows(); }
};

/// One model per character, spun from e_E e_lambda in Q[W] for a subgroup H and
/// a linear character lambda with <Res E, lambda> = 1. Throws InternalError if
/// no such pair is found or the model fails verification.
std::vector<MatrixModel> matrix_models(const CoxeterGroup& g, const CharacterTable& t);
/// Coxeter relations and characters of the models.
Outcome check_models(const CoxeterGroup& g, const CharacterTable& t, const std::vector<MatrixModel>& m);

struct DeltaExtension {
  bool stable = false;   // chi o delta = chi
  int m_size = 0;        // |M_E|: 0 or 2
  int order = 1;         // order of delta
  QMatrix delta;         // canonical element of M_E when m_size == 2
  QMatrix delta_inverse;
  std::string note;
};

/// Solves Delta rho(w) = rho(delta(w)) Delta, scales to finite order and fixes
/// the sign (trace > 0, else first nonzero entry > 0).
std::vector<DeltaExtension> delta_extensions(const CoxeterGroup& g, const CharacterTable& t,
                                             const std::vector<MatrixModel>& models,
                                             const DiagramAutomorphism& delta);
/// Intertwining for all w, finite order, uniqueness up to sign.
Outcome check_delta_extensions(const CoxeterGroup& g, const std::vector<MatrixModel>& models,
                               const std::vector<DeltaExtension>& ext, const DiagramAutomorphism& delta);

}  // namespace twistkl
