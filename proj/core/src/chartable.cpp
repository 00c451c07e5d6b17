#include "twistkl/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>

#include "twistkl/errors.hpp"

namespace twistkl {

ConjugacyClasses conjugacy_classes(const CoxeterGroup& g) {
  ConjugacyClasses cc;
  cc.class_of.assign(g.size(), -1);
  for (ElementId x = 0; x < g.size(); ++x) {
    if (cc.class_of[x] >= 0) continue;
    const int k = static_cast<int>(cc.classes.size());
    std::vector<ElementId> members{x};
    cc.class_of[x] = k;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int s = 0; s < g.rank(); ++s) {
        const ElementId y = g.left(s, g.right(members[i], s));
        if (cc.class_of[y] < 0) {
          cc.class_of[y] = k;
          members.push_back(y);
        }
      }
    std::sort(members.begin(), members.end());
    cc.classes.push_back(std::move(members));
  }
  for (const auto& c : cc.classes) cc.inverse_class.push_back(cc.class_of[g.inverse(c.front())]);
  return cc;
}

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

i64 pow_mod(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

i64 inv_mod(i64 a, i64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using ModMatrix = std::vector<std::vector<i64>>;  // row-major

// Nullspace basis of an r x m matrix over F_p.
std::vector<std::vector<i64>> nullspace_mod(ModMatrix a, i64 p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const i64 inv = inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const i64 f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<i64>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<i64> x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = mod(-a[i][f], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace

CharacterTable character_table(const CoxeterGroup& g) {
  CharacterTable t;
  t.order = g.size();
  t.classes = conjugacy_classes(g);
  const auto& cc = t.classes;
  const std::size_t r = cc.classes.size();
  const i64 order = static_cast<i64>(g.size());

  i64 p = 2 * order + 1;
  while (!is_prime(p)) ++p;

  // a[j][i][k] = #{x in C_j : x^-1 g_k in C_i}, so that C_j C_i = sum_k a[j][i][k] C_k.
  std::vector<ModMatrix> a(r, ModMatrix(r, std::vector<i64>(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k)
      for (ElementId x : cc.classes[j]) {
        const int i = cc.class_of[g.multiply(g.inverse(x), cc.rep(static_cast<int>(k)))];
        a[j][i][k] += 1;
      }

  // Common eigenvectors of the class matrices: split F_p^r by each A_j in turn.
  std::vector<std::vector<std::vector<i64>>> spaces;  // list of column bases
  {
    std::vector<std::vector<i64>> id;
    for (std::size_t c = 0; c < r; ++c) {
      std::vector<i64> e(r, 0);
      e[c] = 1;
      id.push_back(e);
    }
    spaces.push_back(id);
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::vector<std::vector<i64>>> next;
    for (auto& basis : spaces) {
      const std::size_t m = basis.size();
      if (m == 1) {
        next.push_back(basis);
        continue;
      }
      // A_j applied to each basis column.
      std::vector<std::vector<i64>> ab(m, std::vector<i64>(r, 0));
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = 0; i < r; ++i) {
          i64 s = 0;
          for (std::size_t k = 0; k < r; ++k) s = (s + a[j][i][k] * basis[c][k]) % p;
          ab[c][i] = s;
        }
      std::size_t found = 0;
      for (i64 lambda = 0; lambda < p && found < m; ++lambda) {
        ModMatrix mat(r, std::vector<i64>(m));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t c = 0; c < m; ++c) mat[i][c] = mod(ab[c][i] - lambda * basis[c][i], p);
        const auto null = nullspace_mod(mat, p);
        if (null.empty()) continue;
        std::vector<std::vector<i64>> sub;
        for (const auto& coeffs : null) {
          std::vector<i64> v(r, 0);
          for (std::size_t c = 0; c < m; ++c)
            for (std::size_t i = 0; i < r; ++i) v[i] = (v[i] + coeffs[c] * basis[c][i]) % p;
          sub.push_back(std::move(v));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      check_internal(found == m, "class matrix is not diagonalizable modulo p");
    }
    spaces = std::move(next);
  }
  check_internal(spaces.size() == r, "class matrices do not separate the characters");

  const int id_class = cc.class_of[g.identity()];
  for (auto& basis : spaces) {
    auto omega = basis.front();
    check_internal(omega[id_class] != 0, "central character vanishes on the identity");
    const i64 inv = inv_mod(omega[id_class], p);
    for (auto& x : omega) x = x * inv % p;
    i64 s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = (s + omega[k] * omega[cc.inverse_class[k]] % p *
                   inv_mod(static_cast<i64>(cc.classes[k].size()), p)) % p;
    check_internal(s != 0, "degenerate central character");
    const i64 d2 = order % p * inv_mod(s, p) % p;
    i64 d = 0;
    for (i64 c = 1; c * c <= order; ++c)
      if (c * c % p == d2) d = c;
    check_internal(d > 0, "character degree does not lift to an integer");
    std::vector<long> chi(r);
    for (std::size_t k = 0; k < r; ++k) {
      i64 v = omega[k] * d % p * inv_mod(static_cast<i64>(cc.classes[k].size()), p) % p;
      if (v > p / 2) v -= p;
      chi[k] = static_cast<long>(v);
    }
    t.values.push_back(std::move(chi));
  }
  std::sort(t.values.begin(), t.values.end(), [](const auto& x, const auto& y) {
    if (x[0] != y[0]) return x[0] < y[0];
    return x > y;
  });
  const auto o = check_orthogonality(t);
  check_internal(o.ok, "character table lift failed: " + o.detail);
  return t;
}

int CharacterTable::tensor_sign(std::size_t i, const CoxeterGroup& g) const {
  std::vector<long> target(values[i].size());
  for (std::size_t k = 0; k < target.size(); ++k)
    target[k] = values[i][k] * (g.length(classes.rep(static_cast<int>(k))) % 2 == 0 ? 1 : -1);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] == target) return static_cast<int>(j);
  return -1;
}

int CharacterTable::twist(std::size_t i, const CoxeterGroup& g, const DiagramAutomorphism& delta) const {
  std::vector<long> target(values[i].size());
  for (std::size_t k = 0; k < target.size(); ++k)
    target[k] = value(i, delta.apply(g, classes.rep(static_cast<int>(k))));
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] == target) return static_cast<int>(j);
  return -1;
}

Outcome check_orthogonality(const CharacterTable& t) {
  Outcome o;
  const auto& cc = t.classes;
  const std::size_t r = cc.classes.size();
  const long order = static_cast<long>(t.order);
  o.count();
  if (t.values.size() != r) o.fail("number of characters differs from number of classes");
  long dims = 0;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (t.dim(i) <= 0) o.fail("nonpositive degree");
    dims += t.dim(i) * t.dim(i);
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      long s = 0;
      for (std::size_t k = 0; k < r; ++k)
        s += static_cast<long>(cc.classes[k].size()) * t.values[i][k] * t.values[j][cc.inverse_class[k]];
      o.count();
      if (s != (i == j ? order : 0)) o.fail("row orthogonality fails");
    }
  }
  o.count();
  if (dims != order) o.fail("sum of squared degrees is " + std::to_string(dims));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      long s = 0;
      for (const auto& chi : t.values) s += chi[k] * chi[cc.inverse_class[l]];
      o.count();
      const long expect = k == l ? order / static_cast<long>(cc.classes[k].size()) : 0;
      if (s != expect) o.fail("column orthogonality fails");
    }
  return o;
}

namespace {

struct Candidate {
  std::vector<ElementId> elements;
  std::vector<int> lambda;  // +-1 per element
};

std::vector<ElementId> closure(const CoxeterGroup& g, const std::vector<ElementId>& gens) {
  std::vector<bool> in(g.size(), false);
  std::vector<ElementId> out{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (ElementId s : gens) {
      const ElementId y = g.multiply(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

MatrixModel spin_model(const CoxeterGroup& g, const CharacterTable& t, std::size_t e, const Candidate& c) {
  const std::size_t n = g.size();
  // u = sum_g chi(g^-1) g * sum_h lambda(h) h  (a scalar multiple of e_E e_lambda).
  QVector u(n);
  for (ElementId x = 0; x < n; ++x) {
    const long chi = t.value(e, g.inverse(x));
    if (chi == 0) continue;
    for (std::size_t k = 0; k < c.elements.size(); ++k)
      u[g.multiply(x, c.elements[k])] += chi * c.lambda[k];
  }
  EchelonBasis eb(n);
  check_internal(eb.insert(u), "spinning vector vanishes");
  const std::size_t d = static_cast<std::size_t>(t.dim(e));
  auto act = [&](int s, const QVector& x) {
    QVector y(n);
    for (ElementId w = 0; w < n; ++w)
      if (x[w] != 0) y[g.left(s, w)] = x[w];
    return y;
  };
  for (std::size_t idx = 0; idx < eb.size(); ++idx) {
    for (int s = 0; s < g.rank(); ++s) {
      eb.insert(act(s, eb.vectors()[idx]));
      check_internal(eb.size() <= d, "spun module exceeds the character degree");
    }
  }
  check_internal(eb.size() == d, "spun module is smaller than the character degree");
  MatrixModel m;
  for (int s = 0; s < g.rank(); ++s) {
    QMatrix rho(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto coords = eb.coordinates(act(s, eb.vectors()[j]));
      check_internal(coords.has_value(), "spun module is not stable");
      for (std::size_t i = 0; i < d; ++i) rho(i, j) = (*coords)[i];
    }
    m.generators.push_back(std::move(rho));
  }
  m.elements.resize(n);
  m.elements[0] = QMatrix::identity(d);
  for (ElementId w = 1; w < n; ++w) {
    const int s = g.word(w).back();
    m.elements[w] = m.elements[g.right(w, s)] * m.generators[s];
  }
  return m;
}

}  // namespace

std::vector<MatrixModel> matrix_models(const CoxeterGroup& g, const CharacterTable& t) {
  const std::size_t k = t.size();
  std::vector<MatrixModel> models(k);
  std::vector<bool> done(k, false);
  std::size_t remaining = k;

  auto try_candidate = [&](const Candidate& c) {
    for (std::size_t e = 0; e < k && remaining > 0; ++e) {
      if (done[e]) continue;
      long s = 0;
      for (std::size_t i = 0; i < c.elements.size(); ++i) s += t.value(e, c.elements[i]) * c.lambda[i];
      if (s != static_cast<long>(c.elements.size())) continue;  // multiplicity 1
      models[e] = spin_model(g, t, e, c);
      done[e] = true;
      --remaining;
    }
  };

  const int rank = g.rank();
  const auto coxeter = g.coxeter_matrix();
  // Standard parabolic subgroups with every consistent +-1 character.
  for (unsigned mask = 0; mask < (1U << rank) && remaining > 0; ++mask) {
    std::vector<int> j;
    for (int s = 0; s < rank; ++s)
      if (mask & (1U << s)) j.push_back(s);
    std::vector<ElementId> gens;
    for (int s : j) gens.push_back(g.right(g.identity(), s));
    const auto elems = closure(g, gens);
    for (unsigned signs = 0; signs < (1U << j.size()) && remaining > 0; ++signs) {
      std::vector<int> lam(rank, 1);
      for (std::size_t i = 0; i < j.size(); ++i) lam[j[i]] = (signs & (1U << i)) ? -1 : 1;
      bool consistent = true;
      for (int a : j)
        for (int b : j)
          if (a != b && coxeter[a][b] % 2 == 1 && lam[a] != lam[b]) consistent = false;
      if (!consistent) continue;
      Candidate c;
      c.elements = elems;
      for (ElementId h : elems) {
        int v = 1;
        for (int s : g.word(h)) v *= lam[s];
        c.lambda.push_back(v);
      }
      try_candidate(c);
    }
  }
  // Reflection subgroups with the trivial and sign characters.
  if (remaining > 0) {
    std::set<ElementId> refl;
    for (ElementId x = 0; x < g.size(); ++x)
      for (int s = 0; s < rank; ++s) refl.insert(g.multiply(g.multiply(x, g.right(0, s)), g.inverse(x)));
    std::set<std::vector<ElementId>> seen;
    std::deque<std::vector<ElementId>> queue;  // generator sets
    for (ElementId r : refl) queue.push_back({r});
    std::size_t budget = 20000;
    while (!queue.empty() && remaining > 0 && budget-- > 0) {
      auto gens = queue.front();
      queue.pop_front();
      const auto elems = closure(g, gens);
      if (!seen.insert(elems).second) continue;
      for (int sign : {1, -1}) {
        Candidate c;
        c.elements = elems;
        for (ElementId h : elems) c.lambda.push_back(sign < 0 && g.length(h) % 2 ? -1 : 1);
        try_candidate(c);
      }
      for (ElementId r : refl)
        if (!std::binary_search(elems.begin(), elems.end(), r)) {
          auto next = gens;
          next.push_back(r);
          queue.push_back(std::move(next));
        }
    }
  }
  check_internal(remaining == 0, "no multiplicity-one induced model found for some character");
  const auto o = check_models(g, t, models);
  check_internal(o.ok, "matrix model verification failed: " + o.detail);
  return models;
}

Outcome check_models(const CoxeterGroup& g, const CharacterTable& t, const std::vector<MatrixModel>& m) {
  Outcome o;
  const auto coxeter = g.coxeter_matrix();
  for (std::size_t e = 0; e < m.size(); ++e) {
    const std::size_t d = m[e].dim();
    const auto id = QMatrix::identity(d);
    for (int s = 0; s < g.rank(); ++s)
      for (int u = 0; u < g.rank(); ++u) {
        QMatrix prod = id;
        const QMatrix st = m[e].generators[s] * m[e].generators[u];
        for (int i = 0; i < coxeter[s][u]; ++i) prod = prod * st;
        o.count();
        if (prod != id) o.fail("Coxeter relation fails in model " + std::to_string(e));
      }
    for (ElementId w = 0; w < g.size(); ++w) {
      o.count();
      if (m[e].elements[w].trace() != t.value(e, w))
        o.fail("model " + std::to_string(e) + " has the wrong character");
    }
  }
  return o;
}

namespace {

// Positive rational k-th root of |q|, if any.
std::optional<mpq_class> rational_root(const mpq_class& q, int k) {
  if (q == 0) return std::nullopt;
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

QMatrix power(const QMatrix& m, int k) {
  QMatrix r = QMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

std::vector<DeltaExtension> delta_extensions(const CoxeterGroup& g, const CharacterTable& t,
                                             const std::vector<MatrixModel>& models,
                                             const DiagramAutomorphism& delta) {
  std::vector<DeltaExtension> out(t.size());
  const int k = delta.order();
  for (std::size_t e = 0; e < t.size(); ++e) {
    auto& ext = out[e];
    ext.order = k;
    ext.stable = t.twist(e, g, delta) == static_cast<int>(e);
    if (!ext.stable) {
      ext.note = "chi o delta != chi";
      continue;
    }
    const std::size_t d = models[e].dim();
    QMatrix eq(static_cast<std::size_t>(g.rank()) * d * d, d * d);
    for (int s = 0; s < g.rank(); ++s) {
      const QMatrix& rs = models[e].generators[s];
      const QMatrix& rds = models[e].generators[delta(s)];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) {
          const std::size_t row = (static_cast<std::size_t>(s) * d + a) * d + c;
          for (std::size_t b = 0; b < d; ++b) {
            eq(row, a * d + b) += rs(b, c);
            eq(row, b * d + c) -= rds(a, b);
          }
        }
    }
    const auto null = eq.nullspace();
    check_internal(null.size() == 1, "intertwiner space for E" + std::to_string(e) + " has dimension " +
                                         std::to_string(null.size()));
    QMatrix m(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m(a, b) = null[0][a * d + b];
    const auto scalar = power(m, k).as_scalar();
    check_internal(scalar.has_value() && *scalar != 0, "Delta^k is not a nonzero scalar");
    const auto root = rational_root(*scalar, k);
    if (!root) {
      ext.note = "no rational finite-order normalization";
      continue;
    }
    m *= mpq_class(1 / *root);
    bool flip = false;
    const mpq_class tr = m.trace();
    if (tr != 0) {
      flip = tr < 0;
    } else {
      for (std::size_t a = 0; a < d * d; ++a) {
        const mpq_class& x = m(a / d, a % d);
        if (x != 0) {
          flip = x < 0;
          break;
        }
      }
    }
    if (flip) m *= mpq_class(-1);
    ext.m_size = 2;
    ext.delta_inverse = *m.inverse();
    ext.delta = std::move(m);
  }
  return out;
}

Outcome check_delta_extensions(const CoxeterGroup& g, const std::vector<MatrixModel>& models,
                               const std::vector<DeltaExtension>& ext, const DiagramAutomorphism& delta) {
  Outcome o;
  for (std::size_t e = 0; e < ext.size(); ++e) {
    if (ext[e].m_size != 2) continue;
    const QMatrix& m = ext[e].delta;
    const auto id = QMatrix::identity(m.rows());
    o.count();
    const QMatrix mk = power(m, ext[e].order);
    if (mk != id && mk != id * mpq_class(-1)) o.fail("Delta is not of finite order for E" + std::to_string(e));
    const QMatrix neg = m * mpq_class(-1);
    o.count();
    if (power(neg, 2 * ext[e].order) != id) o.fail("-Delta is not of finite order");
    const QMatrix sq = m * m;
    for (ElementId w = 0; w < g.size(); ++w) {
      const auto& rw = models[e].elements[w];
      o.count();
      if (m * rw != models[e].elements[delta.apply(g, w)] * m)
        o.fail("Delta does not intertwine at w = " + g.word_string(w) + " for E" + std::to_string(e));
      if (sq * rw != rw * sq) o.fail("Delta^2 does not commute with the image");
    }
  }
  return o;
}

}  // namespace twistkl
