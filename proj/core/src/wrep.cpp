#include "twistkl/wrep.hpp"

#include <set>

#include "twistkl/errors.hpp"
#include "twistkl/parallel.hpp"

namespace twistkl {

std::size_t RepPackage::index_of(int e) const {
  for (std::size_t k = 0; k < irr.size(); ++k)
    if (irr[k] == e) return k;
  return static_cast<std::size_t>(-1);
}

namespace {

// tr(A B) without forming the product.
mpq_class trace_product(const QMatrix& a, const QMatrix& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) s += a(i, j) * b(j, i);
  return s;
}

struct SharpResult {
  int cell = -1;
  Outcome outcome;
};

// rho_spade(t_z) = sum_u sgn(u) M[u][z] rho(u), then the facts about it.
SharpResult build_sharp(const WeightedSystem& sys, const CellData& cells, const PhiMap& phi,
                        const MatrixModel& model, const DeltaExtension& ext,
                        const DiagramAutomorphism& delta, const std::string& name) {
  const std::size_t n = sys.size();
  const std::size_t d = model.dim();
  const auto& g = sys.group();
  std::vector<QMatrix> sharp(n, QMatrix(d, d));
  for (ElementId u = 0; u < n; ++u) {
    const QMatrix& ru = model.elements[u];
    for (ElementId z = 0; z < n; ++z) {
      const mpq_class& m = phi.j_to_group(u, z);
      if (m == 0) continue;
      const mpq_class c = sys.sign(u) * m;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (ru(i, j) != 0) sharp[z](i, j) += c * ru(i, j);
    }
  }
  SharpResult out;
  auto& o = out.outcome;
  std::set<int> support;
  for (ElementId z = 0; z < n; ++z)
    if (!sharp[z].is_zero()) support.insert(cells.two_cells.cell_of[z]);
  o.count();
  if (support.size() == 1)
    out.cell = *support.begin();
  else
    o.fail(name + "_spade is supported on " + std::to_string(support.size()) + " two-sided cells");

  QMatrix unit(d, d);
  for (ElementId dd : cells.distinguished) unit += sharp[dd] * mpq_class(cells.n[dd]);
  o.count();
  if (unit != QMatrix::identity(d)) o.fail("the unit of J does not act as 1 on " + name + "_spade");

  if (ext.m_size == 2) {
    for (ElementId w = 0; w < n; ++w) {
      o.count();
      if (sharp[delta.apply(g, w)] * ext.delta != ext.delta * sharp[w]) {
        o.fail("t_{delta(w)} Delta != Delta t_w on " + name + "_spade at w = " + sys.ambient_word(w));
        break;
      }
    }
  }
  return out;
}

}  // namespace

RepPackage build_reps(const HeckeAlgebra& h, const std::vector<HeckeElement>& cprime,
                      const XTable& p, const CellData& cells, const PhiMap& phi,
                      const DiagramAutomorphism& delta, unsigned jobs) {
  const auto& sys = h.system();
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  check_internal(phi.invertible, "psi at v = 1 is not invertible");

  RepPackage r;
  r.delta = delta;
  r.table = character_table(g);
  r.models = matrix_models(g, r.table);
  r.ext = delta_extensions(g, r.table, r.models, delta);
  const std::size_t ne = r.table.size();
  for (std::size_t e = 0; e < ne; ++e) {
    if (r.ext[e].m_size == 2) r.irr.push_back(static_cast<int>(e));
    r.dagger.push_back(r.table.tensor_sign(e, g));
    check_internal(r.dagger.back() >= 0, "E tensor sign is not in the character table");
  }

  std::vector<SharpResult> sharp(ne);
  parallel_for(ne, jobs, [&](std::size_t e) {
    sharp[e] = build_sharp(sys, cells, phi, r.models[e], r.ext[e], delta, "E" + std::to_string(e));
  });
  r.cell.resize(ne);
  r.a.resize(ne);
  r.a_prime.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    r.sharp.merge(sharp[e].outcome);
    r.cell[e] = sharp[e].cell;
    r.a[e] = r.cell[e] >= 0 ? cells.a[cells.two_cells.cells[r.cell[e]].front()] : -1;
  }
  for (std::size_t e = 0; e < ne; ++e) r.a_prime[e] = r.a[r.dagger[e]];

  // psi(T_w^dagger) for every w, shared by all modules.
  std::vector<std::vector<LaurentZ>> image(n);
  parallel_for(n, jobs, [&](std::size_t w) { image[w] = apply_phi(sys, phi, cprime, h.dagger(h.basis(w))); });

  const std::size_t nk = r.irr.size();
  const QMatrix& m = phi.j_to_group;
  r.trace.assign(nk, {});
  r.trace_inv.assign(nk, {});
  std::vector<std::vector<mpq_class>> twisted(nk);  // tr(Delta rho(u))
  parallel_for(nk, jobs, [&](std::size_t k) {
    const int e = r.irr[k];
    const auto& ext = r.ext[e];
    std::vector<mpq_class> td(n), tdi(n);
    for (ElementId u = 0; u < n; ++u) {
      td[u] = trace_product(ext.delta, r.models[e].elements[u]);
      tdi[u] = trace_product(ext.delta_inverse, r.models[e].elements[u]);
    }
    std::vector<mpq_class> tau(n), tau_inv(n);
    for (ElementId u = 0; u < n; ++u)
      for (ElementId z = 0; z < n; ++z) {
        if (m(u, z) == 0) continue;
        const mpq_class c = sys.sign(u) * m(u, z);
        tau[z] += c * td[u];
        tau_inv[z] += c * tdi[u];
      }
    auto& tr = r.trace[k];
    auto& tri = r.trace_inv[k];
    tr.resize(n);
    tri.resize(n);
    for (ElementId w = 0; w < n; ++w)
      for (ElementId z = 0; z < n; ++z) {
        if (image[w][z].is_zero()) continue;
        const LaurentQ x = to_rational(image[w][z]);
        if (tau[z] != 0) tr[w].add_scaled(x, tau[z]);
        if (tau_inv[z] != 0) tri[w].add_scaled(x, tau_inv[z]);
      }
    twisted[k] = std::move(td);
  });

  r.cprime.assign(n, std::vector<mpq_class>(nk));
  r.cprime_cross.assign(n, std::vector<mpq_class>(nk));
  r.leading_part.assign(n, std::vector<mpq_class>(nk));
  for (ElementId w = 0; w < n; ++w)
    for (std::size_t k = 0; k < nk; ++k) {
      const int e = r.irr[k];
      const int top = sys.weight(w) + r.a_prime[e];
      const auto tc = top_coefficient(r.trace[k][w], top);
      r.bound.count();
      if (!tc.bounded)
        r.bound.fail("tr(Delta T_w, E" + std::to_string(e) + ") has v^" +
                     std::to_string(r.trace[k][w].max_exponent()) + " above v^" + std::to_string(top) +
                     " at w = " + sys.ambient_word(w));
      if (tc.coeff.get_den() != 1)
        r.bound.fail("non-integral leading coefficient " + tc.coeff.get_str() + " at w = " + sys.ambient_word(w));
      r.cprime[w][k] = tc.coeff;

      mpq_class cross = 0;
      for (ElementId u = 0; u < n; ++u)
        if (m(u, w) != 0) cross += m(u, w) * twisted[k][u];
      r.cprime_cross[w][k] = cross;

      const int at = sys.weight(w) + cells.a[w];
      mpq_class lhs = 0;
      for (ElementId y = 0; y < n; ++y) {
        const auto& py = p[y][w];
        for (int i = 0; i <= py.degree(); ++i)
          if (py.coeff(i) != 0) lhs += mpq_class(py.coeff(i)) * r.trace[k][y].coeff(at - 2 * i);
      }
      r.leading_part[w][k] = lhs;
    }

  r.pairing.assign(nk, std::vector<LaurentQ>(nk));
  r.pairing_literal.assign(nk, std::vector<LaurentQ>(nk));
  parallel_for(nk * nk, jobs, [&](std::size_t idx) {
    const std::size_t k = idx / nk, kk = idx % nk;
    LaurentQ d, lit;
    for (ElementId u = 0; u < n; ++u) {
      const int l2 = 2 * sys.weight(u);
      d.add_scaled(r.trace[kk][u] * r.trace_inv[k][g.inverse(u)], mpq_class(1), -l2);
      lit.add_scaled(r.trace[kk][u] * r.trace[k][u], mpq_class(1), l2);
    }
    r.pairing[k][kk] = std::move(d);
    r.pairing_literal[k][kk] = std::move(lit);
  });
  return r;
}

Outcome check_rep_cells(const RepPackage& r, const CellData& cells) {
  Outcome o;
  std::set<int> carried;
  for (std::size_t e = 0; e < r.table.size(); ++e) {
    o.count();
    if (r.dagger[r.dagger[e]] != static_cast<int>(e)) o.fail("E^dagger^dagger != E");
    if (r.cell[e] < 0) o.fail("E" + std::to_string(e) + " has no single support cell");
    if (r.a_prime[e] != r.a[r.dagger[e]]) o.fail("a' != a o dagger");
    carried.insert(r.cell[e]);
  }
  for (std::size_t c = 0; c < cells.two_cells.cells.size(); ++c) {
    o.count();
    if (!carried.count(static_cast<int>(c))) o.fail("two-sided cell " + std::to_string(c) + " carries no E");
  }
  return o;
}

Outcome check_specialization(const WeightedSystem& sys, const RepPackage& r) {
  Outcome o;
  for (std::size_t k = 0; k < r.irr.size(); ++k) {
    const int e = r.irr[k];
    const auto& delta = r.ext[e].delta;
    o.count();
    const auto& te = r.trace[k][sys.group().identity()];
    if (!te.is_zero() && (te.min_exponent() != 0 || te.max_exponent() != 0))
      o.fail("tr(Delta T_e, E" + std::to_string(e) + ") is not constant");
    for (ElementId w = 0; w < sys.size(); ++w) {
      o.count();
      if (r.trace[k][w].at_one() != trace_product(delta, r.models[e].elements[w]))
        o.fail("trace at v = 1 differs from tr(Delta rho(w)) for E" + std::to_string(e) + " at w = " +
               sys.ambient_word(w));
    }
  }
  return o;
}

Outcome check_cprime_cross(const WeightedSystem& sys, const RepPackage& r) {
  Outcome o;
  for (ElementId w = 0; w < sys.size(); ++w)
    for (std::size_t k = 0; k < r.irr.size(); ++k) {
      o.count();
      if (r.cprime[w][k] != r.cprime_cross[w][k])
        o.fail("c' = " + r.cprime[w][k].get_str() + " but the t_w trace gives " + r.cprime_cross[w][k].get_str() +
               " at w = " + sys.ambient_word(w) + ", E" + std::to_string(r.irr[k]));
    }
  return o;
}

Outcome check_a_support(const WeightedSystem& sys, const RepPackage& r, const CellData& cells) {
  Outcome o;
  for (ElementId w = 0; w < sys.size(); ++w) {
    const int star = cells.star[cells.two_cells.cell_of[w]];
    for (std::size_t k = 0; k < r.irr.size(); ++k) {
      if (r.cprime[w][k] == 0) continue;
      o.count();
      if (star < 0 || r.cell[r.irr[k]] != star)
        o.fail("A_w has E" + std::to_string(r.irr[k]) + " outside c* at w = " + sys.ambient_word(w));
    }
  }
  return o;
}

namespace {

// Is b in the column span of the vectors?
bool in_span(const std::vector<std::vector<mpq_class>>& vectors, const std::vector<mpq_class>& b) {
  const std::size_t dim = b.size();
  QMatrix a(dim, vectors.size()), ab(dim, vectors.size() + 1);
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = ab(i, j) = vectors[j][i];
  for (std::size_t i = 0; i < dim; ++i) ab(i, vectors.size()) = b[i];
  return a.rank() == ab.rank();
}

}  // namespace

Outcome check_a_span(const WeightedSystem& sys, const RepPackage& r, const CellData& cells) {
  Outcome o;
  const std::size_t nk = r.irr.size();
  for (std::size_t k = 0; k < nk; ++k) {
    const int e = r.irr[k];
    o.count();
    if (r.cell[e] < 0 || cells.star[r.cell[e]] < 0) {
      o.fail("no starred support cell for E" + std::to_string(e));
      continue;
    }
    std::vector<std::vector<mpq_class>> vecs;
    for (ElementId x : cells.two_cells.cells[cells.star[r.cell[e]]]) vecs.push_back(r.cprime[x]);
    std::vector<mpq_class> unit(nk);
    unit[k] = 1;
    if (!in_span(vecs, unit))
      o.fail("E" + std::to_string(e) + " is not in the span of A_x over its starred cell");
  }
  (void)sys;
  return o;
}

Outcome check_pairing(const WeightedSystem& sys, const RepPackage& r) {
  Outcome o;
  const std::size_t nk = r.irr.size();
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t kk = 0; kk < nk; ++kk) {
      o.count();
      const auto& d = r.pairing[k][kk];
      if (k != kk && !d.is_zero())
        o.fail("D(E" + std::to_string(r.irr[k]) + ", E" + std::to_string(r.irr[kk]) + ") = " + d.str());
      if (k == kk && d.at_one() != static_cast<long>(sys.size()))
        o.fail("D(E" + std::to_string(r.irr[k]) + ")(1) = " + d.at_one().get_str());
    }
  return o;
}

Outcome check_leading_decomposition(const WeightedSystem& sys, const RepPackage& r, const CellData& cells) {
  Outcome o;
  const std::size_t nk = r.irr.size();
  const ElementId e = sys.group().identity();
  for (std::size_t k = 0; k < nk; ++k)
    if (r.a_prime[r.irr[k]] == 0) {
      o.count();
      if (r.leading_part[e][k] != r.cprime[e][k]) o.fail("leading part at e disagrees with c'_{e}");
    }
  for (ElementId w = 0; w < sys.size(); ++w) {
    std::vector<std::vector<mpq_class>> lower;
    for (ElementId x = 0; x < sys.size(); ++x)
      if (cells.two_sided.leq(x, w) && !cells.two_sided.leq(w, x)) lower.push_back(r.cprime[x]);
    std::vector<mpq_class> b(nk);
    for (std::size_t k = 0; k < nk; ++k) b[k] = r.leading_part[w][k] - r.cprime[w][k];
    o.count();
    if (!in_span(lower, b)) o.fail("nonzero residual at w = " + sys.ambient_word(w));
  }
  return o;
}

}  // namespace twistkl
