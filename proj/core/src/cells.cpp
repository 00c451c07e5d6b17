#include "twistkl/cells.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "twistkl/errors.hpp"

namespace twistkl {

void Preorder::close() {
  for (std::size_t x = 0; x < n_; ++x) set(x, x);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t* rk = &rows_[k * words_];
    for (std::size_t i = 0; i < n_; ++i) {
      if (!leq(i, k)) continue;
      std::uint64_t* ri = &rows_[i * words_];
      for (std::size_t j = 0; j < words_; ++j) ri[j] |= rk[j];
    }
  }
}

void Preorder::unite(const Preorder& o) {
  for (std::size_t k = 0; k < rows_.size(); ++k) rows_[k] |= o.rows_[k];
}

namespace {

Partition partition_of(const Preorder& p) {
  Partition out;
  out.cell_of.assign(p.size(), -1);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (out.cell_of[x] >= 0) continue;
    const int id = static_cast<int>(out.cells.size());
    out.cells.emplace_back();
    for (std::size_t y = x; y < p.size(); ++y)
      if (p.leq(x, y) && p.leq(y, x)) {
        out.cell_of[y] = id;
        out.cells.back().push_back(static_cast<ElementId>(y));
      }
  }
  return out;
}

std::vector<ElementId> sorted(std::vector<ElementId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

CellData compute_cells(const WeightedSystem& sys, const StructureConstants& hc, const XTable& p) {
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  CellData cd;

  cd.left = Preorder(n);
  for (ElementId w = 0; w < n; ++w)
    for (int s = 0; s < sys.rank(); ++s)
      for (const auto& [z, c] : hc.row(g.right(0, s), w)) cd.left.set(z, w);
  cd.left.close();

  cd.right = Preorder(n);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (cd.left.leq(g.inverse(x), g.inverse(y))) cd.right.set(x, y);

  cd.two_sided = cd.left;
  cd.two_sided.unite(cd.right);
  cd.two_sided.close();

  cd.left_cells = partition_of(cd.left);
  cd.right_cells = partition_of(cd.right);
  cd.two_cells = partition_of(cd.two_sided);

  cd.a.assign(n, std::numeric_limits<int>::min());
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      for (const auto& [z, c] : hc.row(x, y)) cd.a[z] = std::max(cd.a[z], c.max_exponent());

  cd.delta.resize(n);
  cd.n.resize(n);
  cd.is_distinguished.assign(n, false);
  for (ElementId z = 0; z < n; ++z) {
    const XPoly& pez = p[0][z];
    check_internal(!pez.is_zero(), "P_{e,z} vanishes");
    cd.delta[z] = sys.weight(z) - 2 * pez.degree();
    cd.n[z] = pez.leading();
    if (cd.a[z] == cd.delta[z]) {
      cd.is_distinguished[z] = true;
      cd.distinguished.push_back(z);
    }
  }

  const ElementId si = sys.longest_element();
  cd.star.assign(cd.two_cells.cells.size(), -1);
  for (std::size_t c = 0; c < cd.two_cells.cells.size(); ++c) {
    std::vector<ElementId> right_image, left_image;
    for (ElementId w : cd.two_cells.cells[c]) {
      right_image.push_back(g.multiply(w, si));
      left_image.push_back(g.multiply(si, w));
    }
    right_image = sorted(right_image);
    if (right_image != sorted(left_image)) continue;
    const int target = cd.two_cells.cell_of[right_image.front()];
    if (cd.two_cells.cells[target] == right_image) cd.star[c] = target;
  }
  return cd;
}

Outcome check_distinguished(const WeightedSystem& sys, const CellData& cells) {
  const auto& g = sys.group();
  Outcome o;
  for (ElementId z = 0; z < sys.size(); ++z) {
    o.count();
    if (cells.a[z] > cells.delta[z])
      o.fail("a(z) > Delta(z) at " + sys.ambient_word(z));
  }
  for (ElementId d : cells.distinguished) {
    o.count();
    if (g.inverse(d) != d) o.fail("distinguished element " + sys.ambient_word(d) + " is not an involution");
  }
  for (const auto& cell : cells.left_cells.cells) {
    o.count();
    const auto k = std::count_if(cell.begin(), cell.end(),
                                 [&](ElementId w) { return cells.is_distinguished[w]; });
    if (k != 1)
      o.fail("left cell of " + sys.ambient_word(cell.front()) + " holds " + std::to_string(k) +
             " distinguished involutions");
  }
  return o;
}

Outcome check_a_function(const WeightedSystem& sys, const CellData& cells) {
  const auto& g = sys.group();
  Outcome o;
  o.count();
  if (cells.a[0] != 0) o.fail("a(e) != 0");
  for (ElementId z = 0; z < sys.size(); ++z) {
    o.count();
    if (cells.a[z] != cells.a[g.inverse(z)]) o.fail("a(z) != a(z^-1) at " + sys.ambient_word(z));
    const auto& cell = cells.two_cells.cells[cells.two_cells.cell_of[z]];
    if (cells.a[z] != cells.a[cell.front()])
      o.fail("a is not constant on the two-sided cell of " + sys.ambient_word(z));
  }
  return o;
}

Outcome check_star(const WeightedSystem& sys, const CellData& cells) {
  const auto& g = sys.group();
  const ElementId si = sys.longest_element();
  const auto& tc = cells.two_cells;
  Outcome o;
  for (std::size_t c = 0; c < tc.cells.size(); ++c) {
    o.count();
    if (cells.star[c] < 0) {
      o.fail("c s_I is not a two-sided cell (or differs from s_I c) for the cell of " +
             sys.ambient_word(tc.cells[c].front()));
      return o;
    }
    if (cells.star[cells.star[c]] != static_cast<int>(c)) o.fail("star is not an involution");
  }
  for (std::size_t c = 0; c < tc.cells.size(); ++c)
    for (std::size_t d = 0; d < tc.cells.size(); ++d) {
      o.count();
      const bool below = cells.two_sided.leq(tc.cells[c].front(), tc.cells[d].front());
      const bool star_below =
          cells.two_sided.leq(tc.cells[cells.star[d]].front(), tc.cells[cells.star[c]].front());
      if (below != star_below) o.fail("star does not reverse the two-sided preorder");
    }
  for (const auto& cell : cells.left_cells.cells) {
    o.count();
    std::vector<ElementId> image;
    for (ElementId w : cell) image.push_back(g.multiply(w, si));
    image = sorted(image);
    if (cells.left_cells.cells[cells.left_cells.cell_of[image.front()]] != image)
      o.fail("w -> w s_I does not map the left cell of " + sys.ambient_word(cell.front()) +
             " onto a left cell");
  }
  return o;
}

JRing build_j_ring(const WeightedSystem& sys, const StructureConstants& hc, const CellData& cells) {
  const std::size_t n = sys.size();
  JRing j;
  j.n = n;
  j.mul.resize(n * n);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      for (const auto& [z, h] : hc.row(x, y)) {
        mpz_class gamma = h.coeff(cells.a[z]);
        if (gamma != 0) j.mul[x * n + y].emplace_back(z, std::move(gamma));
      }
  for (ElementId d : cells.distinguished) j.unit.emplace_back(d, cells.n[d]);
  return j;
}

namespace {

using Dense = std::vector<mpz_class>;

void accumulate(const JRing& j, ElementId x, ElementId y, const mpz_class& c, Dense& out) {
  for (const auto& [z, g] : j.product(x, y)) out[z] += c * g;
}

}  // namespace

Outcome check_j_associativity(const JRing& j) {
  Outcome o;
  Dense lhs(j.n), rhs(j.n);
  for (ElementId x = 0; x < j.n; ++x)
    for (ElementId y = 0; y < j.n; ++y)
      for (ElementId w = 0; w < j.n; ++w) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const auto& [u, c] : j.product(x, y)) accumulate(j, u, w, c, lhs);
        for (const auto& [u, c] : j.product(y, w)) accumulate(j, x, u, c, rhs);
        o.count();
        if (lhs != rhs) {
          o.fail("(t_x t_y) t_w != t_x (t_y t_w) for ids " + std::to_string(x) + "," +
                 std::to_string(y) + "," + std::to_string(w));
          return o;
        }
      }
  return o;
}

Outcome check_j_unit(const JRing& j) {
  Outcome o;
  Dense left(j.n), right(j.n);
  for (ElementId x = 0; x < j.n; ++x) {
    std::fill(left.begin(), left.end(), 0);
    std::fill(right.begin(), right.end(), 0);
    for (const auto& [d, c] : j.unit) {
      accumulate(j, d, x, c, left);
      accumulate(j, x, d, c, right);
    }
    Dense expect(j.n);
    expect[x] = 1;
    o.count();
    if (left != expect || right != expect) o.fail("sum n_d t_d is not a unit at id " + std::to_string(x));
  }
  return o;
}

Outcome check_gamma_cells(const WeightedSystem& sys, const JRing& j, const CellData& cells) {
  const auto& g = sys.group();
  const auto& lc = cells.left_cells.cell_of;
  Outcome o;
  for (ElementId x = 0; x < j.n; ++x)
    for (ElementId y = 0; y < j.n; ++y)
      for (const auto& [z, c] : j.product(x, y)) {
        // c = gamma_{x,y,u} with u = z^-1.
        const ElementId u = g.inverse(z);
        o.count();
        if (lc[x] != lc[g.inverse(y)] || lc[y] != lc[g.inverse(u)] || lc[u] != lc[g.inverse(x)])
          o.fail("gamma nonzero outside matching left cells at (" + sys.ambient_word(x) + ", " +
                 sys.ambient_word(y) + ", " + sys.ambient_word(u) + ")");
      }
  return o;
}

std::vector<LaurentZ> j_multiply(const JRing& j, const std::vector<LaurentZ>& a,
                                 const std::vector<LaurentZ>& b) {
  std::vector<LaurentZ> out(j.n);
  for (ElementId x = 0; x < j.n; ++x) {
    if (a[x].is_zero()) continue;
    for (ElementId y = 0; y < j.n; ++y) {
      if (b[y].is_zero()) continue;
      const auto& row = j.product(x, y);
      if (row.empty()) continue;
      const LaurentZ ab = a[x] * b[y];
      for (const auto& [z, c] : row) out[z].add_scaled(ab, c);
    }
  }
  return out;
}

PhiMap build_phi(const WeightedSystem& sys, const StructureConstants& hc, const CellData& cells,
                 const XTable& p) {
  const std::size_t n = sys.size();
  PhiMap phi;
  phi.image.assign(n, std::vector<LaurentZ>(n));
  for (ElementId w = 0; w < n; ++w)
    for (ElementId d : cells.distinguished)
      for (const auto& [z, h] : hc.row(w, d))
        if (cells.a[z] == cells.a[d]) phi.image[w][z].add_scaled(h, cells.n[d]);

  QMatrix a(n, n), psi1(n, n);
  for (ElementId y = 0; y < n; ++y)
    for (ElementId x = 0; x < n; ++x) {
      a(y, x) = p[y][x].at(1);
      psi1(y, x) = phi.image[y][x].at_one();
    }
  const auto ainv = a.inverse();
  check_internal(ainv.has_value(), "C'-basis at v = 1 is singular");
  phi.group_to_j = ainv->transpose() * psi1;
  const auto kinv = phi.group_to_j.inverse();
  phi.invertible = kinv.has_value();
  if (phi.invertible) phi.j_to_group = kinv->transpose();
  return phi;
}

Outcome check_phi_homomorphism(const WeightedSystem& sys, const StructureConstants& hc,
                               const JRing& j, const PhiMap& phi) {
  const std::size_t n = sys.size();
  Outcome o;
  std::vector<LaurentZ> unit(n);
  for (const auto& [d, c] : j.unit) unit[d] = LaurentZ(c);
  o.count();
  if (phi.image[0] != unit) o.fail("psi(C'_e) is not the unit of J");
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) {
      std::vector<LaurentZ> lhs(n);
      for (const auto& [z, h] : hc.row(x, y))
        for (ElementId u = 0; u < n; ++u)
          if (!phi.image[z][u].is_zero()) lhs[u] += h * phi.image[z][u];
      o.count();
      if (lhs != j_multiply(j, phi.image[x], phi.image[y])) {
        o.fail("psi(C'_x C'_y) != psi(C'_x) psi(C'_y) at (" + sys.ambient_word(x) + ", " +
               sys.ambient_word(y) + ")");
        return o;
      }
    }
  return o;
}

std::vector<LaurentZ> apply_phi(const WeightedSystem& sys, const PhiMap& phi,
                                const std::vector<HeckeElement>& cprime, const HeckeElement& x) {
  const std::size_t n = sys.size();
  const auto coords = to_basis(sys, x, cprime);
  std::vector<LaurentZ> out(n);
  for (ElementId w = 0; w < n; ++w) {
    if (coords[w].is_zero()) continue;
    for (ElementId z = 0; z < n; ++z)
      if (!phi.image[w][z].is_zero()) out[z] += coords[w] * phi.image[w][z];
  }
  return out;
}

CellEmbedding cell_embedding_check(const WeightedSystem& /*big*/, const CellData& big_cells,
                                   const WeightedSystem& sub, const CellData& sub_cells) {
  CellEmbedding out;
  auto& o = out.outcome;
  const auto& sc = sub_cells.two_cells;
  const auto& bc = big_cells.two_cells;
  out.bang.assign(sc.cells.size(), -1);
  for (std::size_t c = 0; c < sc.cells.size(); ++c) {
    std::set<int> targets;
    for (ElementId w : sc.cells[c]) targets.insert(bc.cell_of[sub.embed(w)]);
    o.count();
    if (targets.size() != 1) {
      o.fail("cell of " + sub.ambient_word(sc.cells[c].front()) + " meets several two-sided cells of W");
      continue;
    }
    out.bang[c] = *targets.begin();
  }
  std::set<int> seen;
  for (std::size_t c = 0; c < sc.cells.size(); ++c) {
    if (out.bang[c] < 0) continue;
    o.count();
    if (!seen.insert(out.bang[c]).second) o.fail("c -> c^! is not injective");
    std::vector<ElementId> meet;
    for (ElementId w : bc.cells[out.bang[c]])
      if (auto loc = sub.locate(w)) meet.push_back(*loc);
    std::sort(meet.begin(), meet.end());
    o.count();
    if (meet != sc.cells[c])
      o.fail("c^! meets W^sigma in more than c for the cell of " + sub.ambient_word(sc.cells[c].front()));
    const int sub_star = sub_cells.star[c];
    const int big_star = big_cells.star[out.bang[c]];
    o.count();
    if (sub_star < 0 || big_star < 0 || out.bang[sub_star] != big_star)
      o.fail("(c*)^! != (c^!)* for the cell of " + sub.ambient_word(sc.cells[c].front()));
  }
  return out;
}

Outcome check_a_restriction(const WeightedSystem& big, const CellData& big_cells,
                            const WeightedSystem& sub, const CellData& sub_cells) {
  Outcome o;
  for (ElementId w = 0; w < sub.size(); ++w) {
    o.count();
    if (sub_cells.a[w] != big_cells.a[sub.embed(w)])
      o.fail("a on W^sigma differs from a on W at " + sub.ambient_word(w));
  }
  (void)big;
  return o;
}

}  // namespace twistkl
