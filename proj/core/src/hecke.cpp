#include "twistkl/hecke.hpp"

#include <algorithm>
#include <optional>

#include "twistkl/errors.hpp"
#include "twistkl/parallel.hpp"

namespace twistkl {

namespace {

XPoly x_shift(const XPoly& p, int k) {
  if (p.is_zero()) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(k), mpz_class(0));
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  return XPoly(std::move(c));
}

XPoly monomial_x(const mpz_class& a, int k) {
  std::vector<mpz_class> c(static_cast<std::size_t>(k) + 1, mpz_class(0));
  c[k] = a;
  return XPoly(std::move(c));
}

}  // namespace

bool HeckeElement::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const LaurentZ& p) { return p.is_zero(); });
}

std::vector<ElementId> HeckeElement::support() const {
  std::vector<ElementId> s;
  for (std::size_t w = 0; w < c.size(); ++w)
    if (!c[w].is_zero()) s.push_back(static_cast<ElementId>(w));
  return s;
}

HeckeElement& HeckeElement::add_scaled(const HeckeElement& o, const LaurentZ& f) {
  if (f.is_zero()) return *this;
  for (std::size_t w = 0; w < c.size(); ++w)
    if (!o.c[w].is_zero()) c[w] += o.c[w] * f;
  return *this;
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  for (std::size_t w = 0; w < c.size(); ++w) c[w] += o.c[w];
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  for (std::size_t w = 0; w < c.size(); ++w) c[w] -= o.c[w];
  return *this;
}

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const WeightedSystem> sys) : sys_(std::move(sys)) {
  if (!sys_) throw ConfigError("Hecke algebra needs a weighted system");
}

HeckeElement HeckeAlgebra::zero() const { return HeckeElement{std::vector<LaurentZ>(size())}; }

HeckeElement HeckeAlgebra::basis(ElementId w) const {
  auto x = zero();
  x.c[w] = LaurentZ(1);
  return x;
}

HeckeElement HeckeAlgebra::scalar(const LaurentZ& a) const {
  auto x = zero();
  x.c[0] = a;
  return x;
}

HeckeElement HeckeAlgebra::left_generator(int s, const HeckeElement& x) const {
  const auto& g = sys_->group();
  const int two_l = 2 * sys_->generator_weight(s);
  auto y = zero();
  for (ElementId w = 0; w < size(); ++w) {
    const LaurentZ& a = x.c[w];
    if (a.is_zero()) continue;
    const ElementId sw = g.left(s, w);
    if (g.length(sw) > g.length(w)) {
      y.c[sw] += a;
    } else {
      y.c[w].add_scaled(a, mpz_class(1), two_l);
      y.c[w] -= a;
      y.c[sw].add_scaled(a, mpz_class(1), two_l);
    }
  }
  return y;
}

HeckeElement HeckeAlgebra::right_generator(const HeckeElement& x, int s) const {
  const auto& g = sys_->group();
  const int two_l = 2 * sys_->generator_weight(s);
  auto y = zero();
  for (ElementId w = 0; w < size(); ++w) {
    const LaurentZ& a = x.c[w];
    if (a.is_zero()) continue;
    const ElementId ws = g.right(w, s);
    if (g.length(ws) > g.length(w)) {
      y.c[ws] += a;
    } else {
      y.c[w].add_scaled(a, mpz_class(1), two_l);
      y.c[w] -= a;
      y.c[ws].add_scaled(a, mpz_class(1), two_l);
    }
  }
  return y;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement& a, const HeckeElement& b) const {
  const auto& g = sys_->group();
  auto out = zero();
  // a T_w built along canonical words; prefixes of canonical words are canonical.
  std::vector<std::optional<HeckeElement>> memo(size());
  memo[0] = a;
  auto get = [&](auto&& self, ElementId w) -> const HeckeElement& {
    if (!memo[w]) {
      const int s = g.word(w).back();
      const ElementId prefix = g.right(w, s);
      memo[w] = right_generator(self(self, prefix), s);
    }
    return *memo[w];
  };
  for (ElementId w = 0; w < size(); ++w) {
    if (b.c[w].is_zero()) continue;
    out.add_scaled(get(get, w), b.c[w]);
  }
  return out;
}

void HeckeAlgebra::build_inverses() const {
  std::call_once(inverses_once_, [this] {
    const auto& g = sys_->group();
    std::vector<HeckeElement> inv(size());
    inv[0] = basis(0);
    for (ElementId w = 1; w < size(); ++w) {
      const int s = g.word(w).back();
      const ElementId prefix = g.right(w, s);
      // T_w^{-1} = T_s^{-1} T_{w'}^{-1},  T_s^{-1} = v^{-2L} T_s - (1 - v^{-2L}).
      const int two_l = 2 * sys_->generator_weight(s);
      const HeckeElement& x = inv[prefix];
      HeckeElement sx = left_generator(s, x);
      auto y = zero();
      for (ElementId u = 0; u < size(); ++u) {
        y.c[u].add_scaled(sx.c[u], mpz_class(1), -two_l);
        y.c[u] -= x.c[u];
        y.c[u].add_scaled(x.c[u], mpz_class(1), -two_l);
      }
      // Verify: T_w T_w^{-1} = T_e.
      HeckeElement check = y;
      const Word& word = g.word(w);
      for (auto it = word.rbegin(); it != word.rend(); ++it) check = left_generator(*it, check);
      check_internal(check == basis(0), "T_w T_w^-1 != T_e for w = " + g.word_string(w));
      inv[w] = std::move(y);
    }
    inverse_ = std::move(inv);
  });
}

const HeckeElement& HeckeAlgebra::t_inverse(ElementId w) const {
  build_inverses();
  return inverse_[w];
}

HeckeElement HeckeAlgebra::bar(const HeckeElement& x) const {
  const auto& g = sys_->group();
  auto out = zero();
  for (ElementId w = 0; w < size(); ++w) {
    if (x.c[w].is_zero()) continue;
    out.add_scaled(t_inverse(g.inverse(w)), x.c[w].bar());
  }
  return out;
}

HeckeElement HeckeAlgebra::dagger(const HeckeElement& x) const {
  const auto& g = sys_->group();
  auto out = zero();
  for (ElementId w = 0; w < size(); ++w) {
    if (x.c[w].is_zero()) continue;
    LaurentZ f = x.c[w].shifted(2 * sys_->weight(w));
    if (sys_->sign(w) < 0) f = -f;
    out.add_scaled(t_inverse(g.inverse(w)), f);
  }
  return out;
}

std::string HeckeAlgebra::str(const HeckeElement& x) const {
  std::string out;
  for (ElementId w = 0; w < size(); ++w) {
    if (x.c[w].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + x.c[w].str() + ")T[" + sys_->ambient_word(w) + "]";
  }
  return out.empty() ? "0" : out;
}

XTable compute_r_table(const HeckeAlgebra& h, unsigned jobs) {
  const auto& sys = h.system();
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  // b[x] = v^{2L(x)} bar(T_x): leading term T_x, support below x.
  std::vector<HeckeElement> b(n);
  for (ElementId x = 0; x < n; ++x) {
    b[x] = h.t_inverse(g.inverse(x));
    for (auto& c : b[x].c) c = c.shifted(2 * sys.weight(x));
    check_internal(b[x].c[x] == LaurentZ(1), "bar(T_x) is not unitriangular");
  }
  XTable r(n, std::vector<XPoly>(n));
  parallel_for(n, jobs, [&](std::size_t yi) {
    const auto y = static_cast<ElementId>(yi);
    HeckeElement residual = h.basis(y);
    for (ElementId x = y + 1; x-- > 0;) {
      const LaurentZ coeff = residual.c[x];
      if (coeff.is_zero()) continue;
      auto poly = XPoly::from_laurent(coeff);
      check_internal(poly.has_value(), "R-coefficient is not a polynomial in v^2 at (" +
                                           sys.ambient_word(x) + ", " + sys.ambient_word(y) + ")");
      check_internal(g.bruhat_leq(x, y), "R_{x,y} nonzero with x not <= y");
      residual.add_scaled(b[x], -coeff);
      r[x][y] = std::move(*poly);
    }
    check_internal(residual.is_zero(), "R-solve left a residue");
  });
  return r;
}

XTable compute_p_table(const WeightedSystem& sys, const XTable& r, unsigned jobs) {
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  XTable p(n, std::vector<XPoly>(n));
  parallel_for(n, jobs, [&](std::size_t wi) {
    const auto w = static_cast<ElementId>(wi);
    const auto interval = g.bruhat_interval_below(w);
    const int lw = sys.weight(w);
    p[w][w] = XPoly::one();
    for (auto it = interval.rbegin(); it != interval.rend(); ++it) {
      const ElementId y = *it;
      if (y == w) continue;
      const int ly = sys.weight(y);
      XPoly gsum;
      for (ElementId z : interval) {
        if (z <= y || r[y][z].is_zero() || p[z][w].is_zero()) continue;
        gsum += x_shift(r[y][z] * p[z][w], ly);
      }
      check_internal(lw > ly, "weight does not increase along Bruhat order");
      const int bound = (lw - ly - 1) / 2;
      std::vector<mpz_class> coeffs(static_cast<std::size_t>(bound) + 1);
      XPoly rest = gsum;
      for (int i = 0; i <= bound; ++i) {
        coeffs[i] = gsum.coeff(lw - i);
        if (coeffs[i] == 0) continue;
        rest -= monomial_x(coeffs[i], lw - i);
        rest += monomial_x(coeffs[i], ly + i);
      }
      check_internal(rest.is_zero(), "P-solve remainder does not vanish at (" + sys.ambient_word(y) +
                                         ", " + sys.ambient_word(w) + ")");
      p[y][w] = XPoly(std::move(coeffs));
    }
  });
  return p;
}

XTable compute_q_table(const WeightedSystem& sys, const XTable& p, unsigned jobs) {
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  XTable q(n, std::vector<XPoly>(n));
  parallel_for(n, jobs, [&](std::size_t wi) {
    const auto w = static_cast<ElementId>(wi);
    const auto interval = g.bruhat_interval_below(w);
    q[w][w] = XPoly::one();
    for (auto it = interval.rbegin(); it != interval.rend(); ++it) {
      const ElementId y = *it;
      if (y == w) continue;
      XPoly s;
      for (ElementId z : interval) {
        if (z <= y || p[y][z].is_zero() || q[z][w].is_zero()) continue;
        XPoly term = p[y][z] * q[z][w];
        if (sys.sign(z) < 0) s -= term;
        else s += term;
      }
      q[y][w] = sys.sign(y) < 0 ? s : -s;
      const int bound = (sys.weight(w) - sys.weight(y) - 1) / 2;
      check_internal(q[y][w].degree() <= bound, "Q degree bound violated at (" + sys.ambient_word(y) +
                                                     ", " + sys.ambient_word(w) + ")");
    }
  });
  return q;
}

std::vector<HeckeElement> c_basis_unsigned(const HeckeAlgebra& h, const XTable& p) {
  const auto& sys = h.system();
  std::vector<HeckeElement> out(sys.size());
  for (ElementId w = 0; w < sys.size(); ++w) {
    out[w] = h.zero();
    for (ElementId y = 0; y <= w; ++y)
      if (!p[y][w].is_zero()) out[w].c[y] = p[y][w].at_v_squared().shifted(-sys.weight(w));
  }
  return out;
}

std::vector<HeckeElement> c_basis_signed(const HeckeAlgebra& h, const XTable& p) {
  const auto& sys = h.system();
  std::vector<HeckeElement> out(sys.size());
  for (ElementId w = 0; w < sys.size(); ++w) {
    out[w] = h.zero();
    for (ElementId y = 0; y <= w; ++y) {
      if (p[y][w].is_zero()) continue;
      LaurentZ c = p[y][w].at_v_minus_squared().shifted(sys.weight(w) - 2 * sys.weight(y));
      if (sys.sign(y) * sys.sign(w) < 0) c = -c;
      out[w].c[y] = std::move(c);
    }
  }
  return out;
}

HeckeElement c_signed_barred_form(const HeckeAlgebra& h, const XTable& p, ElementId w) {
  const auto& sys = h.system();
  auto out = h.zero();
  for (ElementId y = 0; y <= w; ++y) {
    if (p[y][w].is_zero()) continue;
    LaurentZ c = p[y][w].at_v_squared().shifted(-sys.weight(w) + 2 * sys.weight(y));
    if (sys.sign(y) * sys.sign(w) < 0) c = -c;
    out.add_scaled(h.t_inverse(sys.group().inverse(y)), c);
  }
  return out;
}

std::vector<LaurentZ> to_basis(const WeightedSystem& sys, HeckeElement x,
                               const std::vector<HeckeElement>& b) {
  const std::size_t n = sys.size();
  std::vector<LaurentZ> coords(n);
  for (ElementId z = static_cast<ElementId>(n); z-- > 0;) {
    if (x.c[z].is_zero()) continue;
    LaurentZ c = x.c[z].shifted(sys.weight(z));
    x.add_scaled(b[z], -c);
    coords[z] = std::move(c);
  }
  check_internal(x.is_zero(), "change of basis left a residue");
  return coords;
}

LaurentZ StructureConstants::get(ElementId x, ElementId y, ElementId z) const {
  for (const auto& [zz, c] : row(x, y))
    if (zz == z) return c;
  return {};
}

StructureConstants compute_structure_constants(const HeckeAlgebra& h,
                                               const std::vector<HeckeElement>& cprime,
                                               const XTable& p, unsigned jobs) {
  const auto& sys = h.system();
  const auto& g = sys.group();
  const std::size_t n = sys.size();
  std::vector<std::vector<LaurentZ>> pv(n, std::vector<LaurentZ>(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId x = 0; x < n; ++x)
      if (!p[a][x].is_zero()) pv[a][x] = p[a][x].at_v_squared();
  StructureConstants out(n);
  parallel_for(n, jobs, [&](std::size_t yi) {
    const auto y = static_cast<ElementId>(yi);
    // tc[a] = T_a C'_y, built by left generator steps.
    std::vector<HeckeElement> tc(n);
    tc[0] = cprime[y];
    for (ElementId a = 1; a < n; ++a) {
      const int s = g.word(a).front();
      tc[a] = h.left_generator(s, tc[g.left(s, a)]);
    }
    for (ElementId x = 0; x < n; ++x) {
      auto prod = h.zero();
      for (ElementId a = 0; a <= x; ++a)
        if (!pv[a][x].is_zero()) prod.add_scaled(tc[a], pv[a][x]);
      for (auto& c : prod.c) c = c.shifted(-sys.weight(x));
      auto coords = to_basis(sys, std::move(prod), cprime);
      auto& row = out.row(x, y);
      for (ElementId z = 0; z < n; ++z)
        if (!coords[z].is_zero()) row.emplace_back(z, std::move(coords[z]));
    }
  });
  return out;
}

Outcome check_r_product_identity(const HeckeAlgebra& h, const XTable& r) {
  const auto& sys = h.system();
  const auto& g = sys.group();
  const ElementId si = sys.longest_element();
  Outcome o;
  for (ElementId y = 0; y < sys.size(); ++y) {
    const auto lhs = h.multiply(h.basis(y), h.basis(si));
    auto rhs = h.zero();
    for (ElementId x = 0; x < sys.size(); ++x)
      if (!r[x][y].is_zero()) rhs.c[g.multiply(x, si)] += r[x][y].at_v_squared().shifted(2 * sys.weight(x));
    o.count();
    if (lhs != rhs) o.fail("T_y T_{s_I} expansion differs at y = " + sys.ambient_word(y));
  }
  return o;
}

Outcome check_p_identity(const WeightedSystem& sys, const XTable& r, const XTable& p) {
  const auto& g = sys.group();
  Outcome o;
  for (ElementId w = 0; w < sys.size(); ++w)
    for (ElementId y = 0; y <= w; ++y) {
      if (!g.bruhat_leq(y, w)) continue;
      const LaurentZ lhs = p[y][w].at_v_minus_squared().shifted(2 * sys.weight(w));
      LaurentZ rhs;
      for (ElementId z = y; z <= w; ++z) {
        if (r[y][z].is_zero() || p[z][w].is_zero()) continue;
        rhs += (r[y][z].at_v_squared() * p[z][w].at_v_squared()).shifted(2 * sys.weight(y));
      }
      o.count();
      if (lhs != rhs)
        o.fail("P identity fails at (" + sys.ambient_word(y) + ", " + sys.ambient_word(w) + ")");
    }
  return o;
}

Outcome check_q_inversion(const WeightedSystem& sys, const XTable& p, const XTable& q) {
  const std::size_t n = sys.size();
  Outcome o;
  for (ElementId y = 0; y < n; ++y)
    for (ElementId w = 0; w < n; ++w) {
      XPoly s;
      for (ElementId z = 0; z < n; ++z) {
        if (p[y][z].is_zero() || q[z][w].is_zero()) continue;
        XPoly term = p[y][z] * q[z][w];
        if (sys.sign(z) * sys.sign(w) < 0) s -= term;
        else s += term;
      }
      o.count();
      if (s != (y == w ? XPoly::one() : XPoly()))
        o.fail("P/Q inversion fails at (" + sys.ambient_word(y) + ", " + sys.ambient_word(w) + ")");
    }
  return o;
}

Outcome check_degree_bounds(const WeightedSystem& sys, const XTable& t, const std::string& name) {
  const auto& g = sys.group();
  Outcome o;
  for (ElementId y = 0; y < sys.size(); ++y)
    for (ElementId w = 0; w < sys.size(); ++w) {
      o.count();
      const std::string at = name + "(" + sys.ambient_word(y) + ", " + sys.ambient_word(w) + ")";
      if (y == w) {
        if (t[y][w] != XPoly::one()) o.fail(at + " on the diagonal is not 1");
      } else if (!g.bruhat_leq(y, w)) {
        if (!t[y][w].is_zero()) o.fail(at + " nonzero off the Bruhat interval");
      } else if (t[y][w].degree() > (sys.weight(w) - sys.weight(y) - 1) / 2) {
        o.fail(at + " exceeds the degree bound");
      }
    }
  return o;
}

Outcome check_bar_invariance(const HeckeAlgebra& h, const std::vector<HeckeElement>& basis,
                             const std::string& name) {
  const auto& sys = h.system();
  Outcome o;
  for (ElementId w = 0; w < basis.size(); ++w) {
    o.count();
    if (h.bar(basis[w]) != basis[w]) o.fail(name + " not bar-invariant at " + sys.ambient_word(w));
    if (basis[w].c[w] != LaurentZ::v_power(-sys.weight(w)))
      o.fail(name + " leading coefficient is not v^-L(w) at " + sys.ambient_word(w));
  }
  return o;
}

Outcome check_signed_forms_agree(const HeckeAlgebra& h, const XTable& p,
                                 const std::vector<HeckeElement>& signed_basis) {
  const auto& sys = h.system();
  Outcome o;
  for (ElementId w = 0; w < sys.size(); ++w) {
    o.count();
    if (c_signed_barred_form(h, p, w) != signed_basis[w])
      o.fail("the two expressions of the signed basis differ at " + sys.ambient_word(w));
  }
  return o;
}

Outcome check_r_support(const WeightedSystem& sys, const XTable& r) {
  const auto& g = sys.group();
  Outcome o;
  for (ElementId x = 0; x < sys.size(); ++x)
    for (ElementId y = 0; y < sys.size(); ++y) {
      o.count();
      if (x == y && r[x][y] != XPoly::one()) o.fail("R_{w,w} != 1 at " + sys.ambient_word(x));
      if (!g.bruhat_leq(x, y) && !r[x][y].is_zero())
        o.fail("R nonzero off the Bruhat interval at (" + sys.ambient_word(x) + ", " +
               sys.ambient_word(y) + ")");
    }
  return o;
}

Outcome check_structure_constants(const HeckeAlgebra& h, const std::vector<HeckeElement>& cprime,
                                  const StructureConstants& hc) {
  const auto& sys = h.system();
  Outcome o;
  for (ElementId x = 0; x < sys.size(); ++x)
    for (ElementId y = 0; y < sys.size(); ++y) {
      const auto direct = h.multiply(cprime[x], cprime[y]);
      auto expanded = h.zero();
      for (const auto& [z, c] : hc.row(x, y)) expanded.add_scaled(cprime[z], c);
      o.count();
      if (direct != expanded)
        o.fail("C'_x C'_y expansion differs at (" + sys.ambient_word(x) + ", " + sys.ambient_word(y) + ")");
    }
  return o;
}

}  // namespace twistkl
