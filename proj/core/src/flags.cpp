#include "twistkl/flags.hpp"

#include <sstream>

#include "twistkl/errors.hpp"
#include "twistkl/parallel.hpp"

namespace twistkl {

namespace {

using Vec = std::array<std::uint8_t, kMaxFlagRank>;

bool prime_power(int q, int& p, int& k) {
  for (p = 2; p <= q; ++p)
    if (q % p == 0) break;
  k = 0;
  int x = q;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return x == 1 && q >= 2;
}

}  // namespace

FiniteField FiniteField::make(int q) {
  FiniteField f;
  if (q < 2 || q > 16 || !prime_power(q, f.p_, f.k_))
    throw ConfigError("field order must be a prime power in [2, 16], got " + std::to_string(q));
  f.q_ = q;
  const int p = f.p_, k = f.k_;
  auto digits = [&](int a) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
  };
  auto undigits = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  f.add_.resize(q * q);
  f.neg_.resize(q);
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a);
    std::vector<int> dn(k);
    for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    f.neg_[a] = static_cast<std::uint8_t>(undigits(dn));
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      f.add_[a * q + b] = static_cast<std::uint8_t>(undigits(s));
    }
  }
  // Try monic polynomials x^k + c(x) until the quotient ring is a field.
  for (int c = 0; c < q; ++c) {
    const auto low = digits(c);
    std::vector<std::uint8_t> mul(q * q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const auto da = digits(a), db = digits(b);
        std::vector<int> prod(2 * k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int d = 2 * k - 1; d >= k; --d) {
          const int t = prod[d];
          if (t == 0) continue;
          prod[d] = 0;
          for (int i = 0; i < k; ++i) prod[d - k + i] = ((prod[d - k + i] - t * low[i]) % p + p) % p;
        }
        mul[a * q + b] = static_cast<std::uint8_t>(undigits(std::vector<int>(prod.begin(), prod.begin() + k)));
      }
    std::vector<std::uint8_t> inv(q, 0);
    bool field = true;
    for (int a = 1; a < q && field; ++a) {
      for (int b = 1; b < q; ++b)
        if (mul[a * q + b] == 1) inv[a] = static_cast<std::uint8_t>(b);
      field = inv[a] != 0;
    }
    if (field) {
      f.mul_ = std::move(mul);
      f.inv_ = std::move(inv);
      return f;
    }
  }
  throw InternalError("no irreducible polynomial found for F_" + std::to_string(q));
}

std::uint8_t FiniteField::pow(std::uint8_t a, int e) const {
  std::uint8_t r = 1;
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Outcome FiniteField::check_axioms() const {
  Outcome o;
  for (int a = 0; a < q_; ++a) {
    o.count();
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) o.fail("identity or negation fails");
    if (a != 0 && mul(a, inv(a)) != 1) o.fail("inverse fails");
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) o.fail("commutativity fails");
      for (int c = 0; c < q_; ++c) {
        o.count();
        if (add(add(a, b), c) != add(a, add(b, c))) o.fail("additive associativity fails");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) o.fail("multiplicative associativity fails");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) o.fail("distributivity fails");
      }
    }
  }
  return o;
}

namespace {

// Rows kept in insertion order with pivot 1 and zeros at earlier pivots.
struct Echelon {
  const FiniteField* f;
  int n;
  std::array<Vec, kMaxFlagRank> rows{};
  std::array<int, kMaxFlagRank> pivot{};
  int size = 0;

  // Reduces x in place; returns its leading index or -1 if x becomes zero.
  int reduce(Vec& x) const {
    for (int k = 0; k < size; ++k) {
      const std::uint8_t c = x[pivot[k]];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) x[j] = f->sub(x[j], f->mul(c, rows[k][j]));
    }
    for (int j = 0; j < n; ++j)
      if (x[j] != 0) return j;
    return -1;
  }
  bool insert(Vec x) {
    const int lead = reduce(x);
    if (lead < 0) return false;
    const std::uint8_t inv = f->inv(x[lead]);
    for (int j = 0; j < n; ++j) x[j] = f->mul(inv, x[j]);
    rows[size] = x;
    pivot[size] = lead;
    ++size;
    return true;
  }
};

// Basis of {x : sum_j a[i][j] x_j = 0 for every row i}.
std::vector<Vec> nullspace(const FiniteField& f, int n, std::vector<Vec> a) {
  std::vector<int> piv;
  std::size_t r = 0;
  for (int c = 0; c < n && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const std::uint8_t inv = f.inv(a[r][c]);
    for (int j = 0; j < n; ++j) a[r][j] = f.mul(inv, a[r][j]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint8_t t = a[i][c];
      for (int j = 0; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(t, a[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    Vec x{};
    x[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = f.neg(a[i][free]);
    out.push_back(x);
  }
  return out;
}

// Flag whose i-th space is spanned by chain[i-1] (nested, dims 1..n).
Flag flag_from_chain(const FiniteField& f, int n, const std::vector<std::vector<Vec>>& chain) {
  Echelon e{&f, n};
  Flag out;
  for (int i = 0; i < n; ++i) {
    bool grew = false;
    for (const Vec& v : chain[i])
      if (e.insert(v)) {
        grew = true;
        break;
      }
    check_internal(grew, "subspace chain is not a complete flag");
    out.row[i] = e.rows[i];
  }
  return out;
}

std::vector<Vec> standard_basis(int n) {
  std::vector<Vec> b(n, Vec{});
  for (int i = 0; i < n; ++i) b[i][i] = 1;
  return b;
}

// Sum_k x_k frob(y_{n-1-k}), where frob is x -> x^q (the identity when untwisted).
std::uint8_t form(const FiniteField& f, int n, int q, const Vec& x, const Vec& y) {
  std::uint8_t s = 0;
  for (int k = 0; k < n; ++k) s = f.add(s, f.mul(x[k], f.pow(y[n - 1 - k], q)));
  return s;
}

}  // namespace

FlagVariety::FlagVariety(int n, int q, bool twisted)
    : n_(n), q_(q), twisted_(twisted), field_(FiniteField::make(twisted ? q * q : q)) {
  if (n < 2 || n > kMaxFlagRank) throw ConfigError("flag rank n must lie in [2, 4]");
  enumerate();
}

Flag FlagVariety::from_basis(const std::vector<std::vector<std::uint8_t>>& rows) const {
  std::vector<std::vector<Vec>> chain(n_);
  std::vector<Vec> acc;
  for (int i = 0; i < n_; ++i) {
    Vec v{};
    for (int j = 0; j < n_; ++j) v[j] = rows[i][j];
    acc.push_back(v);
    chain[i] = acc;
  }
  return flag_from_chain(field_, n_, chain);
}

Flag FlagVariety::act(const std::vector<std::vector<std::uint8_t>>& g, const Flag& f) const {
  std::vector<std::vector<std::uint8_t>> rows(n_, std::vector<std::uint8_t>(n_, 0));
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) rows[k][i] = field_.add(rows[k][i], field_.mul(g[i][j], f.row[k][j]));
  return from_basis(rows);
}

std::vector<std::vector<std::uint8_t>> FlagVariety::random_invertible(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> dist(0, field_.order() - 1);
  for (;;) {
    std::vector<std::vector<std::uint8_t>> g(n_, std::vector<std::uint8_t>(n_));
    Echelon e{&field_, n_};
    bool ok = true;
    for (int i = 0; i < n_; ++i) {
      Vec v{};
      for (int j = 0; j < n_; ++j) v[j] = g[i][j] = static_cast<std::uint8_t>(dist(rng));
      ok = ok && e.insert(v);
    }
    if (ok) return g;
  }
}

Flag FlagVariety::frobenius(const Flag& fl) const {
  if (!twisted_) {
    Flag out = fl;
    for (auto& r : out.row)
      for (auto& x : r) x = field_.pow(x, q_);
    return from_basis([&] {
      std::vector<std::vector<std::uint8_t>> rows(n_, std::vector<std::uint8_t>(n_));
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) rows[i][j] = out.row[i][j];
      return rows;
    }());
  }
  // F(V)_i = {x : sum_k frob(u_k) x_{n-1-k} = 0 for u in V_{n-i}}.
  std::vector<std::vector<Vec>> chain(n_);
  for (int i = 1; i < n_; ++i) {
    std::vector<Vec> eq;
    for (int k = 0; k < n_ - i; ++k) {
      Vec row{};
      for (int j = 0; j < n_; ++j) row[n_ - 1 - j] = field_.pow(fl.row[k][j], q_);
      eq.push_back(row);
    }
    chain[i - 1] = nullspace(field_, n_, eq);
  }
  chain[n_ - 1] = standard_basis(n_);
  return flag_from_chain(field_, n_, chain);
}

void FlagVariety::enumerate() {
  const int m = twisted_ ? n_ / 2 : n_;
  const int fq = field_.order();
  Echelon e{&field_, n_};
  Flag cur;

  auto complete = [&]() {
    if (!twisted_) {
      flags_.push_back(cur);
      return;
    }
    // V_{n-i} = V_i^perp for i <= m fixes the rest of the flag.
    Echelon full = e;
    Flag f = cur;
    for (int i = m; i < n_; ++i) {
      std::vector<Vec> basis;
      if (i + 1 == n_) {
        basis = standard_basis(n_);
      } else {
        std::vector<Vec> eq;
        for (int k = 0; k < n_ - i - 1; ++k) {
          Vec row{};
          for (int j = 0; j < n_; ++j) row[n_ - 1 - j] = field_.pow(f.row[k][j], q_);
          eq.push_back(row);
        }
        basis = nullspace(field_, n_, eq);
      }
      bool grew = false;
      for (const Vec& v : basis)
        if (full.insert(v)) {
          grew = true;
          break;
        }
      check_internal(grew, "perpendicular chain is not a flag");
      f.row[i] = full.rows[i];
    }
    check_internal(frobenius(f) == f, "completed isotropic flag is not F-stable");
    flags_.push_back(f);
  };

  auto dfs = [&](auto&& self, int level) -> void {
    if (level == m) {
      complete();
      return;
    }
    std::vector<bool> is_piv(n_, false);
    for (int k = 0; k < e.size; ++k) is_piv[e.pivot[k]] = true;
    std::vector<int> free;
    for (int j = 0; j < n_; ++j)
      if (!is_piv[j]) free.push_back(j);
    long total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= fq;
    for (long code = 0; code < total; ++code) {
      Vec x{};
      long c = code;
      for (int j : free) {
        x[j] = static_cast<std::uint8_t>(c % fq);
        c /= fq;
      }
      int lead = -1;
      for (int j = 0; j < n_; ++j)
        if (x[j] != 0) {
          lead = j;
          break;
        }
      if (lead < 0 || x[lead] != 1) continue;
      if (twisted_) {
        bool iso = form(field_, n_, q_, x, x) == 0;
        for (int k = 0; k < e.size && iso; ++k) iso = form(field_, n_, q_, e.rows[k], x) == 0;
        if (!iso) continue;
      }
      e.rows[e.size] = x;
      e.pivot[e.size] = lead;
      ++e.size;
      cur.row[level] = x;
      self(self, level + 1);
      --e.size;
    }
  };
  dfs(dfs, 0);
}

Permutation FlagVariety::relative_position(const Flag& a, const Flag& b) const {
  const int n = n_;
  int d[kMaxFlagRank + 1][kMaxFlagRank + 1] = {};
  for (int i = 1; i <= n; ++i) {
    Echelon e{&field_, n};
    for (int k = 0; k < i; ++k) e.insert(a.row[k]);
    for (int j = 1; j <= n; ++j) {
      e.insert(b.row[j - 1]);
      d[i][j] = i + j - e.size;
    }
  }
  Permutation w(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      const int jump = d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1];
      if (jump == 0) continue;
      check_internal(jump == 1 && w[j - 1] < 0 && !used[i - 1], "jump pattern is not a permutation");
      w[j - 1] = i - 1;
      used[i - 1] = true;
    }
  for (int x : w) check_internal(x >= 0, "jump pattern is not a permutation");
  return w;
}

namespace {

std::size_t encode(const Permutation& p) {
  std::size_t c = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) c = c * p.size() + static_cast<std::size_t>(*it);
  return c;
}

long count_fixed_flags(int n, int q, bool twisted, const WeightedSystem& sys) {
  long total = 0;
  if (!twisted) {
    total = 1;
    for (int i = 1; i <= n; ++i) {
      long qi = 1;
      for (int k = 0; k < i; ++k) qi *= q;
      total *= (qi - 1) / (q - 1);
    }
    return total;
  }
  for (ElementId w = 0; w < sys.size(); ++w) {
    long t = 1;
    for (int k = 0; k < sys.weight(w); ++k) t *= q;
    total += t;
  }
  return total;
}

}  // namespace

ElementId FlagOracle::ambient_position(const Flag& a, const Flag& b) const {
  return perm_to_ambient[encode(variety->relative_position(a, b))];
}

FlagOracle build_flag_oracle(int n, int q, bool twisted, unsigned jobs) {
  if (n < 2 || n > kMaxFlagRank) throw ConfigError("oracle n must lie in [2, 4]");
  if (twisted && q != 2 && q != 3) throw ConfigError("twisted oracle needs q in {2, 3}");
  if (!twisted && (q < 2 || q > 4)) throw ConfigError("untwisted oracle needs q in {2, 3, 4}");
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) throw ConfigError("oracle q must be a prime power");

  FlagOracle o;
  o.ambient = WeightedSystem::build_weyl(CoxeterDescriptor::parse("A" + std::to_string(n - 1)));
  std::vector<int> flip(n - 1);
  for (int i = 0; i < n - 1; ++i) flip[i] = twisted ? n - 2 - i : i;
  o.system = twisted ? fixed_subgroup(o.ambient, DiagramAutomorphism(flip)) : o.ambient;

  const long expected = count_fixed_flags(n, q, twisted, *o.system);
  if (expected > static_cast<long>(kMaxFlags))
    throw SizeError("flag oracle would enumerate " + std::to_string(expected) + " flags (cap " +
                    std::to_string(kMaxFlags) + ")");

  const auto& g = o.ambient->group();
  std::size_t codes = 1;
  for (int i = 0; i < n; ++i) codes *= static_cast<std::size_t>(n);
  o.perm_to_ambient.assign(codes, static_cast<ElementId>(-1));
  o.ambient_perm.resize(g.size());
  // perm(x s) = perm(x) o t_s.
  for (ElementId w = 0; w < g.size(); ++w) {
    Permutation pw(n);
    for (int i = 0; i < n; ++i) pw[i] = i;
    for (int s : g.word(w)) {
      Permutation next(n);
      for (int i = 0; i < n; ++i) next[i] = pw[i == s ? s + 1 : (i == s + 1 ? s : i)];
      pw = next;
    }
    o.ambient_perm[w] = pw;
    o.perm_to_ambient[encode(pw)] = w;
  }

  o.variety = std::make_shared<FlagVariety>(n, q, twisted);
  const std::size_t f = o.variety->size();
  check_internal(static_cast<long>(f) == expected,
                 "enumerated " + std::to_string(f) + " F-stable flags, expected " + std::to_string(expected));
  o.position.resize(f * f);
  parallel_for(f, jobs, [&](std::size_t a) {
    for (std::size_t b = 0; b < f; ++b) {
      const ElementId w = o.ambient_position(o.variety->flag(a), o.variety->flag(b));
      const auto local = o.system->locate(w);
      check_internal(local.has_value(), "F-stable pair in position " + g.word_string(w) + " outside W^sigma");
      o.position[a * f + b] = static_cast<std::uint16_t>(*local);
    }
  });
  return o;
}

Outcome check_positions(const FlagOracle& o, std::uint64_t seed) {
  Outcome out;
  const std::size_t f = o.size();
  const auto& sg = o.system->group();
  std::vector<bool> seen(sg.size(), false);
  for (std::size_t a = 0; a < f; ++a) {
    out.count();
    if (o.pos(a, a) != sg.identity()) out.fail("pos(f, f) != e");
    if (!(o.variety->frobenius(o.variety->flag(a)) == o.variety->flag(a))) out.fail("listed flag is not F-stable");
    for (std::size_t b = 0; b < f; ++b) {
      seen[o.pos(a, b)] = true;
      if (o.pos(b, a) != sg.inverse(o.pos(a, b))) out.fail("pos(g, f) != pos(f, g)^-1");
    }
  }
  for (ElementId w = 0; w < sg.size(); ++w) {
    out.count();
    if (!seen[w]) out.fail("no F-stable pair in position " + o.system->ambient_word(w));
  }
  const auto& ag = o.ambient->group();
  const int n = o.variety->n();
  std::vector<int> flip(n - 1);
  for (int i = 0; i < n - 1; ++i) flip[i] = o.variety->twisted() ? n - 2 - i : i;
  const DiagramAutomorphism sigma(flip);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& v = *o.variety;
    const Flag f1 = v.from_basis(v.random_invertible(rng));
    const Flag f2 = v.from_basis(v.random_invertible(rng));
    const auto g = v.random_invertible(rng);
    const ElementId w = o.ambient_position(f1, f2);
    out.count();
    if (o.ambient_position(v.act(g, f1), v.act(g, f2)) != w) out.fail("relative position is not GL_n-equivariant");
    if (o.ambient_position(v.frobenius(f1), v.frobenius(f2)) != sigma.apply(ag, w))
      out.fail("(F f1, F f2) is not in position sigma(w)");
    if (v.twisted() && !(v.frobenius(v.frobenius(f1)) == f1)) out.fail("F o F is not the identity on flags");
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> lists_in_position(const FlagOracle& o, ElementId w) {
  const std::size_t f = o.size();
  std::vector<std::vector<std::size_t>> out(f);
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = 0; b < f; ++b)
      if (o.pos(a, b) == w) out[a].push_back(b);
  return out;
}

mpz_class power(long q, int e) {
  mpz_class r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

RCountReport verify_r_counts(const FlagOracle& o, const XTable& r, unsigned jobs) {
  const auto& sys = *o.system;
  const auto& g = sys.group();
  const std::size_t f = o.size();
  const std::size_t nw = sys.size();
  const ElementId si = sys.longest_element();
  const auto opp = lists_in_position(o, si);

  // refs[a][w'' * nw + y]: N_{y, s_I, w''} seen from base flag a (-1 if no pair).
  std::vector<std::vector<long>> refs(f);
  std::vector<Outcome> local(f);
  parallel_for(f, jobs, [&](std::size_t a) {
    std::vector<std::uint32_t> cnt(f * nw, 0);
    for (std::size_t b = 0; b < f; ++b) {
      const ElementId y = o.pos(a, b);
      for (std::size_t c : opp[b]) ++cnt[c * nw + y];
    }
    auto& ref = refs[a];
    ref.assign(nw * nw, -1);
    for (std::size_t c = 0; c < f; ++c) {
      const ElementId w2 = o.pos(a, c);
      local[a].count();
      if (ref[w2 * nw] < 0) {
        for (ElementId y = 0; y < nw; ++y) ref[w2 * nw + y] = cnt[c * nw + y];
        continue;
      }
      for (ElementId y = 0; y < nw; ++y)
        if (ref[w2 * nw + y] != static_cast<long>(cnt[c * nw + y])) {
          local[a].fail("N_{y,s_I,w''} depends on the base pair at w'' = " + sys.ambient_word(w2));
          break;
        }
    }
  });
  RCountReport rep;
  std::vector<long> ref(nw * nw, -1);
  for (std::size_t a = 0; a < f; ++a) {
    rep.well_defined.merge(local[a]);
    for (std::size_t i = 0; i < nw * nw; i += nw) {
      if (refs[a][i] < 0) continue;
      if (ref[i] < 0) {
        std::copy(refs[a].begin() + i, refs[a].begin() + i + nw, ref.begin() + i);
        continue;
      }
      rep.well_defined.count();
      if (!std::equal(ref.begin() + i, ref.begin() + i + nw, refs[a].begin() + i))
        rep.well_defined.fail("N_{y,s_I,w''} differs between base flags at w'' = " + sys.ambient_word(i / nw));
    }
  }
  const long q = o.variety->q();
  for (ElementId x = 0; x < nw; ++x)
    for (ElementId y = 0; y < nw; ++y) {
      RCountRow row{x, y, r[x][y].at(q) * power(q, sys.weight(x)), 0};
      const ElementId w2 = g.multiply(x, si);
      const long n = ref[w2 * nw + y];
      rep.identity.count();
      if (n < 0) {
        rep.identity.fail("no F-stable pair in position x s_I for x = " + sys.ambient_word(x));
      } else {
        row.rhs = n;
        if (row.lhs != row.rhs)
          rep.identity.fail("R_{x,y}(q) q^L(x) = " + row.lhs.get_str() + " but N = " + row.rhs.get_str() +
                            " at x = " + sys.ambient_word(x) + ", y = " + sys.ambient_word(y));
      }
      rep.rows.push_back(std::move(row));
    }
  return rep;
}

std::vector<std::vector<std::size_t>> neighbor_counts(const FlagOracle& o) {
  const auto& g = o.system->group();
  std::vector<std::vector<std::size_t>> out(g.rank(), std::vector<std::size_t>(o.size(), 0));
  for (int s = 0; s < g.rank(); ++s) {
    const ElementId sw = g.right(g.identity(), s);
    for (std::size_t a = 0; a < o.size(); ++a)
      for (std::size_t b = 0; b < o.size(); ++b)
        if (o.pos(a, b) == sw) ++out[s][a];
  }
  return out;
}

Outcome verify_hecke_module(const FlagOracle& o, unsigned jobs) {
  const auto& sys = *o.system;
  const auto& g = sys.group();
  const std::size_t f = o.size();
  const std::size_t nw = sys.size();
  const long q = o.variety->q();
  std::vector<std::vector<std::vector<std::size_t>>> nbr;
  for (int s = 0; s < g.rank(); ++s) nbr.push_back(lists_in_position(o, g.right(g.identity(), s)));

  std::vector<Outcome> local(f);
  parallel_for(f, jobs, [&](std::size_t a) {
    auto& out = local[a];
    std::vector<std::uint32_t> cnt(f * nw);
    for (int s = 0; s < g.rank(); ++s) {
      const long qs = power(q, sys.generator_weight(s)).get_si();
      out.count();
      if (static_cast<long>(nbr[s][a].size()) != qs)
        out.fail("flag has " + std::to_string(nbr[s][a].size()) + " neighbors in position " +
                 sys.ambient_word(g.right(g.identity(), s)) + ", expected " + std::to_string(qs));
      std::fill(cnt.begin(), cnt.end(), 0);
      for (std::size_t b : nbr[s][a])
        for (std::size_t c = 0; c < f; ++c) ++cnt[c * nw + o.pos(b, c)];
      for (std::size_t c = 0; c < f; ++c) {
        const ElementId w2 = o.pos(a, c);
        for (ElementId w = 0; w < nw; ++w) {
          const ElementId sw = g.left(s, w);
          long expect = 0;
          if (g.length(sw) > g.length(w)) {
            expect = w2 == sw ? 1 : 0;
          } else {
            expect = (w2 == w ? qs - 1 : 0) + (w2 == sw ? qs : 0);
          }
          out.count();
          if (static_cast<long>(cnt[c * nw + w]) != expect) {
            out.fail("T_s T_w count mismatch for s = " + sys.ambient_word(g.right(g.identity(), s)) +
                     ", w = " + sys.ambient_word(w) + " in position " + sys.ambient_word(w2));
            break;
          }
        }
      }
    }
  });
  Outcome out;
  for (const auto& l : local) out.merge(l);
  // The T_w have disjoint supports, so they are independent iff none is zero.
  std::vector<bool> seen(nw, false);
  for (auto p : o.position) seen[p] = true;
  for (ElementId w = 0; w < nw; ++w) {
    out.count();
    if (!seen[w]) out.fail("T_w acts as zero for w = " + sys.ambient_word(w));
  }
  return out;
}

NTable count_n(const FlagOracle& o, std::size_t full_check_limit, unsigned jobs) {
  const auto& sys = *o.system;
  const std::size_t f = o.size();
  const std::size_t nw = sys.size();
  NTable t;
  t.n = nw;
  t.count.assign(nw * nw * nw, 0);
  t.has_base.assign(nw, false);
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = 0; b < f; ++b) {
      const ElementId w2 = o.pos(a, b);
      if (t.has_base[w2]) continue;
      t.has_base[w2] = true;
      for (std::size_t c = 0; c < f; ++c) ++t.count[(o.pos(a, c) * nw + o.pos(c, b)) * nw + w2];
    }
  for (ElementId w2 = 0; w2 < nw; ++w2) {
    t.well_defined.count();
    if (!t.has_base[w2]) t.well_defined.fail("empty orbit for w'' = " + sys.ambient_word(w2));
  }
  if (f > full_check_limit) return t;
  std::vector<Outcome> local(f);
  parallel_for(f, jobs, [&](std::size_t a) {
    std::vector<long> cnt(nw * nw);
    for (std::size_t b = 0; b < f; ++b) {
      const ElementId w2 = o.pos(a, b);
      std::fill(cnt.begin(), cnt.end(), 0);
      for (std::size_t c = 0; c < f; ++c) ++cnt[o.pos(a, c) * nw + o.pos(c, b)];
      local[a].count();
      for (std::size_t k = 0; k < nw * nw; ++k)
        if (cnt[k] != t.count[k * nw + w2]) {
          local[a].fail("N_{w,w',w''} depends on the base pair at w'' = " + sys.ambient_word(w2));
          break;
        }
    }
  });
  for (const auto& l : local) t.well_defined.merge(l);
  return t;
}

std::string n_table_csv(const FlagOracle& o, const NTable& t) {
  const auto& sys = *o.system;
  std::ostringstream os;
  os << "w,w',w'',count\n";
  for (ElementId w = 0; w < t.n; ++w)
    for (ElementId w1 = 0; w1 < t.n; ++w1)
      for (ElementId w2 = 0; w2 < t.n; ++w2)
        if (t.has_base[w2])
          os << sys.ambient_word(w) << ',' << sys.ambient_word(w1) << ',' << sys.ambient_word(w2) << ','
             << t.at(w, w1, w2) << '\n';
  return os.str();
}

}  // namespace twistkl
