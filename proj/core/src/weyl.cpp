#include "twistkl/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "twistkl/errors.hpp"

namespace twistkl {

namespace {

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t type_order(const CoxeterDescriptor& d) {
  switch (d.type) {
    case 'A': return factorial(d.rank + 1);
    case 'B':
    case 'C': return (std::size_t{1} << d.rank) * factorial(d.rank);
    case 'D': return (std::size_t{1} << (d.rank - 1)) * factorial(d.rank);
    case 'G': return 12;
    case 'F': return 1152;
    case 'E': return d.rank == 6 ? 51840 : d.rank == 7 ? 2903040 : 696729600;
    default: return 0;
  }
}

using Mat = std::vector<int>;  // row-major rank x rank

Mat mat_mul(const Mat& a, const Mat& b, int n) {
  Mat c(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int aik = a[i * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

}  // namespace

CoxeterDescriptor CoxeterDescriptor::parse(std::string_view text) {
  if (text.size() < 2) throw ConfigError("group descriptor too short: '" + std::string(text) + "'");
  CoxeterDescriptor d;
  d.type = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d.rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw ConfigError("bad rank in group descriptor '" + std::string(text) + "'");
  const bool ok = (d.type == 'A' && d.rank >= 1) || ((d.type == 'B' || d.type == 'C') && d.rank >= 2) ||
                  (d.type == 'D' && d.rank >= 4) || (d.type == 'G' && d.rank == 2) ||
                  (d.type == 'F' && d.rank == 4) || (d.type == 'E' && d.rank >= 6 && d.rank <= 8);
  if (!ok) throw ConfigError("unsupported Cartan type '" + std::string(text) + "'");
  if (d.rank > 9 || type_order(d) > kMaxGroupOrder)
    throw SizeError("group " + d.label() + " exceeds the order cap " + std::to_string(kMaxGroupOrder));
  return d;
}

std::string CoxeterDescriptor::label() const { return std::string(1, type) + std::to_string(rank); }

IntMatrix CoxeterDescriptor::cartan_matrix() const {
  const int n = rank;
  IntMatrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);
      break;
    case 'C':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -1, -2);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case 'G':
      link(0, 1, -1, -3);
      break;
    case 'F':
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
    case 'E':
      link(0, 2, -1, -1);
      link(1, 3, -1, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    default:
      throw ConfigError("unknown Cartan type");
  }
  return a;
}

IntMatrix CoxeterDescriptor::coxeter_matrix() const {
  const auto a = cartan_matrix();
  const int n = rank;
  IntMatrix m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      switch (a[i][j] * a[j][i]) {
        case 0: m[i][j] = 2; break;
        case 1: m[i][j] = 3; break;
        case 2: m[i][j] = 4; break;
        case 3: m[i][j] = 6; break;
        default: throw ConfigError("Cartan matrix is not of finite type");
      }
    }
  }
  return m;
}

void validate_coxeter_matrix(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw ConfigError("Coxeter matrix is not square");
    if (m[i][i] != 1) throw ConfigError("Coxeter matrix needs 1 on the diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != m[j][i]) throw ConfigError("Coxeter matrix is not symmetric");
      if (i != j && m[i][j] != 2 && m[i][j] != 3 && m[i][j] != 4 && m[i][j] != 6)
        throw ConfigError("Coxeter matrix entry outside {2,3,4,6}");
    }
  }
}

CoxeterGroup CoxeterGroup::from_cartan(const IntMatrix& cartan, std::size_t cap) {
  const int n = static_cast<int>(cartan.size());
  if (n == 0) throw ConfigError("empty Cartan matrix");
  // Reflection representation on the simple-root basis; column j of an
  // element's matrix holds w(alpha_j).
  std::vector<Mat> gens(n);
  for (int i = 0; i < n; ++i) {
    Mat s(static_cast<std::size_t>(n) * n, 0);
    for (int j = 0; j < n; ++j) s[j * n + j] = 1;
    for (int j = 0; j < n; ++j) s[i * n + j] -= cartan[i][j];
    gens[i] = std::move(s);
  }
  auto positive_column = [n](const Mat& m, int j) {
    for (int i = 0; i < n; ++i)
      if (m[i * n + j] < 0) return false;
    return true;
  };

  CoxeterGroup g;
  g.rank_ = n;
  std::vector<Mat> mats;
  std::map<Mat, ElementId> index;
  Mat id(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) id[j * n + j] = 1;
  mats.push_back(id);
  index.emplace(id, 0);
  g.length_.push_back(0);
  g.word_.emplace_back();

  // Level-by-level BFS; scanning a level in id order and generators in
  // increasing order discovers each element first via its lex-least word.
  std::size_t level_begin = 0;
  while (level_begin < mats.size()) {
    const std::size_t level_end = mats.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (int s = 0; s < n; ++s) {
        if (!positive_column(mats[w], s)) continue;
        Mat next = mat_mul(mats[w], gens[s], n);
        if (index.count(next)) continue;
        if (mats.size() >= cap)
          throw SizeError("Coxeter group exceeds the order cap " + std::to_string(cap));
        const auto id_new = static_cast<ElementId>(mats.size());
        index.emplace(next, id_new);
        mats.push_back(std::move(next));
        g.length_.push_back(g.length_[w] + 1);
        Word word = g.word_[w];
        word.push_back(s);
        g.word_.push_back(std::move(word));
      }
    }
    level_begin = level_end;
  }

  const std::size_t size = mats.size();
  g.left_.resize(size * n);
  g.right_.resize(size * n);
  for (std::size_t w = 0; w < size; ++w) {
    for (int s = 0; s < n; ++s) {
      g.right_[w * n + s] = index.at(mat_mul(mats[w], gens[s], n));
      g.left_[w * n + s] = index.at(mat_mul(gens[s], mats[w], n));
    }
  }
  g.inverse_.resize(size);
  for (std::size_t w = 0; w < size; ++w) {
    Word rev(g.word_[w].rbegin(), g.word_[w].rend());
    g.inverse_[w] = g.from_word(rev);
  }
  g.build_bruhat();
  return g;
}

CoxeterGroup CoxeterGroup::from_coxeter_matrix(const IntMatrix& m, std::size_t cap) {
  validate_coxeter_matrix(m);
  const int n = static_cast<int>(m.size());
  // Edges with m >= 3 must form a forest for this Cartan assignment to be valid.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  IntMatrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    for (int j = i + 1; j < n; ++j) {
      if (m[i][j] == 2) continue;
      const int ri = find(i), rj = find(j);
      if (ri == rj) throw ConfigError("Coxeter graph has a cycle; not a finite Weyl type");
      parent[ri] = rj;
      a[i][j] = -1;
      a[j][i] = m[i][j] == 3 ? -1 : m[i][j] == 4 ? -2 : -3;
    }
  }
  return from_cartan(a, cap);
}

ElementId CoxeterGroup::multiply(ElementId x, ElementId y) const {
  for (int s : word_[y]) x = right(x, s);
  return x;
}

ElementId CoxeterGroup::from_word(const Word& w) const {
  ElementId x = 0;
  for (int s : w) x = right(x, s);
  return x;
}

ElementId CoxeterGroup::longest_element(const std::vector<int>& subset) const {
  ElementId w = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int s : subset) {
      if (s < 0 || s >= rank_) throw ConfigError("generator index out of range");
      if (!is_right_descent(w, s)) {
        w = right(w, s);
        grew = true;
      }
    }
  }
  return w;
}

ElementId CoxeterGroup::longest_element() const {
  return static_cast<ElementId>(size() - 1);
}

void CoxeterGroup::build_bruhat() {
  const std::size_t n = size();
  const std::size_t words = (n + 63) / 64;
  bruhat_.assign(n, std::vector<std::uint64_t>(words, 0));
  bruhat_[0][0] = 1;
  // The subword products of a reduced word u*s are those of u together with
  // those of u times s.
  for (std::size_t y = 1; y < n; ++y) {
    const int s = word_[y].back();
    const ElementId prefix = right(static_cast<ElementId>(y), s);
    auto& row = bruhat_[y];
    row = bruhat_[prefix];
    for (std::size_t x = 0; x < n; ++x) {
      if ((bruhat_[prefix][x / 64] >> (x % 64)) & 1U) {
        const ElementId xs = right(static_cast<ElementId>(x), s);
        row[xs / 64] |= std::uint64_t{1} << (xs % 64);
      }
    }
  }
}

std::vector<ElementId> CoxeterGroup::bruhat_interval_below(ElementId y) const {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < size(); ++x)
    if (bruhat_leq(x, y)) out.push_back(x);
  return out;
}

int CoxeterGroup::order_of(ElementId w) const {
  int k = 1;
  ElementId x = w;
  while (x != identity()) {
    x = multiply(x, w);
    ++k;
  }
  return k;
}

IntMatrix CoxeterGroup::coxeter_matrix() const {
  IntMatrix m(rank_, std::vector<int>(rank_, 1));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (i != j) m[i][j] = order_of(from_word({i, j}));
  return m;
}

std::string CoxeterGroup::word_string(ElementId w) const {
  if (word_[w].empty()) return "e";
  std::string out;
  for (int s : word_[w]) out += std::to_string(s + 1);
  return out;
}

std::optional<ElementId> CoxeterGroup::parse_element(std::string_view text) const {
  if (text == "e" || text == "1_W") return identity();
  Word w;
  for (char c : text) {
    if (c == 's') continue;
    if (c < '1' || c > '9') return std::nullopt;
    const int s = c - '1';
    if (s >= rank_) return std::nullopt;
    w.push_back(s);
  }
  if (w.empty()) return std::nullopt;
  return from_word(w);
}

DiagramAutomorphism DiagramAutomorphism::identity(int rank) {
  std::vector<int> p(rank);
  std::iota(p.begin(), p.end(), 0);
  return DiagramAutomorphism(std::move(p));
}

DiagramAutomorphism DiagramAutomorphism::parse(std::string_view text, int rank) {
  auto out = identity(rank);
  if (text.empty() || text == "id") return out;
  std::vector<bool> assigned(rank, false);
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("automorphism entry '" + item + "' lacks ':'");
    int from = 0, to = 0;
    try {
      from = std::stoi(item.substr(0, colon)) - 1;
      to = std::stoi(item.substr(colon + 1)) - 1;
    } catch (const std::exception&) {
      throw ConfigError("automorphism entry '" + item + "' is not numeric");
    }
    if (from < 0 || from >= rank || to < 0 || to >= rank)
      throw ConfigError("automorphism index out of range in '" + item + "'");
    if (assigned[from]) throw ConfigError("automorphism index listed twice in '" + s + "'");
    assigned[from] = true;
    out.perm_[from] = to;
  }
  std::vector<int> sorted = out.perm_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < rank; ++i)
    if (sorted[i] != i) throw ConfigError("automorphism '" + s + "' is not a bijection");
  return out;
}

bool DiagramAutomorphism::is_identity() const {
  for (int i = 0; i < rank(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

int DiagramAutomorphism::order() const {
  int k = 1;
  std::vector<int> p = perm_;
  auto is_id = [](const std::vector<int>& q) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] != static_cast<int>(i)) return false;
    return true;
  };
  while (!is_id(p)) {
    for (auto& x : p) x = perm_[x];
    ++k;
  }
  return k;
}

void DiagramAutomorphism::validate(const IntMatrix& coxeter) const {
  if (static_cast<std::size_t>(rank()) != coxeter.size())
    throw ConfigError("automorphism rank does not match the group");
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (coxeter[perm_[i]][perm_[j]] != coxeter[i][j])
        throw ConfigError("permutation " + str() + " does not preserve the Coxeter matrix");
}

ElementId DiagramAutomorphism::apply(const CoxeterGroup& g, ElementId w) const {
  ElementId x = g.identity();
  for (int s : g.word(w)) x = g.right(x, perm_[s]);
  return x;
}

DiagramAutomorphism DiagramAutomorphism::compose(const DiagramAutomorphism& inner) const {
  std::vector<int> p(rank());
  for (int i = 0; i < rank(); ++i) p[i] = perm_[inner.perm_[i]];
  return DiagramAutomorphism(std::move(p));
}

std::string DiagramAutomorphism::str() const {
  if (is_identity()) return "id";
  std::string out;
  for (int i = 0; i < rank(); ++i) {
    if (!out.empty()) out += ",";
    out += std::to_string(i + 1) + ":" + std::to_string(perm_[i] + 1);
  }
  return out;
}

std::vector<std::vector<int>> DiagramAutomorphism::orbits() const {
  std::vector<bool> seen(rank(), false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < rank(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = i; !seen[j]; j = perm_[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::shared_ptr<const WeightedSystem> WeightedSystem::build_weyl(const CoxeterDescriptor& d) {
  auto sys = std::make_shared<WeightedSystem>();
  sys->type_ = d;
  sys->group_ = CoxeterGroup::from_cartan(d.cartan_matrix());
  check_internal(sys->group_.coxeter_matrix() == d.coxeter_matrix(),
                 "enumerated group does not match the Coxeter matrix of " + d.label());
  sys->weight_ = std::vector<int>(sys->group_.size());
  for (ElementId w = 0; w < sys->group_.size(); ++w) sys->weight_[w] = sys->group_.length(w);
  sys->gen_weight_.assign(d.rank, 1);
  sys->sigma_ = DiagramAutomorphism::identity(d.rank);
  for (int i = 0; i < d.rank; ++i) sys->orbits_.push_back({i});
  sys->descriptor_ = d.label() + " sigma=id";
  return sys;
}

std::optional<ElementId> WeightedSystem::locate(ElementId ambient_id) const {
  if (!ambient_) return ambient_id < size() ? std::optional<ElementId>(ambient_id) : std::nullopt;
  if (ambient_id >= locate_.size() || locate_[ambient_id] < 0) return std::nullopt;
  return static_cast<ElementId>(locate_[ambient_id]);
}

std::optional<ElementId> WeightedSystem::parse_element(std::string_view text) const {
  auto amb = ambient().parse_element(text);
  if (!amb) return std::nullopt;
  return locate(*amb);
}

std::shared_ptr<const WeightedSystem> fixed_subgroup(const std::shared_ptr<const WeightedSystem>& w,
                                                     const DiagramAutomorphism& sigma) {
  if (w->is_fixed_subsystem()) throw ConfigError("fixed_subgroup expects an unweighted Weyl system");
  const CoxeterGroup& big = w->group();
  sigma.validate(big.coxeter_matrix());
  if (sigma.is_identity()) return w;

  auto sys = std::make_shared<WeightedSystem>();
  sys->type_ = w->type();
  sys->sigma_ = sigma;
  sys->ambient_ = std::shared_ptr<const CoxeterGroup>(w, &w->group());
  sys->orbits_ = sigma.orbits();
  sys->descriptor_ = w->type().label() + " sigma=" + sigma.str();

  const int r = static_cast<int>(sys->orbits_.size());
  std::vector<ElementId> gens(r);
  for (int k = 0; k < r; ++k) {
    gens[k] = big.longest_element(sys->orbits_[k]);
    check_internal(sigma.apply(big, gens[k]) == gens[k], "s_omega is not sigma-fixed");
  }

  std::vector<bool> fixed(big.size(), false);
  std::size_t fixed_count = 0;
  for (ElementId x = 0; x < big.size(); ++x)
    if (sigma.apply(big, x) == x) {
      fixed[x] = true;
      ++fixed_count;
    }

  IntMatrix m(r, std::vector<int>(r, 1));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) m[i][j] = big.order_of(big.multiply(gens[i], gens[j]));
  try {
    sys->group_ = CoxeterGroup::from_coxeter_matrix(m);
  } catch (const ConfigError& e) {
    throw InternalError(std::string("fixed-point subgroup has no valid Coxeter matrix: ") + e.what());
  }
  const CoxeterGroup& small = sys->group_;

  // phi: abstract Coxeter group -> W, along canonical words. Checking
  // phi(c s) = phi(c) g_s for every c, s makes phi a well-defined homomorphism;
  // injectivity plus image == fixed set makes it an isomorphism onto W^sigma.
  sys->embed_.resize(small.size());
  for (ElementId c = 0; c < small.size(); ++c) {
    ElementId x = big.identity();
    for (int s : small.word(c)) x = big.multiply(x, gens[s]);
    sys->embed_[c] = x;
  }
  for (ElementId c = 0; c < small.size(); ++c)
    for (int s = 0; s < r; ++s)
      check_internal(sys->embed_[small.right(c, s)] == big.multiply(sys->embed_[c], gens[s]),
                     "Coxeter presentation of the fixed-point subgroup fails");
  sys->locate_.assign(big.size(), -1);
  for (ElementId c = 0; c < small.size(); ++c) {
    const ElementId x = sys->embed_[c];
    check_internal(fixed[x], "image of the fixed-point subgroup leaves W^sigma");
    check_internal(sys->locate_[x] < 0, "fixed-point subgroup embedding is not injective");
    sys->locate_[x] = c;
  }
  check_internal(small.size() == fixed_count, "fixed-point subgroup is not generated by the s_omega");

  sys->weight_.resize(small.size());
  for (ElementId c = 0; c < small.size(); ++c) sys->weight_[c] = big.length(sys->embed_[c]);
  sys->gen_weight_.resize(r);
  for (int s = 0; s < r; ++s) sys->gen_weight_[s] = big.length(gens[s]);
  for (ElementId c = 0; c < small.size(); ++c)
    for (int s = 0; s < r; ++s) {
      const ElementId cs = small.right(c, s);
      if (small.length(cs) > small.length(c))
        check_internal(sys->weight_[cs] == sys->weight_[c] + sys->gen_weight_[s],
                       "restricted length is not a weight function");
    }

  for (ElementId x = 0; x < small.size(); ++x)
    for (ElementId y = 0; y < small.size(); ++y)
      check_internal(small.bruhat_leq(x, y) == big.bruhat_leq(sys->embed_[x], sys->embed_[y]),
                     "intrinsic Bruhat order of W^sigma differs from the restricted order");
  return sys;
}

DiagramAutomorphism restrict_automorphism(const WeightedSystem& sys, const DiagramAutomorphism& delta) {
  const CoxeterGroup& big = sys.ambient();
  delta.validate(big.coxeter_matrix());
  const auto& sigma = sys.sigma();
  if (delta.compose(sigma) != sigma.compose(delta))
    throw ConfigError("delta " + delta.str() + " does not commute with sigma " + sigma.str());
  if (!sys.is_fixed_subsystem()) return delta;
  const auto& orbits = sys.orbits();
  std::vector<int> perm(orbits.size(), -1);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    std::vector<int> image;
    for (int i : orbits[k]) image.push_back(delta(i));
    std::sort(image.begin(), image.end());
    for (std::size_t l = 0; l < orbits.size(); ++l)
      if (orbits[l] == image) perm[k] = static_cast<int>(l);
    check_internal(perm[k] >= 0, "delta does not permute sigma-orbits");
  }
  DiagramAutomorphism out(std::move(perm));
  out.validate(sys.group().coxeter_matrix());
  for (ElementId w = 0; w < sys.size(); ++w)
    check_internal(sys.embed(out.apply(sys.group(), w)) == delta.apply(big, sys.embed(w)),
                   "restricted delta disagrees with delta on W");
  for (int s = 0; s < sys.rank(); ++s)
    check_internal(sys.generator_weight(out(s)) == sys.generator_weight(s),
                   "delta does not preserve the weight function");
  return out;
}

}  // namespace twistkl
