#pragma once

// Exact Laurent polynomials in one variable v, and integer polynomials in
// X = v^2. Coefficients are GMP integers or rationals; nothing here ever
// touches floating point.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace twistkl {

namespace detail {

inline std::string coeff_string(const mpz_class& c) { return c.get_str(); }
inline std::string coeff_string(const mpq_class& c) { return c.get_str(); }

inline bool is_integral(const mpz_class&) { return true; }
inline bool is_integral(const mpq_class& c) { return c.get_den() == 1; }

}  // namespace detail

/// Sparse Laurent polynomial: a sorted list of (exponent, coefficient) pairs
/// with no zero coefficients stored. The zero polynomial has no terms.
template <class Coeff>
class Laurent {
 public:
  using Term = std::pair<int, Coeff>;

  Laurent() = default;
  Laurent(long c) : Laurent(Coeff(c), 0) {}  // NOLINT(google-explicit-constructor)
  explicit Laurent(const Coeff& c, int exponent = 0) {
    if (c != 0) terms_.emplace_back(exponent, c);
  }

  static Laurent monomial(const Coeff& c, int exponent) { return Laurent(c, exponent); }
  static Laurent v_power(int exponent) { return Laurent(Coeff(1), exponent); }

  /// Builds from arbitrary (possibly unsorted, repeated, zero) terms.
  static Laurent from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Laurent out;
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second += t.second;
        if (out.terms_.back().second == 0) out.terms_.pop_back();
      } else if (t.second != 0) {
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Coeff coeff(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return Coeff(0);
  }

  // Precondition: nonzero.
  int max_exponent() const { return terms_.back().first; }
  int min_exponent() const { return terms_.front().first; }

  /// The bar involution v -> v^-1.
  Laurent bar() const {
    Laurent out;
    out.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      out.terms_.emplace_back(-it->first, it->second);
    return out;
  }

  /// Multiplication by v^shift.
  Laurent shifted(int shift) const {
    Laurent out = *this;
    for (auto& t : out.terms_) t.first += shift;
    return out;
  }

  Coeff at_one() const {
    Coeff s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  bool is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return detail::is_integral(t.second); });
  }

  /// this += c * v^shift * other
  Laurent& add_scaled(const Laurent& other, const Coeff& c, int shift = 0) {
    if (other.is_zero() || c == 0) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
      if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first + shift)) {
        merged.push_back(std::move(*a));
        ++a;
      } else if (a == terms_.end() || b->first + shift < a->first) {
        merged.emplace_back(b->first + shift, c * b->second);
        ++b;
      } else {
        Coeff s = a->second + c * b->second;
        if (s != 0) merged.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  Laurent& operator+=(const Laurent& o) { return add_scaled(o, Coeff(1)); }
  Laurent& operator-=(const Laurent& o) { return add_scaled(o, Coeff(-1)); }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  Laurent& operator*=(const Coeff& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= c;
    }
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Laurent operator*(Laurent a, const Coeff& c) { return a *= c; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.scaled_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.scaled_term(b.terms_[0]);
    const int lo = a.min_exponent() + b.min_exponent();
    const int hi = a.max_exponent() + b.max_exponent();
    std::vector<Coeff> dense(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) dense[x.first + y.first - lo] += x.second * y.second;
    Laurent out;
    for (int e = lo; e <= hi; ++e) {
      auto& c = dense[e - lo];
      if (c != 0) out.terms_.emplace_back(e, std::move(c));
    }
    return out;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  /// Canonical rendering in increasing exponent order, e.g. "-v^-1+2+v^3".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string cs = detail::coeff_string(c);
      const bool neg = c < 0;
      std::string mag = neg ? cs.substr(1) : cs;
      if (neg) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      if (e == 0) {
        out += mag;
        continue;
      }
      if (mag != "1") out += mag.find('/') != std::string::npos ? "(" + mag + ")" : mag;
      out += e == 1 ? "v" : "v^" + std::to_string(e);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << p.str(); }

 private:
  Laurent scaled_term(const Term& t) const {
    Laurent out;
    out.terms_.reserve(terms_.size());
    for (const auto& x : terms_) out.terms_.emplace_back(x.first + t.first, x.second * t.second);
    return out;
  }

  std::vector<Term> terms_;
};

using LaurentZ = Laurent<mpz_class>;
using LaurentQ = Laurent<mpq_class>;

inline LaurentQ to_rational(const LaurentZ& p) {
  std::vector<LaurentQ::Term> t;
  t.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) t.emplace_back(e, mpq_class(c));
  return LaurentQ::from_terms(std::move(t));
}

/// Integer view of a rational Laurent polynomial, or nullopt if some
/// coefficient is not an integer.
inline std::optional<LaurentZ> to_integral(const LaurentQ& p) {
  std::vector<LaurentZ::Term> t;
  for (const auto& [e, c] : p.terms()) {
    if (c.get_den() != 1) return std::nullopt;
    t.emplace_back(e, c.get_num());
  }
  return LaurentZ::from_terms(std::move(t));
}

template <class Coeff>
struct TopCoefficient {
  Coeff coeff;
  bool bounded;  // true iff no exponent exceeds the probe exponent
};

/// Coefficient at `exponent` together with the assertion that nothing sits above it.
template <class Coeff>
TopCoefficient<Coeff> top_coefficient(const Laurent<Coeff>& p, int exponent) {
  return {p.coeff(exponent), p.is_zero() || p.max_exponent() <= exponent};
}

/// Polynomial in X (= v^2) with integer coefficients.
class XPoly {
 public:
  XPoly() = default;
  explicit XPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  static XPoly constant(long c) { return XPoly(std::vector<mpz_class>{mpz_class(c)}); }
  static XPoly one() { return constant(1); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : mpz_class(0); }
  const mpz_class& leading() const { return c_.back(); }

  LaurentZ at_v_squared() const { return to_laurent(2); }
  LaurentZ at_v_minus_squared() const { return to_laurent(-2); }
  mpz_class at(const mpz_class& q) const {
    mpz_class s = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * q + *it;
    return s;
  }

  /// Reads p(v) as a polynomial in v^2; nullopt if p has odd or negative exponents.
  static std::optional<XPoly> from_laurent(const LaurentZ& p) {
    std::vector<mpz_class> c;
    for (const auto& [e, coef] : p.terms()) {
      if (e < 0 || e % 2 != 0) return std::nullopt;
      if (static_cast<std::size_t>(e / 2) >= c.size()) c.resize(e / 2 + 1);
      c[e / 2] = coef;
    }
    return XPoly(std::move(c));
  }

  XPoly& operator+=(const XPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  XPoly& operator-=(const XPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator-(XPoly a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend XPoly operator*(const XPoly& a, const XPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return XPoly(std::move(c));
  }
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

  /// "1+X^2" style, increasing degree.
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = 0; i <= degree(); ++i) {
      const mpz_class& c = c_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      std::string mag = neg ? mpz_class(-c).get_str() : c.get_str();
      if (!out.empty()) out += neg ? "-" : "+";
      else if (neg) out += "-";
      if (i == 0) {
        out += mag;
        continue;
      }
      if (mag != "1") out += mag;
      out += i == 1 ? "X" : "X^" + std::to_string(i);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const XPoly& p) { return os << p.str(); }

 private:
  LaurentZ to_laurent(int step) const {
    std::vector<LaurentZ::Term> t;
    for (int i = 0; i <= degree(); ++i)
      if (c_[i] != 0) t.emplace_back(step * i, c_[i]);
    return LaurentZ::from_terms(std::move(t));
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

}  // namespace twistkl
