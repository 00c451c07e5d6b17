#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "twistkl/laurent.hpp"

namespace twistkl {

/// Integers that fit in 64 bits are emitted as JSON numbers, anything larger
/// (or any non-integral rational) as a decimal string.
inline nlohmann::json coeff_json(const mpz_class& c) {
  if (c.fits_slong_p()) return static_cast<long>(c.get_si());
  return c.get_str();
}

inline nlohmann::json coeff_json(const mpq_class& c) {
  if (c.get_den() == 1) return coeff_json(mpz_class(c.get_num()));
  return c.get_str();
}

/// [[exp, coeff], ...] in increasing exponent order.
template <class Coeff>
nlohmann::json to_json(const Laurent<Coeff>& p) {
  auto out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e, coeff_json(c)});
  return out;
}

inline mpz_class mpz_from_json(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(j.get<long>());
}

inline LaurentZ laurent_from_json(const nlohmann::json& j) {
  std::vector<LaurentZ::Term> t;
  for (const auto& term : j) t.emplace_back(term.at(0).get<int>(), mpz_from_json(term.at(1)));
  return LaurentZ::from_terms(std::move(t));
}

inline nlohmann::json to_json(const XPoly& p) {
  auto out = nlohmann::json::array();
  for (const auto& c : p.coeffs()) out.push_back(coeff_json(c));
  return out;
}

inline XPoly xpoly_from_json(const nlohmann::json& j) {
  std::vector<mpz_class> c;
  for (const auto& x : j) c.push_back(mpz_from_json(x));
  return XPoly(std::move(c));
}

}  // namespace twistkl

namespace twistkl::detail {

/// Splits a canonical rendering into (exponent of `var`, coefficient) terms.
/// Returns false on anything that is not a canonical rendering.
inline bool parse_terms(const std::string& s, char var, std::vector<std::pair<int, mpz_class>>& out) {
  out.clear();
  if (s == "0") return true;
  std::size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (i != 0) {
      return false;
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    int e = 0;
    if (i < s.size() && s[i] == var) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string es;
        if (i < s.size() && s[i] == '-') es += s[i++];
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) es += s[i++];
        if (es.empty() || es == "-") return false;
        e = std::stoi(es);
      }
    } else if (digits.empty()) {
      return false;
    }
    mpz_class c(digits.empty() ? "1" : digits);
    out.emplace_back(e, neg ? mpz_class(-c) : c);
  }
  return true;
}

}  // namespace twistkl::detail

namespace twistkl {

/// Inverse of XPoly::str. nullopt on malformed text.
inline std::optional<XPoly> xpoly_from_text(const std::string& s) {
  std::vector<std::pair<int, mpz_class>> t;
  if (!detail::parse_terms(s, 'X', t)) return std::nullopt;
  std::vector<mpz_class> c;
  for (auto& [e, x] : t) {
    if (e < 0) return std::nullopt;
    if (static_cast<std::size_t>(e) >= c.size()) c.resize(e + 1);
    c[e] += x;
  }
  return XPoly(std::move(c));
}

/// Inverse of LaurentZ::str. nullopt on malformed text.
inline std::optional<LaurentZ> laurent_from_text(const std::string& s) {
  std::vector<std::pair<int, mpz_class>> t;
  if (!detail::parse_terms(s, 'v', t)) return std::nullopt;
  std::vector<LaurentZ::Term> terms(t.begin(), t.end());
  return LaurentZ::from_terms(std::move(terms));
}

}  // namespace twistkl
