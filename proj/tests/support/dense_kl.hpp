#pragma once

// Independent KL oracle for the tests. It shares nothing with the library's
// Hecke code: int64 dense Laurent arrays, bar(T_y) built generator by
// generator from T_s^-1 = v^{-2L(s)} T_s + (v^{-2L(s)} - 1), and each C'_w
// solved from bar invariance plus the degree condition, top entry first.

#include <cstdint>
#include <vector>

#include "twistkl/weyl.hpp"

namespace oracle {

/// Laurent polynomial with exponents in [-span, span], stored densely.
struct Dense {
  int span = 0;
  std::vector<std::int64_t> c;
  explicit Dense(int s = 0) : span(s), c(2 * s + 1, 0) {}
  std::int64_t& at(int e) { return c.at(static_cast<std::size_t>(e + span)); }
  std::int64_t at(int e) const { return e < -span || e > span ? 0 : c[e + span]; }
  bool zero() const;
};

/// P_{y,w} as int64 coefficient vectors in X = v^2, indexed [y][w]; empty
/// vector for zero.
std::vector<std::vector<std::vector<std::int64_t>>> kl_polynomials(const twistkl::WeightedSystem& sys);

}  // namespace oracle
