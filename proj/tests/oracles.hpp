#pragma once

// Brute-force reference computations used by the tests. They work on raw
// tables and plain vectors and share no code paths with the library.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "nclosed/group.hpp"

namespace oracle {

using Rows = std::vector<std::vector<std::uint32_t>>;

inline Rows rows_of(const nclosed::FiniteSemigroup& s) {
  Rows r(s.order(), std::vector<std::uint32_t>(s.order()));
  for (std::uint32_t x = 0; x < s.order(); ++x)
    for (std::uint32_t y = 0; y < s.order(); ++y) r[x][y] = s.mul(x, y);
  return r;
}

inline std::optional<std::array<std::uint32_t, 3>> nonassociative_triple(const Rows& t) {
  const auto n = static_cast<std::uint32_t>(t.size());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z)
        if (t[t[x][y]][z] != t[x][t[y][z]]) return std::array{x, y, z};
  return std::nullopt;
}

// Order by repeated multiplication from the identity found by scanning.
inline std::uint64_t element_order(const Rows& t, std::uint32_t x) {
  std::uint32_t e = 0;
  for (std::uint32_t c = 0; c < t.size(); ++c) {
    bool ok = true;
    for (std::uint32_t y = 0; y < t.size(); ++y) ok = ok && t[c][y] == y && t[y][c] == y;
    if (ok) e = c;
  }
  std::uint64_t k = 1;
  for (std::uint32_t y = x; y != e; y = t[y][x]) ++k;
  return k;
}

// Recursively tries every ordered n-tuple from d.
inline bool n_closed(const Rows& t, const std::set<std::uint32_t>& d, std::size_t n) {
  std::function<bool(std::uint32_t, std::size_t)> go = [&](std::uint32_t acc, std::size_t left) {
    if (left == 0) return d.count(acc) == 1;
    for (auto x : d)
      if (!go(t[acc][x], left - 1)) return false;
    return true;
  };
  for (auto x : d)
    if (!go(x, n - 1)) return false;
  return true;
}

// Applies disjoint-or-not cycles (1-based) to a point, rightmost cycle first.
inline unsigned apply_cycles(const std::vector<std::vector<unsigned>>& cycles, unsigned p) {
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& c = *it;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] == p) {
        p = c[(i + 1) % c.size()];
        break;
      }
  }
  return p;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : gcd(b, a % b); }
inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / gcd(a, b) * b; }

}  // namespace oracle
