#pragma once

// Test-side reference computations. None of these call into the code under
// test beyond data types and parsing.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "fanforge/ordermaps.hpp"
#include "fanforge/rational.hpp"
#include "fanforge/space.hpp"

namespace oracle {

using fanforge::rational;

// Linear interpolation through a sorted list of (input, output) nodes.
inline rational interpolate(const std::vector<std::pair<rational, rational>>& nodes,
                            const rational& t) {
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& [x0, y0] = nodes[i];
    const auto& [x1, y1] = nodes[i + 1];
    if (t >= x0 && t <= x1) {
      rational r = y0 + (t - x0) * (y1 - y0) / (x1 - x0);
      r.canonicalize();
      return r;
    }
  }
  return rational(-1);
}

inline std::vector<std::pair<rational, rational>> nodes_of(
    const fanforge::pl_map& m) {
  std::vector<std::pair<rational, rational>> out;
  for (const auto& bp : m.breakpoints()) out.emplace_back(bp.input, bp.output);
  return out;
}

// All-pairs shortest paths on the truncation graph by Floyd-Warshall, capped
// at 2. Missing entries mean "unreachable", which the cap turns into 2.
class all_pairs {
 public:
  explicit all_pairs(const fanforge::truncation& t) : trunc_(t) {
    const std::size_t n = t.points.size();
    d_.assign(n, std::vector<std::optional<rational>>(n));
    for (std::size_t i = 0; i < n; ++i) d_[i][i] = rational(0);
    for (const auto& e : t.edges) {
      const std::size_t u = t.index.at(e.u), v = t.index.at(e.v);
      if (!d_[u][v] || e.length < *d_[u][v]) d_[u][v] = d_[v][u] = e.length;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        if (!d_[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!d_[k][j]) continue;
          rational via = *d_[i][k] + *d_[k][j];
          if (!d_[i][j] || via < *d_[i][j]) d_[i][j] = via;
        }
      }
  }

  rational operator()(const fanforge::point& p, const fanforge::point& q) const {
    const auto& v = d_[trunc_.index.at(p)][trunc_.index.at(q)];
    if (!v || *v > 2) return rational(2);
    return *v;
  }

 private:
  const fanforge::truncation& trunc_;
  std::vector<std::vector<std::optional<rational>>> d_;
};

// Half the distance to b0 of a point on a spoke of the double fan over
// (b0, b1) or (b1, b0), read off the spoke geometry directly.
inline rational half_dist_to_b0(bool x_is_b0, const rational& position) {
  rational d = x_is_b0 ? position : rational(2) - position;
  return d / 2;
}

// Largest |f(z) - f(vz)| over every mover on the base fans sending
// lo + a to hi - b for grid offsets a, b, with z on the grid. f is
// half the distance to b0.
inline rational brute_force_refuter_max(const rational& grid,
                                        unsigned max_segment) {
  rational best = 0;
  for (bool x_is_b0 : {true, false}) {
    for (bool side_a : {true, false}) {
      for (unsigned j = 0; j <= max_segment; ++j) {
        rational hi = 1;
        for (unsigned k = 0; k < j; ++k) hi /= 2;
        const rational lo = hi / 2;
        for (rational a = grid; lo + a < hi; a += grid) {
          for (rational b = grid; lo + a < hi - b; b += grid) {
            const std::vector<std::pair<rational, rational>> nodes{
                {lo, lo}, {lo + a, hi - b}, {hi, hi}};
            for (rational z = lo; z <= hi; z += grid) {
              const rational vz = interpolate(nodes, z);
              const rational pz = side_a ? z : rational(2) - z;
              const rational pvz = side_a ? vz : rational(2) - vz;
              rational delta = half_dist_to_b0(x_is_b0, pz) -
                               half_dist_to_b0(x_is_b0, pvz);
              if (delta < 0) delta = -delta;
              if (delta > best) best = delta;
            }
          }
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
