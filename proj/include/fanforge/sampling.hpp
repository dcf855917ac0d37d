#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fanforge/group.hpp"
#include "fanforge/ordermaps.hpp"
#include "fanforge/space.hpp"

namespace fanforge {

// Seeded generators for property checks. Output depends only on the seed.
class sampler {
 public:
  explicit sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n)
  bool coin() { return below(2) == 1; }

  // Fan coordinate in (0, 1] with denominator <= max_den; marked
  // coordinates 2^{-k} are drawn with extra weight.
  rational coordinate(std::uint64_t max_den);

  // Strictly increasing PL map on [lo, hi] with at most max_breakpoints
  // breakpoints (endpoints included) on a grid of sixteenths.
  pl_map pl(const rational& lo, const rational& hi, unsigned max_breakpoints);

 private:
  std::mt19937_64 rng_;
};

// Shared points per level, so that sampled points and sampled group elements
// meet on the same fans.
struct point_pool {
  std::uint64_t max_spoke = 2;
  std::uint64_t max_den = 64;
  std::vector<std::vector<point>> by_level;  // by_level[0] == {b0, b1}

  unsigned top_level() const {
    return static_cast<unsigned>(by_level.size()) - 1;
  }
};

point_pool make_pool(sampler& s, unsigned levels, std::size_t per_level,
                     std::uint64_t max_spoke, std::uint64_t max_den);

// Any pool point of level < bound.
point pool_member(sampler& s, const point_pool& pool, unsigned bound);

// Fan point created at `lvl` over two distinct pool points of level < min(lvl,
// pool levels + 1). Throws BadLevel for lvl == 0.
point fan_point_over_pool(sampler& s, const point_pool& pool, unsigned lvl);

// Base point or fan point of level in [0, max_level].
point random_point(sampler& s, const point_pool& pool, unsigned max_level);

fan_layer random_layer(sampler& s, const point_pool& pool, unsigned lvl,
                       std::size_t max_support, unsigned max_breakpoints = 4);

tower_element random_element(sampler& s, const point_pool& pool, unsigned lvl,
                             std::size_t max_support = 3,
                             unsigned max_breakpoints = 4);

// random_element plus, with probability 1/2 each, a random component on the
// fan of every point in the anchor closures of `targets`, keyed where the
// lower levels carry that fan, and redrawn until it moves the point unless
// that point is marked. Uniform sampling almost never hits a given
// point; this makes the element act on it and on its pair.
tower_element random_element_near(sampler& s, const point_pool& pool,
                                  unsigned lvl, std::span<const point> targets,
                                  std::size_t max_support = 3,
                                  unsigned max_breakpoints = 4);

}  // namespace fanforge
