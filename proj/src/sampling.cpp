#include "fanforge/sampling.hpp"

#include <algorithm>

#include "fanforge/error.hpp"

namespace fanforge {

std::uint64_t sampler::below(std::uint64_t n) {
  if (n == 0) throw error(error_kind::invalid_argument, "empty range");
  return rng_() % n;
}

rational sampler::coordinate(std::uint64_t max_den) {
  if (below(5) == 0) {
    unsigned k = 0;
    while ((std::uint64_t{1} << (k + 1)) <= max_den && coin()) ++k;
    return pow2(-static_cast<long>(k));
  }
  const std::uint64_t den = 1 + below(max_den);
  const std::uint64_t num = 1 + below(den);
  return ratio(static_cast<long>(num), static_cast<long>(den));
}

pl_map sampler::pl(const rational& lo, const rational& hi,
                   unsigned max_breakpoints) {
  const unsigned interior =
      max_breakpoints > 2 ? static_cast<unsigned>(below(max_breakpoints - 1)) : 0;
  auto pick = [&] {
    std::vector<unsigned> grid;
    while (grid.size() < interior) {
      unsigned g = 1 + static_cast<unsigned>(below(15));
      if (std::find(grid.begin(), grid.end(), g) == grid.end()) grid.push_back(g);
    }
    std::sort(grid.begin(), grid.end());
    return grid;
  };
  const std::vector<unsigned> in = pick();
  const std::vector<unsigned> out = pick();
  const rational width = hi - lo;
  std::vector<breakpoint> bps{{lo, lo}};
  for (std::size_t i = 0; i < interior; ++i) {
    bps.push_back({lo + width * ratio(in[i], 16),
                   lo + width * ratio(out[i], 16)});
  }
  bps.push_back({hi, hi});
  return pl_map(lo, hi, std::move(bps));
}

point_pool make_pool(sampler& s, unsigned levels, std::size_t per_level,
                     std::uint64_t max_spoke, std::uint64_t max_den) {
  point_pool pool;
  pool.max_spoke = max_spoke;
  pool.max_den = max_den;
  pool.by_level.push_back({point::base(base_tag::b0), point::base(base_tag::b1)});
  for (unsigned lvl = 1; lvl <= levels; ++lvl) {
    std::vector<point> layer;
    while (layer.size() < per_level) {
      point p = fan_point_over_pool(s, pool, lvl);
      if (std::find(layer.begin(), layer.end(), p) == layer.end())
        layer.push_back(std::move(p));
    }
    pool.by_level.push_back(std::move(layer));
  }
  return pool;
}

point pool_member(sampler& s, const point_pool& pool, unsigned bound) {
  const unsigned top = std::min(bound, pool.top_level() + 1);
  std::size_t total = 0;
  for (unsigned l = 0; l < top; ++l) total += pool.by_level[l].size();
  std::size_t pick = s.below(total);
  for (unsigned l = 0; l < top; ++l) {
    if (pick < pool.by_level[l].size()) return pool.by_level[l][pick];
    pick -= pool.by_level[l].size();
  }
  return pool.by_level[0][0];
}

point fan_point_over_pool(sampler& s, const point_pool& pool, unsigned lvl) {
  if (lvl == 0) throw error(error_kind::bad_level, "fan points start at level 1");
  point x = pool_member(s, pool, lvl);
  point y = pool_member(s, pool, lvl);
  while (y == x) y = pool_member(s, pool, lvl);
  return canonicalize(s.coordinate(pool.max_den), 1 + s.below(pool.max_spoke),
                      s.coin() ? side::A : side::B, x, y, lvl);
}

point random_point(sampler& s, const point_pool& pool, unsigned max_level) {
  const auto lvl = static_cast<unsigned>(s.below(max_level + 1));
  if (lvl == 0) return pool.by_level[0][s.below(2)];
  return fan_point_over_pool(s, pool, lvl);
}

fan_layer random_layer(sampler& s, const point_pool& pool, unsigned lvl,
                       std::size_t max_support, unsigned max_breakpoints) {
  fan_layer layer(lvl);
  const std::size_t count = s.below(max_support + 1);
  for (std::size_t i = 0; i < count; ++i) {
    point x = pool_member(s, pool, lvl);
    point y = pool_member(s, pool, lvl);
    while (y == x) y = pool_member(s, pool, lvl);
    const auto segment = static_cast<unsigned>(s.below(4));
    fan_key key{x, y, 1 + s.below(pool.max_spoke), s.coin() ? side::A : side::B,
                segment};
    layer.set(key, s.pl(segment_lo(segment), segment_hi(segment),
                        max_breakpoints));
  }
  return layer;
}

tower_element random_element(sampler& s, const point_pool& pool, unsigned lvl,
                             std::size_t max_support, unsigned max_breakpoints) {
  tower_element g;
  for (unsigned k = 1; k <= lvl; ++k)
    g = tower_element(g, random_layer(s, pool, k, max_support, max_breakpoints));
  return g;
}

tower_element random_element_near(sampler& s, const point_pool& pool,
                                  unsigned lvl, std::span<const point> targets,
                                  std::size_t max_support,
                                  unsigned max_breakpoints) {
  std::vector<point> fans;
  for (const auto& t : targets)
    for (const auto& p : anchor_closure(t))
      if (!p.is_base() && std::find(fans.begin(), fans.end(), p) == fans.end())
        fans.push_back(p);

  tower_element g;
  for (unsigned k = 1; k <= lvl; ++k) {
    fan_layer layer = random_layer(s, pool, k, max_support, max_breakpoints);
    for (const auto& p : fans) {
      if (p.created_at() != k || s.coin()) continue;
      const unsigned j = segment_index(p.t());
      pl_map m = s.pl(segment_lo(j), segment_hi(j), std::max(max_breakpoints, 3u));
      // Redraw a few times so the component usually moves p itself.
      for (int tries = 0; tries < 8 && pl_eval(m, p.t()) == p.t(); ++tries)
        m = s.pl(segment_lo(j), segment_hi(j), std::max(max_breakpoints, 3u));
      layer.set({act(g, p.x()), act(g, p.y()), p.spoke(), p.fan_side(), j}, m);
    }
    g = tower_element(g, std::move(layer));
  }
  return g;
}

}  // namespace fanforge
