#pragma once

#include <cstddef>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fanforge/rational.hpp"
#include "fanforge/space.hpp"

namespace fanforge {

// Position along the length-2 glued spoke from x (0) to y (2): t on side A,
// 2 - t on side B. Throws NotAFanPoint for base points.
rational spoke_position(const point& p);

// Memo table for `dist`, keyed by unordered canonical pairs. Lookups and
// inserts may run concurrently.
class dist_cache {
 public:
  bool lookup(const point& p, const point& q, rational& out) const;
  void insert(const point& p, const point& q, const rational& value);
  std::size_t size() const;

 private:
  struct key_hash {
    std::size_t operator()(const std::pair<point, point>& k) const {
      return k.first.hash() * 31 + k.second.hash();
    }
  };
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::pair<point, point>, rational, key_hash> table_;
};

// Capped path metric on the whole tower, exact. Distances between points of
// level <= n agree with the capped metric of the n-th stage.
rational dist(const point& p, const point& q);
rational dist(const point& p, const point& q, dist_cache* cache);

// Shortest paths over an explicit truncation graph. Independent of `dist`.
class truncation_oracle {
 public:
  explicit truncation_oracle(const truncation& trunc);

  // Capped shortest-path lengths from `source` to every truncation point,
  // indexed like trunc.points. Throws PointNotInTruncation.
  std::vector<rational> distances_from(const point& source) const;

  rational distance(const point& p, const point& q) const;

 private:
  struct arc {
    std::size_t to;
    rational length;
  };
  const truncation& trunc_;
  std::vector<std::vector<arc>> adjacency_;

  std::size_t index_of(const point& p) const;
};

rational dist_oracle(const point& p, const point& q, const truncation& trunc);

namespace metric_detail {

// Minimum over routing candidates before the outer cap is applied. Inner
// distances are capped as usual.
rational route_minimum(const point& p, const point& q, dist_cache* cache);

}  // namespace metric_detail

}  // namespace fanforge
