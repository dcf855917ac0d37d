#include "fanforge/metric.hpp"

#include <limits>
#include <mutex>
#include <optional>
#include <queue>

#include "fanforge/error.hpp"

namespace fanforge {

rational spoke_position(const point& p) {
  if (p.is_base())
    throw error(error_kind::not_a_fan_point, format_point(p));
  return p.fan_side() == side::A ? p.t() : rational(2 - p.t());
}

bool dist_cache::lookup(const point& p, const point& q, rational& out) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(p < q ? std::pair{p, q} : std::pair{q, p});
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void dist_cache::insert(const point& p, const point& q, const rational& value) {
  std::unique_lock lock(mutex_);
  table_.emplace(p < q ? std::pair{p, q} : std::pair{q, p}, value);
}

std::size_t dist_cache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

namespace metric_detail {

namespace {

bool same_spoke(const point& p, const point& q) {
  return !p.is_base() && !q.is_base() && p.created_at() == q.created_at() &&
         p.spoke() == q.spoke() && p.x() == q.x() && p.y() == q.y();
}

// Points below the top level of the pair stand for themselves: only the
// higher-level endpoint has to leave its fan through an anchor.
std::vector<anchor> exits(const point& p, unsigned top) {
  if (level(p) < top) return {{p, rational(0)}};
  return anchors(p);
}

}  // namespace

rational route_minimum(const point& p, const point& q, dist_cache* cache) {
  std::optional<rational> best;
  auto offer = [&best](rational v) {
    if (!best || v < *best) best = std::move(v);
  };
  if (same_spoke(p, q)) offer(abs(spoke_position(p) - spoke_position(q)));

  const unsigned top = std::max(level(p), level(q));
  for (const auto& [u, cu] : exits(p, top)) {
    for (const auto& [v, cv] : exits(q, top)) {
      offer(cu + dist(u, v, cache) + cv);
    }
  }
  return *best;
}

}  // namespace metric_detail

rational dist(const point& p, const point& q) { return dist(p, q, nullptr); }

rational dist(const point& p, const point& q, dist_cache* cache) {
  if (p == q) return 0;
  if (p.is_base() && q.is_base()) return 2;
  rational cached;
  if (cache && cache->lookup(p, q, cached)) return cached;
  rational d = metric_detail::route_minimum(p, q, cache);
  if (d > 2) d = 2;
  if (cache) cache->insert(p, q, d);
  return d;
}

truncation_oracle::truncation_oracle(const truncation& trunc)
    : trunc_(trunc), adjacency_(trunc.points.size()) {
  for (const auto& e : trunc.edges) {
    const std::size_t a = index_of(e.u);
    const std::size_t b = index_of(e.v);
    adjacency_[a].push_back({b, e.length});
    adjacency_[b].push_back({a, e.length});
  }
}

std::size_t truncation_oracle::index_of(const point& p) const {
  auto it = trunc_.index.find(p);
  if (it == trunc_.index.end())
    throw error(error_kind::point_not_in_truncation, format_point(p));
  return it->second;
}

std::vector<rational> truncation_oracle::distances_from(
    const point& source) const {
  const std::size_t n = adjacency_.size();
  const std::size_t src = index_of(source);
  std::vector<std::optional<rational>> best(n);
  std::vector<bool> done(n, false);

  struct entry {
    rational d;
    std::size_t node;
    bool operator>(const entry& o) const { return d > o.d; }
  };
  std::priority_queue<entry, std::vector<entry>, std::greater<>> queue;
  best[src] = rational(0);
  queue.push({rational(0), src});
  while (!queue.empty()) {
    entry top = queue.top();
    queue.pop();
    if (done[top.node]) continue;
    done[top.node] = true;
    for (const auto& a : adjacency_[top.node]) {
      if (done[a.to]) continue;
      rational cand = top.d + a.length;
      if (!best[a.to] || cand < *best[a.to]) {
        best[a.to] = cand;
        queue.push({std::move(cand), a.to});
      }
    }
  }

  std::vector<rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // The base edge keeps every truncation connected.
    out[i] = best[i] && *best[i] < 2 ? *best[i] : rational(2);
  }
  return out;
}

rational truncation_oracle::distance(const point& p, const point& q) const {
  const std::size_t target = index_of(q);
  return distances_from(p)[target];
}

rational dist_oracle(const point& p, const point& q, const truncation& trunc) {
  return truncation_oracle(trunc).distance(p, q);
}

}  // namespace fanforge
