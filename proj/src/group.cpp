#include "fanforge/group.hpp"

#include <utility>

#include "fanforge/error.hpp"

namespace fanforge {

rational segment_lo(unsigned segment) { return pow2(-static_cast<long>(segment) - 1); }
rational segment_hi(unsigned segment) { return pow2(-static_cast<long>(segment)); }

fan_layer::fan_layer(unsigned level) : level_(level) {
  if (level == 0)
    throw error(error_kind::bad_level, "fan layers start at level 1");
}

void fan_layer::set(const fan_key& key, const pl_map& map) {
  if (key.spoke == 0)
    throw error(error_kind::invalid_coordinate, "spokes are numbered from 1");
  if (key.x == key.y)
    throw error(error_kind::degenerate_pair,
                "fan key over (" + format_point(key.x) + "," +
                    format_point(key.y) + ")");
  if (fanforge::level(key.x) >= level_ || fanforge::level(key.y) >= level_)
    throw error(error_kind::level_violation,
                "level-" + std::to_string(level_) +
                    " layer cannot carry a fan over points of levels " +
                    std::to_string(fanforge::level(key.x)) + " and " +
                    std::to_string(fanforge::level(key.y)));
  if (map.lo() != segment_lo(key.segment) || map.hi() != segment_hi(key.segment))
    throw error(error_kind::domain_mismatch,
                to_string(map) + " does not live on segment " +
                    std::to_string(key.segment));
  if (map.is_identity())
    support_.erase(key);
  else
    support_.insert_or_assign(key, map);
}

const pl_map* fan_layer::find(const fan_key& key) const {
  auto it = support_.find(key);
  return it == support_.end() ? nullptr : &it->second;
}

tower_element::tower_element(const tower_element& base, fan_layer top)
    : layers_(base.layers_) {
  if (top.level() != base.level() + 1)
    throw error(error_kind::level_mismatch,
                "layer of level " + std::to_string(top.level()) +
                    " over base of level " + std::to_string(base.level()));
  layers_.push_back(std::move(top));
}

tower_element tower_element::base() const {
  if (layers_.empty())
    throw error(error_kind::bad_level, "the level-0 element has no base");
  tower_element b;
  b.layers_.assign(layers_.begin(), layers_.end() - 1);
  return b;
}

const fan_layer& tower_element::top_layer() const {
  if (layers_.empty())
    throw error(error_kind::bad_level, "the level-0 element has no fan layer");
  return layers_.back();
}

bool tower_element::is_identity() const {
  for (const auto& l : layers_)
    if (!l.empty()) return false;
  return true;
}

tower_element identity(unsigned level) {
  tower_element g;
  for (unsigned k = 1; k <= level; ++k) g = tower_element(g, fan_layer(k));
  return g;
}

tower_element pure_layer(const fan_layer& layer) {
  return tower_element(identity(layer.level() - 1), layer);
}

point act(const tower_element& g, const point& p) {
  if (p.is_base() || g.level() == 0) return p;
  const point x = act(g, p.x());
  const point y = act(g, p.y());
  rational t = p.t();
  const unsigned lvl = p.created_at();
  if (lvl <= g.level()) {
    const fan_layer& layer = g.layers()[lvl - 1];
    if (const pl_map* m =
            layer.find({x, y, p.spoke(), p.fan_side(), segment_index(t)}))
      t = pl_eval(*m, t);
  }
  if (t == p.t() && x == p.x() && y == p.y()) return p;
  return canonicalize(t, p.spoke(), p.fan_side(), x, y, lvl);
}

namespace {

fan_layer compose_layers(const fan_layer& outer, const fan_layer& inner) {
  fan_layer out = inner;
  for (const auto& [key, m] : outer.support()) {
    if (const pl_map* in = inner.find(key))
      out.set(key, pl_compose(m, *in));
    else
      out.set(key, m);
  }
  return out;
}

fan_layer invert_layer(const fan_layer& layer) {
  fan_layer out(layer.level());
  for (const auto& [key, m] : layer.support()) out.set(key, pl_invert(m));
  return out;
}

void require_same_level(const tower_element& a, const tower_element& b) {
  if (a.level() != b.level())
    throw error(error_kind::level_mismatch,
                "levels " + std::to_string(a.level()) + " and " +
                    std::to_string(b.level()) + " differ; lift first");
}

}  // namespace

fan_layer conj_action(const tower_element& a, const fan_layer& d) {
  if (d.level() != a.level() + 1)
    throw error(error_kind::level_mismatch,
                "conjugating a level-" + std::to_string(d.level()) +
                    " layer by a level-" + std::to_string(a.level()) +
                    " element");
  if (a.is_identity()) return d;
  fan_layer out(d.level());
  for (const auto& [key, m] : d.support()) {
    fan_key moved = key;
    moved.x = act(a, key.x);
    moved.y = act(a, key.y);
    out.set(moved, m);
  }
  return out;
}

tower_element mul(const tower_element& g1, const tower_element& g2) {
  require_same_level(g1, g2);
  if (g1.level() == 0) return g1;
  const tower_element a = g1.base();
  const tower_element c = g2.base();
  return tower_element(mul(a, c),
                       compose_layers(g1.top_layer(),
                                      conj_action(a, g2.top_layer())));
}

tower_element inv(const tower_element& g) {
  if (g.level() == 0) return g;
  const tower_element a_inv = inv(g.base());
  return tower_element(a_inv, conj_action(a_inv, invert_layer(g.top_layer())));
}

tower_element lift(const tower_element& g, unsigned m) {
  if (m < g.level())
    throw error(error_kind::bad_level,
                "cannot lift a level-" + std::to_string(g.level()) +
                    " element to level " + std::to_string(m));
  tower_element out = g;
  for (unsigned k = g.level() + 1; k <= m; ++k)
    out = tower_element(out, fan_layer(k));
  return out;
}

bool fixes(const tower_element& g, std::span<const point> fixed) {
  for (const auto& p : fixed)
    if (act(g, p) != p) return false;
  return true;
}

}  // namespace fanforge
