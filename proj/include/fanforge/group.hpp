#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fanforge/ordermaps.hpp"
#include "fanforge/space.hpp"

namespace fanforge {

// Addresses one segment [2^{-j-1}, 2^{-j}] of one side of one spoke of the
// double fan over the ordered pair (x, y).
struct fan_key {
  point x;
  point y;
  std::uint64_t spoke = 1;
  fanforge::side side = side::A;
  unsigned segment = 0;

  friend bool operator==(const fan_key&, const fan_key&) = default;
  friend std::strong_ordering operator<=>(const fan_key&, const fan_key&) = default;
};

// Lower and upper marked endpoints of segment j.
rational segment_lo(unsigned segment);
rational segment_hi(unsigned segment);

// Finitely supported element of the product of segment groups attached at
// tower level n. Keys outside the support act as the identity; identity maps
// are never stored.
class fan_layer {
 public:
  explicit fan_layer(unsigned level);

  unsigned level() const { return level_; }
  const std::map<fan_key, pl_map>& support() const { return support_; }
  bool empty() const { return support_.empty(); }

  // Throws LevelViolation, DegeneratePair, InvalidCoordinate or
  // DomainMismatch when the key or the map's domain does not fit this layer.
  void set(const fan_key& key, const pl_map& map);

  // Component at key, or nullptr when it acts as the identity.
  const pl_map* find(const fan_key& key) const;

  friend bool operator==(const fan_layer&, const fan_layer&) = default;

 private:
  unsigned level_;
  std::map<fan_key, pl_map> support_;
};

// Element of the level-n tower group: a level n-1 element (the base) paired
// with a level-n fan layer. Stored flattened; layers()[k] is the layer of
// level k + 1.
class tower_element {
 public:
  tower_element() = default;  // the trivial level-0 element
  tower_element(const tower_element& base, fan_layer top);

  unsigned level() const { return static_cast<unsigned>(layers_.size()); }
  std::span<const fan_layer> layers() const { return layers_; }

  // Throws BadLevel at level 0.
  tower_element base() const;
  const fan_layer& top_layer() const;

  bool is_identity() const;

  friend bool operator==(const tower_element&, const tower_element&) = default;

 private:
  std::vector<fan_layer> layers_;
};

tower_element identity(unsigned level);

// Element (identity base, layer): acts only on the layer's own fans.
tower_element pure_layer(const fan_layer& layer);

point act(const tower_element& g, const point& p);

// Semidirect product law (a,b)(c,d) = (ac, b·ᵃd). Throws LevelMismatch.
tower_element mul(const tower_element& g1, const tower_element& g2);

tower_element inv(const tower_element& g);

// Re-keys d by moving every pair (x, y) to (a x, a y). Throws LevelMismatch
// unless level(d) == level(a) + 1.
fan_layer conj_action(const tower_element& a, const fan_layer& d);

// Pads with empty layers up to level m. Throws BadLevel if m < level(g).
tower_element lift(const tower_element& g, unsigned m);

bool fixes(const tower_element& g, std::span<const point> fixed);

}  // namespace fanforge
