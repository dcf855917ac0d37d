#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fanforge/rational.hpp"

namespace fanforge {

enum class base_tag : std::uint8_t { b0, b1 };
enum class side : std::uint8_t { A, B };

char to_char(side s);

// Canonical address of a point of the iterated double-fan space. Either one of
// the two base points, or a fan coordinate (t, spoke, side) on the double fan
// created at tower level `created_at` over the ordered pair (x, y).
//
// Canonical form: 0 < t <= 1, t == 1 only on side A, x != y, and both pair
// components have level < created_at. Instances are immutable and share
// structure; only `canonicalize` and `point::base` create them.
class point {
 public:
  static point base(base_tag tag);

  bool is_base() const;
  base_tag tag() const;

  // Fan accessors; only meaningful when !is_base().
  const rational& t() const;
  std::uint64_t spoke() const;
  fanforge::side fan_side() const;
  const point& x() const;
  const point& y() const;
  unsigned created_at() const;

  std::size_t hash() const;

  friend bool operator==(const point& a, const point& b);
  friend std::strong_ordering operator<=>(const point& a, const point& b);

 private:
  struct node;
  explicit point(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  friend point canonicalize(const rational&, std::uint64_t, fanforge::side,
                            const point&, const point&, unsigned);

  std::shared_ptr<const node> node_;
};

struct point_hash {
  std::size_t operator()(const point& p) const { return p.hash(); }
};

// Builds a canonical address. Throws InvalidCoordinate (t outside [0, 1] or
// spoke 0), DegeneratePair (x == y), LevelViolation.
point canonicalize(const rational& t, std::uint64_t spoke, side s,
                   const point& x, const point& y, unsigned created_at);

unsigned level(const point& p);

bool is_marked(const point& p);

// The j >= 0 with 2^{-j-1} < t <= 2^{-j}. Throws InvalidCoordinate unless
// 0 < t <= 1.
unsigned segment_index(const rational& t);

struct anchor {
  point target;
  rational cost;
};

// Exit costs of a point to its base pair; a base point anchors to itself.
std::vector<anchor> anchors(const point& p);

// p together with every pair component reachable by unfolding fan points,
// in first-visit order.
std::vector<point> anchor_closure(const point& p);

// A point distinct from p within distance eps of it: the fan point at
// coordinate eps/2 leaving p toward another point.
point nearby_point(const point& p, const rational& eps);

std::string format_point(const point& p);

// Grammar:
//   point := "b0" | "b1" | "fan(" rat ";" nat ";" ("A"|"B") ";" nat ";"
//            point "," point ")"
// Throws syntax_error with position, or any canonicalize error.
point parse_point(std::string_view text);

// `point "," point`, as used by pair-valued command line flags.
std::pair<point, point> parse_point_pair(std::string_view text);

struct truncation_edge {
  point u, v;
  rational length;
};

// Finite piece of the space: every fan point on the grid i/D (1 <= i <= D) of
// spokes 1..S of every double fan created at levels 1..L over enumerated
// pairs, with the spoke adjacency edges.
struct truncation {
  unsigned max_level = 0;
  std::uint64_t max_spoke = 1;
  std::uint64_t denominator_bound = 2;
  std::vector<point> points;
  std::vector<truncation_edge> edges;
  std::unordered_map<point, std::size_t, point_hash> index;

  bool contains(const point& p) const { return index.count(p) != 0; }
};

// Throws InvalidBounds unless S >= 1 and D >= 2 is a power of two.
truncation enumerate_truncation(unsigned max_level, std::uint64_t max_spoke,
                                std::uint64_t denominator_bound);

// Graphviz rendering: one node per point labeled with its address, one
// undirected edge per truncation edge labeled with its length.
std::string to_dot(const truncation& trunc);

}  // namespace fanforge

template <>
struct std::hash<fanforge::point> {
  std::size_t operator()(const fanforge::point& p) const { return p.hash(); }
};
