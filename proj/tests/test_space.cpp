#include <algorithm>
#include <set>

#include "doctest.h"
#include "fanforge/error.hpp"
#include "fanforge/space.hpp"

using namespace fanforge;

namespace {

rational q(const char* s) { return parse_rational(s); }
const point b0 = point::base(base_tag::b0);
const point b1 = point::base(base_tag::b1);

error_kind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return error_kind::invalid_argument;
}

}  // namespace

TEST_CASE("canonicalize identifications") {
  CHECK(canonicalize(0, 5, side::A, b0, b1, 1) == b0);
  CHECK(canonicalize(0, 5, side::B, b0, b1, 1) == b1);
  const point glued = canonicalize(1, 2, side::B, b0, b1, 1);
  CHECK(glued == canonicalize(1, 2, side::A, b0, b1, 1));
  CHECK(glued.fan_side() == side::A);
  CHECK(glued.t() == 1);
  const point p = canonicalize(q("1/2"), 1, side::A, b0, b1, 1);
  CHECK(p.t() == q("1/2"));
  CHECK(p.spoke() == 1);
  CHECK(p.x() == b0);
  CHECK(p.y() == b1);
  CHECK(p.created_at() == 1);
}

TEST_CASE("canonicalize errors") {
  CHECK(kind_of([] { canonicalize(q("3/2"), 1, side::A, b0, b1, 1); }) ==
        error_kind::invalid_coordinate);
  CHECK(kind_of([] { canonicalize(q("-1/2"), 1, side::A, b0, b1, 1); }) ==
        error_kind::invalid_coordinate);
  CHECK(kind_of([] { canonicalize(q("1/2"), 0, side::A, b0, b1, 1); }) ==
        error_kind::invalid_coordinate);
  CHECK(kind_of([] { canonicalize(q("1/2"), 1, side::A, b0, b0, 1); }) ==
        error_kind::degenerate_pair);
  const point p = canonicalize(q("1/2"), 1, side::A, b0, b1, 1);
  CHECK(kind_of([&] { canonicalize(q("1/2"), 1, side::A, p, b1, 1); }) ==
        error_kind::level_violation);
  CHECK(kind_of([] { canonicalize(q("1/2"), 1, side::A, b0, b1, 0); }) ==
        error_kind::level_violation);
}

TEST_CASE("level and marks") {
  const point p = canonicalize(q("1/2"), 1, side::A, b0, b1, 1);
  CHECK(level(b0) == 0);
  CHECK(level(p) == 1);
  CHECK(level(canonicalize(q("1/3"), 2, side::B, p, b1, 2)) == 2);
  CHECK(is_marked(canonicalize(q("1/4"), 3, side::B, b0, b1, 1)));
  CHECK_FALSE(is_marked(canonicalize(q("1/3"), 3, side::B, b0, b1, 1)));
  CHECK_FALSE(is_marked(b0));
  CHECK(is_marked(canonicalize(1, 3, side::A, b0, b1, 1)));
}

TEST_CASE("segment_index") {
  CHECK(segment_index(1) == 0);
  CHECK(segment_index(q("1/2")) == 1);
  CHECK(segment_index(q("3/8")) == 1);
  CHECK(segment_index(q("3/4")) == 0);
  CHECK(segment_index(q("1/4")) == 2);
  CHECK(segment_index(q("1/1024")) == 10);
  CHECK(segment_index(q("1/1023")) == 9);
  CHECK(segment_index(q("5/16")) == 1);
  CHECK_THROWS_AS(segment_index(0), error);
  CHECK_THROWS_AS(segment_index(q("5/4")), error);
  for (long d = 2; d < 300; ++d)
    for (long n = 1; n <= d; ++n) {
      const rational t = ratio(n, d);
      const unsigned j = segment_index(t);
      CHECK((pow2(-static_cast<long>(j) - 1) < t && t <= pow2(-static_cast<long>(j))));
    }
}

TEST_CASE("anchors") {
  const auto a = anchors(b1);
  REQUIRE(a.size() == 1);
  CHECK(a[0].target == b1);
  CHECK(a[0].cost == 0);

  const auto pa = anchors(canonicalize(q("1/2"), 1, side::A, b0, b1, 1));
  REQUIRE(pa.size() == 2);
  CHECK(pa[0].target == b0);
  CHECK(pa[0].cost == q("1/2"));
  CHECK(pa[1].target == b1);
  CHECK(pa[1].cost == q("3/2"));

  const auto pb = anchors(canonicalize(q("1/2"), 1, side::B, b0, b1, 1));
  REQUIRE(pb.size() == 2);
  CHECK(pb[0].target == b0);
  CHECK(pb[0].cost == q("3/2"));
  CHECK(pb[1].target == b1);
  CHECK(pb[1].cost == q("1/2"));
}

TEST_CASE("anchor_closure") {
  CHECK(anchor_closure(b0) == std::vector<point>{b0});
  const point p = canonicalize(q("1/2"), 1, side::A, b0, b1, 1);
  const auto c1 = anchor_closure(p);
  CHECK(std::set<point>(c1.begin(), c1.end()) == std::set<point>{p, b0, b1});
  CHECK(c1.front() == p);
  const point r = canonicalize(q("1/3"), 2, side::A, p, b1, 2);
  const auto c2 = anchor_closure(r);
  CHECK(c2.size() == 4);
  CHECK(std::set<point>(c2.begin(), c2.end()) == std::set<point>{r, p, b0, b1});
}

TEST_CASE("parse and format") {
  CHECK(parse_point("b0") == b0);
  const point p = parse_point("fan(1/2;1;A;1;b0,b1)");
  CHECK(p == canonicalize(q("1/2"), 1, side::A, b0, b1, 1));
  CHECK(format_point(p) == "fan(1/2;1;A;1;b0,b1)");
  CHECK(parse_point("fan(0;3;B;1;b0,b1)") == b1);
  CHECK(parse_point("fan(2/4;1;A;1;b0,b1)") == p);
  CHECK(format_point(parse_point("fan(1;1;B;1;b0,b1)")) == "fan(1;1;A;1;b0,b1)");
  const std::string nested = "fan(1/3;2;B;2;fan(1/2;1;A;1;b0,b1),b1)";
  CHECK(format_point(parse_point(nested)) == nested);

  try {
    parse_point("fan(1/2;1;C;1;b0,b1)");
    FAIL("expected an error");
  } catch (const syntax_error& e) {
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(parse_point("b2"), syntax_error);
  CHECK_THROWS_AS(parse_point("fan(1/2;1;A;1;b0,b1) x"), syntax_error);
  CHECK(kind_of([] { parse_point("fan(1/2;1;A;1;b0,b0)"); }) ==
        error_kind::degenerate_pair);

  const auto [x, y] = parse_point_pair("fan(1/2;1;A;1;b0,b1),b0");
  CHECK(x == p);
  CHECK(y == b0);
}

TEST_CASE("ordering and hashing are structural") {
  const point p = parse_point("fan(1/2;1;A;1;b0,b1)");
  const point p2 = canonicalize(ratio(2, 4), 1, side::A, b0, b1, 1);
  CHECK(p == p2);
  CHECK(p.hash() == p2.hash());
  CHECK(std::hash<point>{}(p) == p.hash());
  CHECK(b0 < b1);
  CHECK(b1 < p);
}

TEST_CASE("nearby_point") {
  const point p = parse_point("fan(1/2;1;A;1;b0,b1)");
  const point n = nearby_point(p, q("1/8"));
  CHECK(n != p);
  CHECK(n.t() == q("1/16"));
  CHECK(n.x() == p);
  CHECK(n.created_at() == 2);
  CHECK(nearby_point(b0, 4).t() == 1);
}

TEST_CASE("truncations") {
  const truncation t0 = enumerate_truncation(0, 1, 2);
  CHECK(t0.points.size() == 2);
  REQUIRE(t0.edges.size() == 1);
  CHECK(t0.edges[0].length == 2);

  const truncation t1 = enumerate_truncation(1, 1, 2);
  CHECK(t1.points.size() == 8);

  const truncation t2 = enumerate_truncation(1, 2, 8);
  std::set<point> seen;
  for (const auto& p : t2.points) {
    CHECK(seen.insert(p).second);
    CHECK(t2.contains(p));
    if (!p.is_base()) {
      CHECK(p.t() > 0);
      CHECK(p.t() <= 1);
      CHECK((p.t() < 1 || p.fan_side() == side::A));
      CHECK(p.x() != p.y());
      CHECK(level(p.x()) < p.created_at());
      CHECK(p.spoke() <= 2);
    }
  }
  // 2 ordered pairs, 2 spokes: 7 + 7 + glued point per spoke.
  CHECK(t2.points.size() == 2 + 2 * 2 * 15);
  for (const auto& e : t2.edges) {
    CHECK(t2.contains(e.u));
    CHECK(t2.contains(e.v));
    CHECK(e.length > 0);
  }

  CHECK_THROWS_AS(enumerate_truncation(1, 0, 2), error);
  CHECK_THROWS_AS(enumerate_truncation(1, 1, 6), error);
  CHECK_THROWS_AS(enumerate_truncation(1, 1, 1), error);
}

TEST_CASE("dot export") {
  const std::string dot = to_dot(enumerate_truncation(0, 1, 2));
  CHECK(dot.rfind("graph truncation {", 0) == 0);
  CHECK(dot.find("label=\"b0\"") != std::string::npos);
  CHECK(dot.find("label=\"2\"") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
  CHECK(dot.back() == '\n');
}
