#include "doctest.h"
#include "fanforge/error.hpp"
#include "fanforge/group.hpp"
#include "fanforge/sampling.hpp"

using namespace fanforge;

namespace {

rational q(const char* s) { return parse_rational(s); }
point P(const char* s) { return parse_point(s); }
const point b0 = point::base(base_tag::b0);
const point b1 = point::base(base_tag::b1);

// Level-1 element with a single component on segment 1 of spoke 1, side A,
// sending 5/16 to 7/16.
tower_element h_example() {
  fan_layer layer(1);
  layer.set({b0, b1, 1, side::A, 1},
            pl_map(q("1/4"), q("1/2"),
                   {{q("1/4"), q("1/4")}, {q("5/16"), q("7/16")}, {q("1/2"), q("1/2")}}));
  return pure_layer(layer);
}

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

TEST_CASE("identity") {
  CHECK(identity(0).level() == 0);
  CHECK(identity(0).is_identity());
  CHECK(identity(3).level() == 3);
  CHECK(identity(3).is_identity());
  const point p = P("fan(1/3;2;B;2;fan(1/2;1;A;1;b0,b1),b1)");
  CHECK(act(identity(2), p) == p);
  CHECK(act(identity(0), p) == p);
  const tower_element h = h_example();
  CHECK(mul(identity(1), h) == h);
  CHECK(mul(h, identity(1)) == h);
}

TEST_CASE("segments") {
  CHECK(segment_lo(0) == q("1/2"));
  CHECK(segment_hi(0) == 1);
  CHECK(segment_lo(3) == q("1/16"));
  CHECK(segment_hi(3) == q("1/8"));
}

TEST_CASE("fan_layer validation") {
  CHECK(kind_of([] { fan_layer(0); }) == error_kind::bad_level);
  fan_layer layer(1);
  const pl_map seg1 = pl_map::identity(q("1/4"), q("1/2"));
  CHECK(kind_of([&] { layer.set({b0, b0, 1, side::A, 1}, seg1); }) ==
        error_kind::degenerate_pair);
  CHECK(kind_of([&] { layer.set({b0, b1, 1, side::A, 0}, seg1); }) ==
        error_kind::domain_mismatch);
  CHECK(kind_of([&] { layer.set({b0, b1, 0, side::A, 1}, seg1); }) ==
        error_kind::invalid_coordinate);
  CHECK(kind_of([&] { layer.set({P("fan(1/2;1;A;1;b0,b1)"), b1, 1, side::A, 1}, seg1); }) ==
        error_kind::level_violation);
  layer.set({b0, b1, 1, side::A, 1}, seg1);
  CHECK(layer.empty());
  CHECK(layer.find({b0, b1, 1, side::A, 1}) == nullptr);
}

TEST_CASE("tower_element structure") {
  CHECK(kind_of([] { identity(0).base(); }) == error_kind::bad_level);
  CHECK(kind_of([] { identity(0).top_layer(); }) == error_kind::bad_level);
  CHECK(kind_of([] { tower_element(identity(1), fan_layer(1)); }) ==
        error_kind::level_mismatch);
  const tower_element g(identity(1), fan_layer(2));
  CHECK(g.level() == 2);
  CHECK(g.base() == identity(1));
  CHECK(kind_of([] { mul(identity(1), identity(2)); }) == error_kind::level_mismatch);
}

TEST_CASE("act on fan points") {
  const tower_element h = h_example();
  CHECK(act(h, P("fan(5/16;1;A;1;b0,b1)")) == P("fan(7/16;1;A;1;b0,b1)"));
  CHECK(act(h, P("fan(9/32;1;A;1;b0,b1)")) == P("fan(11/32;1;A;1;b0,b1)"));
  CHECK(act(h, P("fan(1/4;1;A;1;b0,b1)")) == P("fan(1/4;1;A;1;b0,b1)"));
  CHECK(act(h, P("fan(1/2;1;A;1;b0,b1)")) == P("fan(1/2;1;A;1;b0,b1)"));
  CHECK(act(h, P("fan(5/16;1;B;1;b0,b1)")) == P("fan(5/16;1;B;1;b0,b1)"));
  CHECK(act(h, P("fan(5/16;2;A;1;b0,b1)")) == P("fan(5/16;2;A;1;b0,b1)"));
  CHECK(act(h, P("fan(5/16;1;A;1;b1,b0)")) == P("fan(5/16;1;A;1;b1,b0)"));
  CHECK(act(h, b0) == b0);
}

TEST_CASE("act extends to higher fans coordinate-wise") {
  const tower_element g = h_example();
  const point qq = P("fan(5/16;1;A;1;b0,b1)");
  const point qq2 = act(g, qq);
  const point p = canonicalize(q("1/2"), 3, side::A, qq, b1, 2);
  const point expect = canonicalize(q("1/2"), 3, side::A, qq2, b1, 2);
  CHECK(act(g, p) == expect);
  CHECK(act(lift(g, 2), p) == expect);
}

TEST_CASE("inverse") {
  CHECK(inv(identity(0)) == identity(0));
  CHECK(inv(identity(2)) == identity(2));
  const tower_element h = h_example();
  const tower_element hi = inv(h);
  REQUIRE(hi.top_layer().support().size() == 1);
  const auto& [key, map] = *hi.top_layer().support().begin();
  CHECK(key == fan_key{b0, b1, 1, side::A, 1});
  CHECK(map == pl_invert(h.top_layer().support().begin()->second));
  CHECK(mul(h, hi).is_identity());
  CHECK(mul(hi, h) == identity(1));
}

TEST_CASE("conj_action re-keys pairs") {
  fan_layer d(2);
  const point qq = P("fan(5/16;1;A;1;b0,b1)");
  d.set({qq, b1, 2, side::B, 0},
        pl_map(q("1/2"), 1, {{q("1/2"), q("1/2")}, {q("3/4"), q("5/8")}, {1, 1}}));
  CHECK(conj_action(identity(1), d) == d);
  const tower_element a = h_example();
  const fan_layer moved = conj_action(a, d);
  REQUIRE(moved.support().size() == 1);
  CHECK(moved.support().begin()->first.x == act(a, qq));
  CHECK(moved.support().begin()->first.y == b1);
  CHECK(kind_of([&] { conj_action(identity(0), d); }) == error_kind::level_mismatch);

  const tower_element ad = mul(mul(lift(a, 2), pure_layer(d)), inv(lift(a, 2)));
  const tower_element conj = pure_layer(moved);
  sampler s(3);
  const point_pool pool = make_pool(s, 2, 4, 2, 16);
  for (int i = 0; i < 100; ++i) {
    const point p = random_point(s, pool, 3);
    CHECK(act(ad, p) == act(conj, p));
  }
  const point on = canonicalize(q("3/4"), 2, side::B, act(a, qq), b1, 2);
  CHECK(act(ad, on) == canonicalize(q("5/8"), 2, side::B, act(a, qq), b1, 2));
}

TEST_CASE("lift") {
  const tower_element h = h_example();
  CHECK(lift(h, 1) == h);
  CHECK(lift(identity(0), 3) == identity(3));
  CHECK(kind_of([&] { lift(h, 0); }) == error_kind::bad_level);
  sampler s(21);
  const point_pool pool = make_pool(s, 2, 4, 2, 16);
  const tower_element g = random_element(s, pool, 2);
  for (int i = 0; i < 100; ++i) {
    const point p = random_point(s, pool, 3);
    CHECK(act(lift(g, 4), p) == act(g, p));
  }
}

TEST_CASE("fixes") {
  const std::vector<point> any{b0, P("fan(1/3;1;A;1;b0,b1)")};
  CHECK(fixes(identity(2), any));
  const tower_element h = h_example();
  const std::vector<point> moved{P("fan(5/16;1;A;1;b0,b1)")};
  CHECK_FALSE(fixes(h, moved));
  const std::vector<point> marked{b0, b1, P("fan(1/4;1;A;1;b0,b1)")};
  CHECK(fixes(h, marked));
}

TEST_CASE("algebra on random samples") {
  sampler s(99);
  const point_pool pool = make_pool(s, 2, 4, 2, 32);
  for (int i = 0; i < 200; ++i) {
    const unsigned lvl = 1 + static_cast<unsigned>(s.below(2));
    const tower_element g = random_element(s, pool, lvl);
    const tower_element h = random_element(s, pool, lvl);
    const tower_element k = random_element(s, pool, lvl);
    const point p = random_point(s, pool, 3);
    CHECK(act(mul(g, h), p) == act(g, act(h, p)));
    CHECK(act(inv(g), act(g, p)) == p);
    CHECK(mul(g, inv(g)) == identity(lvl));
    CHECK(mul(mul(g, h), k) == mul(g, mul(h, k)));
    CHECK(level(act(g, p)) == level(p));
  }
}
