#include "fanforge/verify.hpp"

#include <chrono>
#include <span>

#include "fanforge/collapse.hpp"
#include "fanforge/error.hpp"
#include "fanforge/metric.hpp"
#include "fanforge/sampling.hpp"

namespace fanforge {

namespace {

// Failures stop being recorded past this many; the count stays exact.
constexpr std::size_t kMaxRecordedFailures = 20;

class recorder {
 public:
  explicit recorder(verify_report& r) : report_(r) {}

  void check(bool ok, const std::string& property, json inputs) {
    if (ok) return;
    ++failed_;
    if (report_.failures.size() < kMaxRecordedFailures)
      report_.failures.push_back({property, std::move(inputs)});
  }

  std::size_t failed() const { return failed_; }

 private:
  verify_report& report_;
  std::size_t failed_ = 0;
};

json points_json(std::initializer_list<point> pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(format_point(p));
  return out;
}

void metric_suite(sampler& s, std::size_t samples, const distance_fn& d,
                  recorder& rec) {
  const point_pool pool = make_pool(s, 2, 6, 5, 64);
  for (std::size_t i = 0; i < samples; ++i) {
    const point p = random_point(s, pool, 3);
    const point q = random_point(s, pool, 3);
    const point r = random_point(s, pool, 3);
    const json in = points_json({p, q, r});
    const rational pq = d(p, q), qp = d(q, p), qr = d(q, r), pr = d(p, r);
    rec.check(pq == qp, "symmetry", in);
    rec.check(d(p, p) == 0, "zero self-distance", in);
    rec.check((pq == 0) == (p == q), "identity of indiscernibles", in);
    rec.check(pr <= pq + qr, "triangle inequality", in);
    rec.check(pq >= 0 && pq <= 2 && pr <= 2 && qr <= 2, "bound by 2", in);

    // Exit-cost formula against a base point.
    if (!p.is_base() && p.x().is_base() && p.y().is_base()) {
      for (base_tag tag : {base_tag::b0, base_tag::b1}) {
        const point z = point::base(tag);
        rational expect = 2;
        for (const auto& [u, c] : anchors(p)) expect = min(expect, c + d(u, z));
        rec.check(d(p, z) == expect, "exit-cost formula", points_json({p, z}));
      }
    }
  }
}

void group_suite(sampler& s, std::size_t samples, recorder& rec) {
  const point_pool pool = make_pool(s, 2, 4, 2, 64);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto lvl = static_cast<unsigned>(s.below(3));
    point p = random_point(s, pool, 3);
    if (!p.is_base() && s.coin()) {
      p = canonicalize(pow2(-static_cast<long>(s.below(6))), p.spoke(),
                       p.fan_side(), p.x(), p.y(), p.created_at());
    }
    const std::span<const point> near(&p, 1);
    const tower_element g = random_element_near(s, pool, lvl, near);
    const tower_element h = random_element_near(s, pool, lvl, near);
    const tower_element k = random_element_near(s, pool, lvl, near);
    auto in = [&] {
      return json{{"g", to_json(g)}, {"h", to_json(h)}, {"k", to_json(k)},
                  {"p", format_point(p)}};
    };
    const tower_element e = identity(lvl);
    rec.check(mul(e, g) == g && mul(g, e) == g, "identity law", in());
    rec.check(mul(g, inv(g)).is_identity() && mul(inv(g), g).is_identity(),
              "inverse law", in());
    rec.check(act(mul(mul(g, h), k), p) == act(mul(g, mul(h, k)), p),
              "associativity", in());
    if (lvl >= 1) {
      const tower_element a = lift(g.base(), lvl);
      const tower_element dh = pure_layer(h.top_layer());
      const tower_element lhs = mul(mul(a, dh), inv(a));
      const tower_element rhs = pure_layer(conj_action(g.base(), h.top_layer()));
      rec.check(act(lhs, p) == act(rhs, p), "conjugation identity", in());
    }
    if (is_marked(p)) {
      const point gp = act(g, p);
      rec.check(is_marked(gp), "marked points stay marked", in());
      if (act(g, p.x()) == p.x() && act(g, p.y()) == p.y())
        rec.check(gp == p, "marked points fixed with their pair", in());
    }
  }
}

void action_suite(sampler& s, std::size_t samples, const distance_fn& d,
                  recorder& rec) {
  const point_pool pool = make_pool(s, 2, 4, 2, 64);
  const rational radii[] = {rational(1, 2), rational(1, 4), rational(1, 8)};
  for (std::size_t i = 0; i < samples; ++i) {
    const auto lvl = static_cast<unsigned>(s.below(3));
    const point p = random_point(s, pool, 3);
    const std::span<const point> near(&p, 1);
    const tower_element g = random_element_near(s, pool, lvl, near);
    const tower_element h = random_element_near(s, pool, lvl, near);
    auto in = [&] {
      return json{{"g", to_json(g)}, {"h", to_json(h)}, {"p", format_point(p)}};
    };
    rec.check(act(mul(g, h), p) == act(g, act(h, p)), "action homomorphism",
              in());
    rec.check(act(inv(g), act(g, p)) == p, "inverse action", in());
    rec.check(act(lift(g, lvl + 1), p) == act(g, p), "lift preserves action",
              in());
    if (p.is_base()) continue;
    const point gp = act(g, p);
    rec.check(level(gp) == level(p), "level preserved", in());
    if (level(p) > lvl) {
      rec.check(gp.t() == p.t() && gp.spoke() == p.spoke() &&
                    gp.fan_side() == p.fan_side(),
                "coordinates preserved above the element's level", in());
    }
    if (act(g, p.x()) == p.x() && act(g, p.y()) == p.y()) {
      rec.check(segment_index(gp.t()) == segment_index(p.t()) &&
                    p.t() < 2 * gp.t() && gp.t() < 2 * p.t(),
                "segment confinement", in());
    }

    // Ball containment around a point below a pure layer's level.
    const unsigned n = 1 + static_cast<unsigned>(s.below(2));
    const point z = pool_member(s, pool, n);
    const rational& eps = radii[s.below(3)];
    const point other = pool_member(s, pool, n);
    if (other == z) continue;
    const rational t = eps / 2 * ratio(1 + static_cast<long>(s.below(15)), 16);
    const bool z_first = s.coin();
    const point w = canonicalize(t, 1 + s.below(pool.max_spoke),
                                 s.coin() ? side::A : side::B,
                                 z_first ? z : other, z_first ? other : z, n);
    if (!(d(z, w) < eps / 2)) continue;
    fan_layer layer = random_layer(s, pool, n, 2);
    layer.set({w.x(), w.y(), w.spoke(), w.fan_side(), segment_index(w.t())},
              s.pl(segment_lo(segment_index(w.t())),
                   segment_hi(segment_index(w.t())), 4));
    const tower_element hw = pure_layer(layer);
    rec.check(d(z, act(hw, w)) < eps, "ball containment",
              json{{"z", format_point(z)}, {"w", format_point(w)},
                   {"eps", to_string(eps)}, {"h", to_json(hw)}});
  }
}

void collapse_suite(sampler& s, std::size_t samples, recorder& rec) {
  const point_pool pool = make_pool(s, 1, 4, 3, 16);
  const rational gammas[] = {rational(1, 4), rational(1, 8), rational(1, 16)};
  for (std::size_t i = 0; i < samples; ++i) {
    const point x = pool_member(s, pool, 2);
    point y = pool_member(s, pool, 2);
    while (y == x) y = pool_member(s, pool, 2);
    const fan_ref fan{x, y, std::max(level(x), level(y)) + 1};
    std::vector<point> fixed;
    const std::size_t nfixed = s.below(3);
    for (std::size_t k = 0; k < nfixed; ++k) {
      fixed.push_back(s.coin() ? fan.at(s.coordinate(16), 1 + s.below(3),
                                        s.coin() ? side::A : side::B)
                               : random_point(s, pool, 2));
    }
    const rational& gamma = gammas[s.below(3)];
    const std::uint64_t spoke =
        convergence_spoke_bound(fan, fixed) + s.below(2);
    const collapse_chain c = build_collapse_chain(
        fan, spoke, gamma, fixed, s.coin() ? side::A : side::B);
    json in{{"fan", json::array({format_point(x), format_point(y)})},
            {"spoke", spoke},
            {"gamma", to_string(gamma)}};
    const auto problems = validate_chain(c);
    rec.check(problems.empty(), "chain invariants", in);
    rec.check(c.total_gap_width() < 2 * gamma, "gap budget", in);

    std::vector<std::pair<point, rational>> table;
    for (const auto& st : c.steps) {
      table.emplace_back(step_from(st), ratio(static_cast<long>(s.below(17)), 16));
    }
    const function_oracle oracles[] = {
        constant_oracle(rational(1, 2)), norm_dist_oracle(x),
        norm_dist_oracle(pool_member(s, pool, 2)),
        table_oracle(std::move(table), rational(1, 3))};
    for (const auto& f : oracles) {
      rec.check(evaluate_chain(f, c).certified, "chain inequality",
                json{{"chain", in}, {"oracle", f.descriptor}});
    }
    const auto id = certify_identification(fan, fixed, oracles[1], gamma);
    rec.check(id.certified, "identification inequality", in);
  }
}

}  // namespace

verify_report run_verify(const verify_options& options) {
  const bool all = options.suite == "all";
  if (!all && options.suite != "metric" && options.suite != "group" &&
      options.suite != "action" && options.suite != "collapse")
    throw error(error_kind::invalid_argument,
                "unknown suite \"" + options.suite + "\"");

  verify_report report;
  report.suite = options.suite;
  report.seed = options.seed;
  const auto started = std::chrono::steady_clock::now();
  const distance_fn d =
      options.distance ? options.distance
                       : distance_fn([](const point& p, const point& q) {
                           return dist(p, q);
                         });
  recorder rec(report);
  sampler s(options.seed);
  if (all || options.suite == "metric") metric_suite(s, options.samples, d, rec);
  if (all || options.suite == "group") group_suite(s, options.samples, rec);
  if (all || options.suite == "action") action_suite(s, options.samples, d, rec);
  if (all || options.suite == "collapse") collapse_suite(s, options.samples, rec);
  report.samples = options.samples * (all ? 4 : 1);
  report.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
  if (rec.failed() > report.failures.size()) {
    report.failures.push_back(
        {"(truncated)",
         json{{"total_failures", rec.failed()},
              {"recorded", report.failures.size()}}});
  }
  return report;
}

json to_json(const verify_report& r, bool include_timing) {
  json out;
  out["suite"] = r.suite;
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  if (include_timing) out["elapsed_seconds"] = r.elapsed_seconds;
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back(json{{"property", f.property}, {"inputs", f.inputs}});
  out["failures"] = std::move(failures);
  return out;
}

}  // namespace fanforge
