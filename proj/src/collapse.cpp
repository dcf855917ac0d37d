#include "fanforge/collapse.hpp"

#include <algorithm>
#include <unordered_set>

#include "fanforge/error.hpp"
#include "fanforge/metric.hpp"

namespace fanforge {

void fan_ref::validate() const {
  if (x == y)
    throw error(error_kind::degenerate_pair, "fan over (" + format_point(x) +
                                                 "," + format_point(y) + ")");
  if (created_at == 0 || level(x) >= created_at || level(y) >= created_at)
    throw error(error_kind::level_violation,
                "fan created at level " + std::to_string(created_at));
}

point fan_ref::at(const rational& t, std::uint64_t spoke, side s) const {
  return canonicalize(t, spoke, s, x, y, created_at);
}

function_oracle constant_oracle(const rational& value) {
  if (value < 0 || value > 1)
    throw error(error_kind::invalid_argument, "oracle values lie in [0,1]");
  return {[value](const point&) { return value; }, "const:" + to_string(value)};
}

function_oracle norm_dist_oracle(const point& p) {
  auto cache = std::make_shared<dist_cache>();
  return {[p, cache](const point& z) {
            return rational(dist(p, z, cache.get()) / 2);
          },
          "dist:" + format_point(p)};
}

function_oracle table_oracle(std::vector<std::pair<point, rational>> entries,
                             const rational& fallback) {
  auto check = [](const rational& v) {
    if (v < 0 || v > 1)
      throw error(error_kind::invalid_argument, "oracle values lie in [0,1]");
  };
  check(fallback);
  auto table = std::make_shared<std::unordered_map<point, rational, point_hash>>();
  for (auto& [p, v] : entries) {
    check(v);
    table->insert_or_assign(p, v);
  }
  return {[table, fallback](const point& z) {
            auto it = table->find(z);
            return it == table->end() ? fallback : it->second;
          },
          "table:" + std::to_string(table->size()) + " entries"};
}

tower_element build_mover(const fan_ref& fan, std::uint64_t spoke, side s,
                          unsigned segment, const rational& a,
                          const rational& b) {
  fan.validate();
  const rational lo = segment_lo(segment);
  const rational hi = segment_hi(segment);
  if (!(a > 0) || !(b > 0) || !(lo + a < hi - b))
    throw error(error_kind::invalid_offsets,
                "offsets " + to_string(a) + ", " + to_string(b) +
                    " do not fit segment " + std::to_string(segment));
  fan_layer layer(fan.created_at);
  layer.set({fan.x, fan.y, spoke, s, segment},
            pl_map(lo, hi, {{lo, lo}, {lo + a, hi - b}, {hi, hi}}));
  return pure_layer(layer);
}

std::uint64_t convergence_spoke_bound(const fan_ref& fan,
                                      std::span<const point> fixed) {
  std::uint64_t bound = 1;
  for (const auto& p : fixed) {
    for (const auto& q : anchor_closure(p)) {
      if (q.is_base() || q.created_at() != fan.created_at || q.x() != fan.x ||
          q.y() != fan.y)
        continue;
      bound = std::max(bound, q.spoke() + 1);
    }
  }
  return bound;
}

const point& step_from(const chain_step& s) {
  return std::visit([](const auto& st) -> const point& { return st.from; }, s);
}

const point& step_to(const chain_step& s) {
  return std::visit([](const auto& st) -> const point& { return st.to; }, s);
}

std::size_t collapse_chain::move_count() const {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(),
      [](const chain_step& s) { return std::holds_alternative<move_step>(s); }));
}

rational collapse_chain::total_gap_width() const {
  rational total = 0;
  for (const auto& s : steps)
    if (const auto* g = std::get_if<gap_step>(&s)) total += g->width;
  return total;
}

collapse_chain build_collapse_chain(const fan_ref& fan, std::uint64_t spoke,
                                    const rational& gamma,
                                    std::span<const point> fixed, side s) {
  fan.validate();
  if (gamma <= 0)
    throw error(error_kind::budget_too_small,
                "gap budget " + to_string(gamma) + " is not positive");
  if (gamma >= 1)
    throw error(error_kind::invalid_argument, "gap budget must be below 1");
  const std::uint64_t bound = convergence_spoke_bound(fan, fixed);
  if (spoke < bound)
    throw error(error_kind::spoke_too_small,
                "spoke " + std::to_string(spoke) +
                    " meets the fixed set; use a spoke >= " +
                    std::to_string(bound));

  // Segments to cross before the remaining stub is within gamma/2 of the base.
  unsigned k = 1;
  while (pow2(-static_cast<long>(k)) > gamma / 2) ++k;
  // One dyadic offset for every segment: at most gamma/(4K), and small enough
  // that each mover's image point stays strictly inside its segment.
  const rational cap = gamma / (4 * k);
  long e = static_cast<long>(k) + 2;
  while (pow2(-e) > cap) ++e;
  const rational delta = pow2(-e);
  if (!(delta > 0))
    throw error(error_kind::budget_too_small, "no admissible offsets");

  collapse_chain c;
  c.fan = fan;
  c.spoke = spoke;
  c.side = s;
  c.fixed_set.assign(fixed.begin(), fixed.end());
  c.start = fan.at(1, spoke, side::A);
  c.end = fan.base_point(s);
  c.offset = delta;
  c.segments = k;

  point here = c.start;
  for (unsigned j = 0; j < k; ++j) {
    const rational hi = segment_hi(j);
    const rational lo = segment_lo(j);
    point upper = fan.at(hi - delta, spoke, s);
    c.steps.push_back(gap_step{here, upper, abs(spoke_position(here) -
                                                spoke_position(upper))});
    point lower = fan.at(lo + delta, spoke, s);
    tower_element v = inv(build_mover(fan, spoke, s, j, delta, delta));
    c.steps.push_back(move_step{std::move(v), upper, lower});
    here = lower;
  }
  c.steps.push_back(gap_step{here, c.end, here.t()});
  return c;
}

namespace {

bool on_chain_spoke(const collapse_chain& c, const point& p) {
  if (p == c.end) return true;
  if (p.is_base() || p.created_at() != c.fan.created_at ||
      p.spoke() != c.spoke || p.x() != c.fan.x || p.y() != c.fan.y)
    return false;
  return p.t() == 1 || p.fan_side() == c.side;
}

rational coordinate_on_chain(const collapse_chain& c, const point& p) {
  return p == c.end ? rational(0) : p.t();
}

bool brackets_marked(const rational& a, const rational& b) {
  const rational& lo = min(a, b);
  const rational& hi = max(a, b);
  if (lo == 0) return true;
  // Largest marked coordinate <= hi.
  const rational marked = dyadic_exponent(hi)
                              ? hi
                              : pow2(-static_cast<long>(segment_index(hi)) - 1);
  return marked >= lo;
}

}  // namespace

std::vector<std::string> validate_chain(const collapse_chain& c) {
  std::vector<std::string> problems;
  if (c.steps.empty()) {
    problems.push_back("chain has no steps");
    return problems;
  }
  if (c.start != c.fan.at(1, c.spoke, side::A))
    problems.push_back("start is not the glued endpoint of the spoke");
  if (c.end != c.fan.base_point(c.side))
    problems.push_back("end is not the base point of the chain side");
  if (step_from(c.steps.front()) != c.start)
    problems.push_back("first step does not leave the start point");
  if (step_to(c.steps.back()) != c.end)
    problems.push_back("last step does not reach the end point");
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    if (i + 1 < c.steps.size() && step_to(s) != step_from(c.steps[i + 1]))
      problems.push_back(where + "does not connect to the next step");
    if (const auto* m = std::get_if<move_step>(&s)) {
      if (act(m->mover, m->from) != m->to)
        problems.push_back(where + "mover does not take " +
                           format_point(m->from) + " to " +
                           format_point(m->to));
      if (!fixes(m->mover, c.fixed_set))
        problems.push_back(where + "mover moves the fixed set");
    } else {
      const auto& g = std::get<gap_step>(s);
      if (dist(g.from, g.to) != g.width)
        problems.push_back(where + "gap width " + to_string(g.width) +
                           " differs from the distance " +
                           to_string(dist(g.from, g.to)));
      if (!on_chain_spoke(c, g.from) || !on_chain_spoke(c, g.to)) {
        problems.push_back(where + "gap leaves the chain's spoke side");
      } else if (!brackets_marked(coordinate_on_chain(c, g.from),
                                  coordinate_on_chain(c, g.to))) {
        problems.push_back(where + "gap does not cross a marked point");
      }
    }
  }
  return problems;
}

chain_report evaluate_chain(const function_oracle& f, const collapse_chain& c) {
  chain_report r;
  r.mover_max = 0;
  r.gap_total = 0;
  for (const auto& s : c.steps) {
    rational delta = abs(f(step_from(s)) - f(step_to(s)));
    if (std::holds_alternative<move_step>(s)) {
      if (delta > r.mover_max) r.mover_max = delta;
      r.move_deltas.push_back(std::move(delta));
    } else {
      r.gap_total += delta;
      r.gap_deltas.push_back(std::move(delta));
    }
  }
  r.endpoint_gap = abs(f(c.start) - f(c.end));
  r.bound = rational(static_cast<unsigned long>(r.move_deltas.size())) *
                r.mover_max +
            r.gap_total;
  r.certified = r.endpoint_gap <= r.bound;
  return r;
}

refute_result refute_uniformity(const function_oracle& f, const rational& eps,
                                std::span<const point> fixed,
                                const refute_search& search) {
  if (eps <= 0)
    throw error(error_kind::invalid_argument, "epsilon must be positive");
  if (search.offset_grid <= 0)
    throw error(error_kind::invalid_argument, "offset grid must be positive");
  if (search.max_spoke < 1)
    throw error(error_kind::invalid_argument, "need at least one spoke");

  std::vector<point> pool{point::base(base_tag::b0), point::base(base_tag::b1)};
  std::unordered_set<point, point_hash> seen(pool.begin(), pool.end());
  for (const auto& p : fixed)
    for (const auto& q : anchor_closure(p))
      if (seen.insert(q).second) pool.push_back(q);

  refute_result result;
  for (const auto& x : pool) {
    for (const auto& y : pool) {
      if (x == y) continue;
      const fan_ref fan{x, y, std::max(level(x), level(y)) + 1};
      for (std::uint64_t spoke = 1; spoke <= search.max_spoke; ++spoke) {
        for (side s : {side::A, side::B}) {
          for (unsigned j = 0; j <= search.max_segment; ++j) {
            const rational lo = segment_lo(j);
            const rational hi = segment_hi(j);
            for (rational a = search.offset_grid; lo + a < hi; a += search.offset_grid) {
              for (rational b = search.offset_grid; lo + a < hi - b;
                   b += search.offset_grid) {
                tower_element v = build_mover(fan, spoke, s, j, a, b);
                if (!fixes(v, fixed)) continue;
                ++result.candidates;
                const point z = fan.at(lo + a, spoke, s);
                const point moved = act(v, z);
                rational delta = abs(f(z) - f(moved));
                if (delta >= eps) {
                  result.witness =
                      uniformity_witness{std::move(v), z, std::move(delta)};
                  return result;
                }
              }
            }
          }
        }
      }
    }
  }
  return result;
}

identification_report certify_identification(const fan_ref& fan,
                                             std::span<const point> fixed,
                                             const function_oracle& f,
                                             const rational& gamma) {
  identification_report r;
  r.spoke = convergence_spoke_bound(fan, fixed);
  r.chain_a = build_collapse_chain(fan, r.spoke, gamma, fixed, side::A);
  r.chain_b = build_collapse_chain(fan, r.spoke, gamma, fixed, side::B);
  r.report_a = evaluate_chain(f, r.chain_a);
  r.report_b = evaluate_chain(f, r.chain_b);
  r.value_gap = abs(f(fan.x) - f(fan.y));
  r.bound = r.report_a.bound + r.report_b.bound;
  r.certified = r.report_a.certified && r.report_b.certified &&
                r.value_gap <= r.bound;
  r.mover_max = max(r.report_a.mover_max, r.report_b.mover_max);
  const auto moves = static_cast<unsigned long>(r.report_a.move_deltas.size() +
                                                r.report_b.move_deltas.size());
  r.mover_max_lower_bound =
      (r.value_gap - r.report_a.gap_total - r.report_b.gap_total) /
      rational(moves);
  return r;
}

}  // namespace fanforge
