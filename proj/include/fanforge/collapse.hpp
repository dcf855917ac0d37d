#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fanforge/group.hpp"
#include "fanforge/rational.hpp"
#include "fanforge/space.hpp"

namespace fanforge {

// The double fan over (x, y) created at tower level `created_at`.
struct fan_ref {
  point x = point::base(base_tag::b0);
  point y = point::base(base_tag::b1);
  unsigned created_at = 1;

  // Throws DegeneratePair / LevelViolation for an impossible fan.
  void validate() const;
  point base_point(fanforge::side s) const { return s == side::A ? x : y; }
  point at(const rational& t, std::uint64_t spoke, fanforge::side s) const;
};

// Deterministic function on points with values in [0, 1].
struct function_oracle {
  std::function<rational(const point&)> evaluate;
  std::string descriptor;

  rational operator()(const point& p) const { return evaluate(p); }
};

function_oracle constant_oracle(const rational& value);
// z ↦ dist(p, z) / 2
function_oracle norm_dist_oracle(const point& p);
function_oracle table_oracle(std::vector<std::pair<point, rational>> entries,
                             const rational& fallback);

// Pure fan-layer element on the single key (fan, spoke, side, j) whose map
// sends 2^{-j-1} + a to 2^{-j} - b. Throws InvalidOffsets.
tower_element build_mover(const fan_ref& fan, std::uint64_t spoke, side s,
                          unsigned segment, const rational& a,
                          const rational& b);

// Smallest N such that no point of the anchor closures of `fixed` lies on a
// spoke >= N of `fan`.
std::uint64_t convergence_spoke_bound(const fan_ref& fan,
                                      std::span<const point> fixed);

struct move_step {
  tower_element mover;
  point from;
  point to;
};

struct gap_step {
  point from;
  point to;
  rational width;
};

using chain_step = std::variant<move_step, gap_step>;

const point& step_from(const chain_step& s);
const point& step_to(const chain_step& s);

// Certificate walking from the glued endpoint of one spoke down to a base
// point through alternating segment moves (by elements fixing `fixed_set`)
// and short gaps across the marked points.
struct collapse_chain {
  fan_ref fan;
  std::uint64_t spoke = 1;
  fanforge::side side = side::A;
  std::vector<point> fixed_set;
  std::vector<chain_step> steps;
  point start = point::base(base_tag::b0);
  point end = point::base(base_tag::b0);
  rational offset;
  unsigned segments = 0;

  std::size_t move_count() const;
  rational total_gap_width() const;
};

// Throws SpokeTooSmall when spoke < convergence_spoke_bound(fan, fixed),
// BudgetTooSmall when gamma <= 0 and InvalidArgument when gamma >= 1.
collapse_chain build_collapse_chain(const fan_ref& fan, std::uint64_t spoke,
                                    const rational& gamma,
                                    std::span<const point> fixed,
                                    side s = side::A);

// Every violated chain invariant, described; empty for a valid chain.
std::vector<std::string> validate_chain(const collapse_chain& c);

struct chain_report {
  std::vector<rational> move_deltas;
  std::vector<rational> gap_deltas;
  rational mover_max;
  rational gap_total;
  rational endpoint_gap;
  // move_count * mover_max + gap_total
  rational bound;
  bool certified = false;
};

chain_report evaluate_chain(const function_oracle& f, const collapse_chain& c);

struct refute_search {
  std::uint64_t max_spoke = 3;
  unsigned max_segment = 3;
  rational offset_grid{1, 32};
};

struct uniformity_witness {
  tower_element mover;
  point z;
  rational delta;
};

struct refute_result {
  std::optional<uniformity_witness> witness;
  std::size_t candidates = 0;
};

// Scans movers fixing `fixed` on the fans over ordered pairs of points of
// {b0, b1} ∪ closure(fixed), with offsets on the grid, for the first z with
// |f(z) - f(vz)| >= eps. Throws InvalidArgument unless eps > 0 and the grid
// step is positive.
refute_result refute_uniformity(const function_oracle& f, const rational& eps,
                                std::span<const point> fixed,
                                const refute_search& search);

struct identification_report {
  std::uint64_t spoke = 1;
  collapse_chain chain_a;
  collapse_chain chain_b;
  chain_report report_a;
  chain_report report_b;
  rational value_gap;  // |f(x) - f(y)|
  rational bound;      // report_a.bound + report_b.bound
  bool certified = false;
  rational mover_max;
  // (value_gap - both gap totals) / total moves: any function separating x
  // from y must move some chain point by at least this much.
  rational mover_max_lower_bound;
};

identification_report certify_identification(const fan_ref& fan,
                                             std::span<const point> fixed,
                                             const function_oracle& f,
                                             const rational& gamma);

}  // namespace fanforge
