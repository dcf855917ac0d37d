#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fanforge/rational.hpp"

namespace fanforge {

struct breakpoint {
  rational input;
  rational output;

  friend bool operator==(const breakpoint&, const breakpoint&) = default;
};

// Piecewise-linear order-preserving bijection of [lo, hi] ∩ Q fixing both
// endpoints. Breakpoints are kept normalized: collinear interior points are
// dropped, so two maps are equal iff their breakpoint lists are equal.
class pl_map {
 public:
  // Throws error(invalid_argument) unless the breakpoints describe a valid map.
  pl_map(rational lo, rational hi, std::vector<breakpoint> breakpoints);

  static pl_map identity(const rational& lo, const rational& hi);

  const rational& lo() const { return lo_; }
  const rational& hi() const { return hi_; }
  const std::vector<breakpoint>& breakpoints() const { return breakpoints_; }

  bool is_identity() const { return breakpoints_.size() == 2; }

  friend bool operator==(const pl_map&, const pl_map&) = default;

 private:
  rational lo_, hi_;
  std::vector<breakpoint> breakpoints_;
};

// Throws OutOfDomain when t is outside [lo, hi].
rational pl_eval(const pl_map& m, const rational& t);

// t ↦ a(b(t)). Throws DomainMismatch unless both share [lo, hi].
pl_map pl_compose(const pl_map& a, const pl_map& b);

pl_map pl_invert(const pl_map& m);

// `pl[lo,hi]{(i1,o1),(i2,o2),...}`
std::string to_string(const pl_map& m);
pl_map parse_pl_map(std::string_view text);

}  // namespace fanforge
