#include "fanforge/ordermaps.hpp"

#include <algorithm>
#include <utility>

#include "fanforge/error.hpp"

namespace fanforge {

namespace {

bool collinear(const breakpoint& a, const breakpoint& b, const breakpoint& c) {
  return (b.output - a.output) * (c.input - a.input) ==
         (c.output - a.output) * (b.input - a.input);
}

std::vector<breakpoint> normalize(std::vector<breakpoint> in) {
  std::vector<breakpoint> out;
  out.reserve(in.size());
  for (auto& bp : in) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), bp))
      out.pop_back();
    out.push_back(std::move(bp));
  }
  return out;
}

// Index i of the piece [inputs[i], inputs[i+1]] holding t.
std::size_t piece_of(const std::vector<breakpoint>& bps, const rational& t) {
  auto it = std::upper_bound(
      bps.begin() + 1, bps.end() - 1, t,
      [](const rational& v, const breakpoint& bp) { return v < bp.input; });
  return static_cast<std::size_t>(it - bps.begin()) - 1;
}

}  // namespace

pl_map::pl_map(rational lo, rational hi, std::vector<breakpoint> breakpoints)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_))
    throw error(error_kind::invalid_argument, "pl map needs lo < hi");
  if (breakpoints.size() < 2)
    throw error(error_kind::invalid_argument, "pl map needs two breakpoints");
  if (breakpoints.front().input != lo_ || breakpoints.front().output != lo_ ||
      breakpoints.back().input != hi_ || breakpoints.back().output != hi_)
    throw error(error_kind::invalid_argument,
                "pl map must fix both endpoints of its domain");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1].input < breakpoints[i].input) ||
        !(breakpoints[i - 1].output < breakpoints[i].output))
      throw error(error_kind::invalid_argument,
                  "pl map breakpoints must be strictly increasing");
  }
  breakpoints_ = normalize(std::move(breakpoints));
}

pl_map pl_map::identity(const rational& lo, const rational& hi) {
  return pl_map(lo, hi, {{lo, lo}, {hi, hi}});
}

rational pl_eval(const pl_map& m, const rational& t) {
  if (t < m.lo() || t > m.hi())
    throw error(error_kind::out_of_domain,
                to_string(t) + " outside [" + to_string(m.lo()) + "," +
                    to_string(m.hi()) + "]");
  const auto& bps = m.breakpoints();
  const std::size_t i = piece_of(bps, t);
  const breakpoint& a = bps[i];
  const breakpoint& b = bps[i + 1];
  if (t == a.input) return a.output;
  if (t == b.input) return b.output;
  rational r = a.output + (b.output - a.output) * (t - a.input) /
                              (b.input - a.input);
  return r;
}

pl_map pl_compose(const pl_map& a, const pl_map& b) {
  if (a.lo() != b.lo() || a.hi() != b.hi())
    throw error(error_kind::domain_mismatch,
                "cannot compose " + to_string(a) + " with " + to_string(b));
  const pl_map b_inv = pl_invert(b);
  std::vector<rational> inputs;
  inputs.reserve(a.breakpoints().size() + b.breakpoints().size());
  for (const auto& bp : b.breakpoints()) inputs.push_back(bp.input);
  for (const auto& bp : a.breakpoints())
    inputs.push_back(pl_eval(b_inv, bp.input));
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

  std::vector<breakpoint> bps;
  bps.reserve(inputs.size());
  for (auto& in : inputs) {
    rational out = pl_eval(a, pl_eval(b, in));
    bps.push_back({std::move(in), std::move(out)});
  }
  return pl_map(a.lo(), a.hi(), std::move(bps));
}

pl_map pl_invert(const pl_map& m) {
  std::vector<breakpoint> bps;
  bps.reserve(m.breakpoints().size());
  for (const auto& bp : m.breakpoints()) bps.push_back({bp.output, bp.input});
  return pl_map(m.lo(), m.hi(), std::move(bps));
}

std::string to_string(const pl_map& m) {
  std::string out = "pl[" + to_string(m.lo()) + "," + to_string(m.hi()) + "]{";
  bool first = true;
  for (const auto& bp : m.breakpoints()) {
    if (!first) out += ",";
    first = false;
    out += "(" + to_string(bp.input) + "," + to_string(bp.output) + ")";
  }
  out += "}";
  return out;
}

namespace {

class pl_reader {
 public:
  explicit pl_reader(std::string_view text) : text_(text) {}

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw syntax_error(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  rational read_rational() {
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ')' &&
           text_[end] != ']')
      ++end;
    try {
      rational r = parse_rational(text_.substr(pos_, end - pos_));
      pos_ = end;
      return r;
    } catch (const syntax_error& e) {
      throw syntax_error(pos_ + e.position(), "malformed rational");
    }
  }

  void finish() const {
    if (pos_ != text_.size()) throw syntax_error(pos_, "trailing characters");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

pl_map parse_pl_map(std::string_view text) {
  pl_reader r(text);
  for (char c : std::string_view("pl[")) r.expect(c);
  rational lo = r.read_rational();
  r.expect(',');
  rational hi = r.read_rational();
  r.expect(']');
  r.expect('{');
  std::vector<breakpoint> bps;
  do {
    r.expect('(');
    rational in = r.read_rational();
    r.expect(',');
    rational out = r.read_rational();
    r.expect(')');
    bps.push_back({std::move(in), std::move(out)});
  } while (r.peek(',') && (r.expect(','), true));
  r.expect('}');
  r.finish();
  return pl_map(std::move(lo), std::move(hi), std::move(bps));
}

}  // namespace fanforge
