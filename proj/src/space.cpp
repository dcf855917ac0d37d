#include "fanforge/space.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "fanforge/error.hpp"

namespace fanforge {

struct point::node {
  bool is_base = true;
  base_tag tag = base_tag::b0;
  rational t;
  std::uint64_t spoke = 0;
  fanforge::side fan_side = side::A;
  point x{nullptr};
  point y{nullptr};
  unsigned created_at = 0;
  std::size_t hash = 0;
};

char to_char(side s) { return s == side::A ? 'A' : 'B'; }

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

point point::base(base_tag tag) {
  static const std::shared_ptr<const node> nodes[2] = {
      [] {
        auto n = std::make_shared<node>();
        n->tag = base_tag::b0;
        n->hash = 0x5bd1e995;
        return n;
      }(),
      [] {
        auto n = std::make_shared<node>();
        n->tag = base_tag::b1;
        n->hash = 0x1b873593;
        return n;
      }(),
  };
  return point(nodes[tag == base_tag::b0 ? 0 : 1]);
}

bool point::is_base() const { return node_->is_base; }
base_tag point::tag() const { return node_->tag; }
const rational& point::t() const { return node_->t; }
std::uint64_t point::spoke() const { return node_->spoke; }
side point::fan_side() const { return node_->fan_side; }
const point& point::x() const { return node_->x; }
const point& point::y() const { return node_->y; }
unsigned point::created_at() const { return node_->created_at; }
std::size_t point::hash() const { return node_->hash; }

bool operator==(const point& a, const point& b) {
  if (a.node_ == b.node_) return true;
  const auto& l = *a.node_;
  const auto& r = *b.node_;
  if (l.hash != r.hash || l.is_base != r.is_base) return false;
  if (l.is_base) return l.tag == r.tag;
  return l.created_at == r.created_at && l.spoke == r.spoke &&
         l.fan_side == r.fan_side && l.t == r.t && l.x == r.x && l.y == r.y;
}

std::strong_ordering operator<=>(const point& a, const point& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& l = *a.node_;
  const auto& r = *b.node_;
  if (l.is_base != r.is_base)
    return l.is_base ? std::strong_ordering::less : std::strong_ordering::greater;
  if (l.is_base) return l.tag <=> r.tag;
  if (auto c = l.created_at <=> r.created_at; c != 0) return c;
  if (auto c = l.spoke <=> r.spoke; c != 0) return c;
  if (auto c = l.fan_side <=> r.fan_side; c != 0) return c;
  if (int c = cmp(l.t, r.t); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = l.x <=> r.x; c != 0) return c;
  return l.y <=> r.y;
}

unsigned level(const point& p) { return p.is_base() ? 0 : p.created_at(); }

point canonicalize(const rational& t, std::uint64_t spoke, side s,
                   const point& x, const point& y, unsigned created_at) {
  if (t < 0 || t > 1)
    throw error(error_kind::invalid_coordinate,
                "coordinate " + to_string(t) + " outside [0,1]");
  if (spoke == 0)
    throw error(error_kind::invalid_coordinate, "spokes are numbered from 1");
  if (x == y)
    throw error(error_kind::degenerate_pair,
                "fan over (" + format_point(x) + "," + format_point(y) + ")");
  if (created_at == 0 || level(x) >= created_at || level(y) >= created_at)
    throw error(error_kind::level_violation,
                "fan created at level " + std::to_string(created_at) +
                    " over points of levels " + std::to_string(level(x)) +
                    " and " + std::to_string(level(y)));
  if (t == 0) return s == side::A ? x : y;

  auto n = std::make_shared<point::node>();
  n->is_base = false;
  n->t = t;
  n->spoke = spoke;
  n->fan_side = t == 1 ? side::A : s;
  n->x = x;
  n->y = y;
  n->created_at = created_at;
  std::size_t h = mix(0x27d4eb2f165667c5ULL, created_at);
  h = mix(h, spoke);
  h = mix(h, static_cast<std::size_t>(n->fan_side));
  h = mix(h, hash_value(t));
  h = mix(h, x.hash());
  h = mix(h, y.hash());
  n->hash = h;
  return point(std::move(n));
}

bool is_marked(const point& p) {
  return !p.is_base() && dyadic_exponent(p.t()).has_value();
}

unsigned segment_index(const rational& t) {
  if (t <= 0 || t > 1)
    throw error(error_kind::invalid_coordinate,
                "segment index needs 0 < t <= 1, got " + to_string(t));
  // Estimate from bit lengths, then correct.
  long est = static_cast<long>(mpz_sizeinbase(t.get_den().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(t.get_num().get_mpz_t(), 2));
  long j = std::max(0L, est - 1);
  while (j > 0 && t > pow2(-j)) --j;
  while (t <= pow2(-j - 1)) ++j;
  return static_cast<unsigned>(j);
}

std::vector<anchor> anchors(const point& p) {
  if (p.is_base()) return {{p, rational(0)}};
  rational far = 2 - p.t();
  if (p.fan_side() == side::A) return {{p.x(), p.t()}, {p.y(), far}};
  return {{p.x(), far}, {p.y(), p.t()}};
}

std::vector<point> anchor_closure(const point& p) {
  std::vector<point> out;
  std::unordered_set<point, point_hash> seen;
  std::vector<point> stack{p};
  while (!stack.empty()) {
    point q = stack.back();
    stack.pop_back();
    if (!seen.insert(q).second) continue;
    out.push_back(q);
    if (!q.is_base()) {
      stack.push_back(q.y());
      stack.push_back(q.x());
    }
  }
  return out;
}

point nearby_point(const point& p, const rational& eps) {
  if (eps <= 0)
    throw error(error_kind::invalid_argument, "radius must be positive");
  const point other = p == point::base(base_tag::b0)
                          ? point::base(base_tag::b1)
                          : point::base(base_tag::b0);
  rational t = eps / 2;
  if (t > 1) t = 1;
  return canonicalize(t, 1, side::A, p, other,
                      std::max(level(p), level(other)) + 1);
}

std::string format_point(const point& p) {
  if (p.is_base()) return p.tag() == base_tag::b0 ? "b0" : "b1";
  std::string out = "fan(";
  out += to_string(p.t());
  out += ';';
  out += std::to_string(p.spoke());
  out += ';';
  out += to_char(p.fan_side());
  out += ';';
  out += std::to_string(p.created_at());
  out += ';';
  out += format_point(p.x());
  out += ',';
  out += format_point(p.y());
  out += ')';
  return out;
}

namespace {

class point_reader {
 public:
  explicit point_reader(std::string_view text) : text_(text) {}

  point read_point() {
    if (consume("b0")) return point::base(base_tag::b0);
    if (consume("b1")) return point::base(base_tag::b1);
    if (!consume("fan(")) throw syntax_error(pos_, "expected b0, b1 or fan(");
    const std::size_t start = pos_;
    rational t = read_rational();
    expect(';');
    std::uint64_t spoke = read_nat();
    expect(';');
    side s;
    if (consume("A"))
      s = side::A;
    else if (consume("B"))
      s = side::B;
    else
      throw syntax_error(pos_, "expected side A or B");
    expect(';');
    std::uint64_t created = read_nat();
    expect(';');
    point x = read_point();
    expect(',');
    point y = read_point();
    expect(')');
    if (created > 0xffffffffULL)
      throw syntax_error(start, "level out of range");
    return canonicalize(t, spoke, s, x, y, static_cast<unsigned>(created));
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw syntax_error(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  void finish() const {
    if (pos_ != text_.size()) throw syntax_error(pos_, "trailing characters");
  }

 private:
  bool consume(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  rational read_rational() {
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ';') ++end;
    try {
      rational r = parse_rational(text_.substr(pos_, end - pos_));
      pos_ = end;
      return r;
    } catch (const syntax_error& e) {
      throw syntax_error(pos_ + e.position(), "malformed rational");
    }
  }

  std::uint64_t read_nat() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (~0ULL - 9) / 10) throw syntax_error(start, "number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw syntax_error(pos_, "expected natural number");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

point parse_point(std::string_view text) {
  point_reader r(text);
  point p = r.read_point();
  r.finish();
  return p;
}

std::pair<point, point> parse_point_pair(std::string_view text) {
  point_reader r(text);
  point x = r.read_point();
  r.expect(',');
  point y = r.read_point();
  r.finish();
  return {std::move(x), std::move(y)};
}

truncation enumerate_truncation(unsigned max_level, std::uint64_t max_spoke,
                                std::uint64_t denominator_bound) {
  if (max_spoke < 1)
    throw error(error_kind::invalid_bounds, "need at least one spoke");
  if (denominator_bound < 2 ||
      (denominator_bound & (denominator_bound - 1)) != 0)
    throw error(error_kind::invalid_bounds,
                "denominator bound must be a power of two >= 2");

  truncation out;
  out.max_level = max_level;
  out.max_spoke = max_spoke;
  out.denominator_bound = denominator_bound;

  auto add_point = [&out](const point& p) {
    if (out.index.emplace(p, out.points.size()).second) out.points.push_back(p);
  };
  const point b0 = point::base(base_tag::b0);
  const point b1 = point::base(base_tag::b1);
  add_point(b0);
  add_point(b1);
  out.edges.push_back({b0, b1, rational(2)});

  const rational step(1, denominator_bound);
  const auto d = static_cast<unsigned long>(denominator_bound);
  for (unsigned lvl = 1; lvl <= max_level; ++lvl) {
    const std::size_t lower = out.points.size();
    for (std::size_t i = 0; i < lower; ++i) {
      for (std::size_t k = 0; k < lower; ++k) {
        if (i == k) continue;
        const point x = out.points[i];
        const point y = out.points[k];
        for (std::uint64_t s = 1; s <= max_spoke; ++s) {
          for (side sd : {side::A, side::B}) {
            point prev = sd == side::A ? x : y;
            for (unsigned long g = 1; g <= d; ++g) {
              point cur =
                  canonicalize(ratio(static_cast<long>(g), static_cast<long>(d)), s, sd,
                               x, y, lvl);
              add_point(cur);
              out.edges.push_back({prev, cur, step});
              prev = cur;
            }
          }
        }
      }
    }
  }
  return out;
}

std::string to_dot(const truncation& trunc) {
  std::string out = "graph truncation {\n";
  for (std::size_t i = 0; i < trunc.points.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           format_point(trunc.points[i]) + "\"];\n";
  }
  for (const auto& e : trunc.edges) {
    out += "  n" + std::to_string(trunc.index.at(e.u)) + " -- n" +
           std::to_string(trunc.index.at(e.v)) + " [label=\"" +
           to_string(e.length) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace fanforge
