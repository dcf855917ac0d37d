#include "fanforge/serialize.hpp"

#include "fanforge/error.hpp"

namespace fanforge {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw syntax_error(0, "malformed JSON document: " + what);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    malformed(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string text_of(const json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

template <typename T>
T number_of(const json& j, const char* what) {
  if (!j.is_number_unsigned())
    malformed(std::string(what) + " must be a non-negative integer");
  return j.get<T>();
}

rational rational_of(const json& j, const char* what) {
  return parse_rational(text_of(j, what));
}

point point_of(const json& j, const char* what) {
  return parse_point(text_of(j, what));
}

side side_of(const json& j) {
  const std::string s = text_of(j, "side");
  if (s == "A") return side::A;
  if (s == "B") return side::B;
  malformed("side must be \"A\" or \"B\"");
}

json pair_json(const point& x, const point& y) {
  return json::array({format_point(x), format_point(y)});
}

std::pair<point, point> pair_of(const json& j) {
  if (!j.is_array() || j.size() != 2) malformed("pair must hold two points");
  return {point_of(j[0], "pair"), point_of(j[1], "pair")};
}

json rationals_json(const std::vector<rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

json to_json(const tower_element& g) {
  json out;
  out["level"] = g.level();
  out["base"] = g.level() == 0 ? json(nullptr) : to_json(g.base());
  json fans = json::array();
  if (g.level() > 0) {
    for (const auto& [key, m] : g.top_layer().support()) {
      json map = json::array();
      for (const auto& bp : m.breakpoints())
        map.push_back(json::array({to_string(bp.input), to_string(bp.output)}));
      json entry;
      entry["pair"] = pair_json(key.x, key.y);
      entry["spoke"] = key.spoke;
      entry["side"] = std::string(1, to_char(key.side));
      entry["segment"] = key.segment;
      entry["map"] = std::move(map);
      fans.push_back(std::move(entry));
    }
  }
  out["fans"] = std::move(fans);
  return out;
}

tower_element tower_element_from_json(const json& j) {
  const auto lvl = number_of<unsigned>(field(j, "level"), "level");
  const json& base = field(j, "base");
  const json& fans = field(j, "fans");
  if (!fans.is_array()) malformed("fans must be an array");
  if (lvl == 0) {
    if (!base.is_null()) malformed("the level-0 element has no base");
    if (!fans.empty()) malformed("the level-0 element has no fans");
    return {};
  }
  if (base.is_null()) malformed("missing base element");
  tower_element b = tower_element_from_json(base);
  if (b.level() + 1 != lvl)
    throw error(error_kind::level_mismatch,
                "base of level " + std::to_string(b.level()) +
                    " under a level-" + std::to_string(lvl) + " element");
  fan_layer layer(lvl);
  for (const auto& f : fans) {
    auto [x, y] = pair_of(field(f, "pair"));
    fan_key key{x, y, number_of<std::uint64_t>(field(f, "spoke"), "spoke"),
                side_of(field(f, "side")),
                number_of<unsigned>(field(f, "segment"), "segment")};
    const json& map = field(f, "map");
    if (!map.is_array()) malformed("map must be an array");
    std::vector<breakpoint> bps;
    for (const auto& bp : map) {
      if (!bp.is_array() || bp.size() != 2)
        malformed("breakpoints are [input, output] pairs");
      bps.push_back({rational_of(bp[0], "breakpoint"),
                     rational_of(bp[1], "breakpoint")});
    }
    if (layer.find(key)) malformed("duplicate fan key");
    layer.set(key, pl_map(segment_lo(key.segment), segment_hi(key.segment),
                          std::move(bps)));
  }
  return tower_element(b, std::move(layer));
}

std::string serialize(const tower_element& g) { return to_json(g).dump(); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw syntax_error(e.byte, e.what());
  }
}

tower_element parse_tower_element(std::string_view text) {
  return tower_element_from_json(parse_json(text));
}

json to_json(const collapse_chain& c) {
  json out;
  json fan;
  fan["pair"] = pair_json(c.fan.x, c.fan.y);
  fan["level"] = c.fan.created_at;
  out["fan"] = std::move(fan);
  out["spoke"] = c.spoke;
  out["side"] = std::string(1, to_char(c.side));
  out["offset"] = to_string(c.offset);
  out["segments"] = c.segments;
  json fixed = json::array();
  for (const auto& p : c.fixed_set) fixed.push_back(format_point(p));
  out["fixed"] = std::move(fixed);
  out["start"] = format_point(c.start);
  out["end"] = format_point(c.end);
  json steps = json::array();
  for (const auto& s : c.steps) {
    json step;
    if (const auto* m = std::get_if<move_step>(&s)) {
      step["kind"] = "move";
      step["from"] = format_point(m->from);
      step["to"] = format_point(m->to);
      step["mover"] = to_json(m->mover);
    } else {
      const auto& g = std::get<gap_step>(s);
      step["kind"] = "gap";
      step["from"] = format_point(g.from);
      step["to"] = format_point(g.to);
      step["width"] = to_string(g.width);
    }
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  return out;
}

collapse_chain collapse_chain_from_json(const json& j) {
  collapse_chain c;
  const json& fan = field(j, "fan");
  auto [x, y] = pair_of(field(fan, "pair"));
  c.fan = fan_ref{x, y, number_of<unsigned>(field(fan, "level"), "level")};
  c.spoke = number_of<std::uint64_t>(field(j, "spoke"), "spoke");
  c.side = side_of(field(j, "side"));
  c.offset = rational_of(field(j, "offset"), "offset");
  c.segments = number_of<unsigned>(field(j, "segments"), "segments");
  const json& fixed = field(j, "fixed");
  if (!fixed.is_array()) malformed("fixed must be an array");
  for (const auto& p : fixed) c.fixed_set.push_back(point_of(p, "fixed point"));
  c.start = point_of(field(j, "start"), "start");
  c.end = point_of(field(j, "end"), "end");
  const json& steps = field(j, "steps");
  if (!steps.is_array()) malformed("steps must be an array");
  for (const auto& s : steps) {
    const std::string kind = text_of(field(s, "kind"), "kind");
    point from = point_of(field(s, "from"), "from");
    point to = point_of(field(s, "to"), "to");
    if (kind == "move") {
      c.steps.push_back(move_step{tower_element_from_json(field(s, "mover")),
                                  std::move(from), std::move(to)});
    } else if (kind == "gap") {
      c.steps.push_back(gap_step{std::move(from), std::move(to),
                                 rational_of(field(s, "width"), "width")});
    } else {
      malformed("unknown step kind \"" + kind + "\"");
    }
  }
  return c;
}

json to_json(const chain_report& r) {
  json out;
  out["move_deltas"] = rationals_json(r.move_deltas);
  out["gap_deltas"] = rationals_json(r.gap_deltas);
  out["mover_max"] = to_string(r.mover_max);
  out["gap_total"] = to_string(r.gap_total);
  out["endpoint_gap"] = to_string(r.endpoint_gap);
  out["bound"] = to_string(r.bound);
  out["certified"] = r.certified;
  return out;
}

json to_json(const identification_report& r) {
  json out;
  out["spoke"] = r.spoke;
  out["value_gap"] = to_string(r.value_gap);
  out["bound"] = to_string(r.bound);
  out["certified"] = r.certified;
  out["mover_max"] = to_string(r.mover_max);
  out["mover_max_lower_bound"] = to_string(r.mover_max_lower_bound);
  out["side_a"] = to_json(r.report_a);
  out["side_b"] = to_json(r.report_b);
  return out;
}

json to_json(const uniformity_witness& w) {
  json out;
  out["z"] = format_point(w.z);
  out["delta"] = to_string(w.delta);
  out["mover"] = to_json(w.mover);
  return out;
}

std::pair<std::vector<std::pair<point, rational>>, rational> table_from_json(
    const json& j) {
  rational fallback = rational_of(field(j, "default"), "default");
  const json& entries = field(j, "entries");
  if (!entries.is_array()) malformed("entries must be an array");
  std::vector<std::pair<point, rational>> out;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2)
      malformed("table entries are [point, value] pairs");
    out.emplace_back(point_of(e[0], "table point"),
                     rational_of(e[1], "table value"));
  }
  return {std::move(out), std::move(fallback)};
}

}  // namespace fanforge
