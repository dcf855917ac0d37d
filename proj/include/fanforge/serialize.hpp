#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fanforge/collapse.hpp"
#include "fanforge/group.hpp"

namespace fanforge {

using json = nlohmann::ordered_json;

// {"level": n, "base": <element|null>, "fans": [{"pair": [p, q], "spoke": k,
//  "side": "A"|"B", "segment": j, "map": [["i","o"], ...]}]}
json to_json(const tower_element& g);
tower_element tower_element_from_json(const json& j);

// Single-line rendering / parsing. Malformed input throws syntax_error.
std::string serialize(const tower_element& g);
tower_element parse_tower_element(std::string_view text);

json to_json(const collapse_chain& c);
collapse_chain collapse_chain_from_json(const json& j);

json to_json(const chain_report& r);
json to_json(const identification_report& r);
json to_json(const uniformity_witness& w);

// {"default": "<rat>", "entries": [["<point>", "<rat>"], ...]}
std::pair<std::vector<std::pair<point, rational>>, rational> table_from_json(
    const json& j);

// Parses text as JSON, reporting failures as syntax_error.
json parse_json(std::string_view text);

}  // namespace fanforge
