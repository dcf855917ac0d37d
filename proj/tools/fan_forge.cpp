// fan-forge: command-line front end for the double-fan tower.
//
// Exit codes: 0 success, 1 invariant failure, 2 parse error,
// 3 semantic precondition failure, 4 refute found no witness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fanforge/collapse.hpp"
#include "fanforge/error.hpp"
#include "fanforge/metric.hpp"
#include "fanforge/serialize.hpp"
#include "fanforge/space.hpp"
#include "fanforge/verify.hpp"

namespace {

using namespace fanforge;

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kParseError = 2;
constexpr int kPrecondition = 3;
constexpr int kNotFound = 4;

// Errors raised while reading arguments and files, as opposed to semantic
// failures of the requested operation.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw input_error("cannot write " + out_path);
  out << text;
}

template <typename F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const error& e) {
    throw input_error(e.what());
  }
}

point read_point(const std::string& text) {
  return parsing([&] { return parse_point(text); });
}

rational read_rational(const std::string& text) {
  return parsing([&] { return parse_rational(text); });
}

tower_element read_element(const std::string& arg) {
  const std::string text = !arg.empty() && arg.front() == '{' ? arg : read_file(arg);
  return parsing([&] { return parse_tower_element(text); });
}

// One point per line; blank lines and lines starting with '#' are skipped.
std::vector<point> read_fixed_set(const std::string& path) {
  std::vector<point> out;
  if (path.empty()) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(read_point(line.substr(first, last - first + 1)));
  }
  return out;
}

function_oracle read_oracle(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw input_error("oracle must be dist:<point>, table:<file> or const:<rat>");
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = descriptor.substr(colon + 1);
  if (kind == "dist") return norm_dist_oracle(read_point(arg));
  if (kind == "const") {
    const rational v = read_rational(arg);
    return parsing([&] { return constant_oracle(v); });
  }
  if (kind == "table") {
    const std::string text = read_file(arg);
    return parsing([&] {
      auto [entries, fallback] = table_from_json(parse_json(text));
      return table_oracle(std::move(entries), fallback);
    });
  }
  throw input_error("unknown oracle kind \"" + kind + "\"");
}

fan_ref read_fan(const std::string& pair, unsigned level) {
  auto [x, y] = parsing([&] { return parse_point_pair(pair); });
  fan_ref fan{x, y, level};
  parsing([&] {
    fan.validate();
    return 0;
  });
  return fan;
}

side read_side(const std::string& s) {
  if (s == "A") return side::A;
  if (s == "B") return side::B;
  throw input_error("side must be A or B");
}

struct options {
  std::string p, q;
  std::string element_a, element_b;
  unsigned level = 1;
  std::uint64_t spokes = 1;
  std::uint64_t denom = 2;
  std::string pair = "b0,b1";
  std::optional<std::uint64_t> spoke;
  std::string side_name = "A";
  unsigned segment = 0;
  std::string offset_a, offset_b;
  std::string gamma = "1/4";
  std::string fix_path;
  std::string oracle;
  std::string eps;
  std::uint64_t max_spoke = 3;
  unsigned max_segment = 3;
  std::string grid = "1/32";
  std::string out_path;
  std::string dot_path;
  std::string suite = "all";
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
};

int cmd_dist(const options& o) {
  std::cout << to_string(dist(read_point(o.p), read_point(o.q))) << "\n";
  return kOk;
}

int cmd_oracle_dist(const options& o) {
  const point p = read_point(o.p);
  const point q = read_point(o.q);
  const truncation trunc = parsing(
      [&] { return enumerate_truncation(o.level, o.spokes, o.denom); });
  std::cout << to_string(dist_oracle(p, q, trunc)) << "\n";
  return kOk;
}

int cmd_act(const options& o) {
  const tower_element g = read_element(o.element_a);
  std::cout << format_point(act(g, read_point(o.p))) << "\n";
  return kOk;
}

int cmd_mul(const options& o) {
  const tower_element g = read_element(o.element_a);
  const tower_element h = read_element(o.element_b);
  emit(serialize(mul(g, h)) + "\n", o.out_path);
  return kOk;
}

int cmd_inv(const options& o) {
  emit(serialize(inv(read_element(o.element_a))) + "\n", o.out_path);
  return kOk;
}

int cmd_identity(const options& o) {
  emit(serialize(identity(o.level)) + "\n", o.out_path);
  return kOk;
}

int cmd_mover(const options& o) {
  const fan_ref fan = read_fan(o.pair, o.level);
  const tower_element v =
      build_mover(fan, o.spoke.value_or(1), read_side(o.side_name), o.segment,
                  read_rational(o.offset_a), read_rational(o.offset_b));
  emit(serialize(v) + "\n", o.out_path);
  return kOk;
}

int cmd_chain(const options& o) {
  const fan_ref fan = read_fan(o.pair, o.level);
  const std::vector<point> fixed = read_fixed_set(o.fix_path);
  const rational gamma = read_rational(o.gamma);
  const std::uint64_t spoke =
      o.spoke.value_or(convergence_spoke_bound(fan, fixed));
  const collapse_chain c =
      build_collapse_chain(fan, spoke, gamma, fixed, read_side(o.side_name));
  json out = to_json(c);
  if (!o.oracle.empty())
    out["report"] = to_json(evaluate_chain(read_oracle(o.oracle), c));
  emit(out.dump(2) + "\n", o.out_path);
  const auto problems = validate_chain(c);
  for (const auto& p : problems) std::cerr << "invalid chain: " << p << "\n";
  return problems.empty() ? kOk : kInvariantFailure;
}

int cmd_refute(const options& o) {
  const function_oracle f = read_oracle(o.oracle);
  const rational eps = read_rational(o.eps);
  const std::vector<point> fixed = read_fixed_set(o.fix_path);
  refute_search search;
  search.max_spoke = o.max_spoke;
  search.max_segment = o.max_segment;
  search.offset_grid = read_rational(o.grid);
  const refute_result r = refute_uniformity(f, eps, fixed, search);
  json out;
  out["oracle"] = f.descriptor;
  out["eps"] = to_string(eps);
  out["found"] = r.witness.has_value();
  out["candidates"] = r.candidates;
  out["search"] = json{{"max_spoke", search.max_spoke},
                       {"max_segment", search.max_segment},
                       {"offset_grid", to_string(search.offset_grid)}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  emit(out.dump(2) + "\n", o.out_path);
  return r.witness ? kOk : kNotFound;
}

int cmd_certify(const options& o) {
  const fan_ref fan = read_fan(o.pair, o.level);
  const std::vector<point> fixed = read_fixed_set(o.fix_path);
  const function_oracle f = read_oracle(o.oracle);
  const identification_report r =
      certify_identification(fan, fixed, f, read_rational(o.gamma));
  json out = to_json(r);
  out["oracle"] = f.descriptor;
  emit(out.dump(2) + "\n", o.out_path);
  return r.certified ? kOk : kInvariantFailure;
}

int cmd_truncate(const options& o) {
  const truncation trunc = parsing(
      [&] { return enumerate_truncation(o.level, o.spokes, o.denom); });
  emit(to_dot(trunc), o.dot_path);
  std::cerr << "nodes: " << trunc.points.size()
            << " edges: " << trunc.edges.size() << "\n";
  return kOk;
}

int cmd_verify(const options& o) {
  verify_options v;
  v.suite = o.suite;
  v.samples = o.samples;
  if (o.seed) {
    v.seed = *o.seed;
  } else if (const char* env = std::getenv("FANFORGE_SEED")) {
    try {
      v.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw input_error("FANFORGE_SEED must be a non-negative integer");
    }
  }
  const verify_report r = parsing([&] { return run_verify(v); });
  std::cout << to_json(r).dump(2) << "\n";
  std::cerr << "verify " << r.suite << ": " << r.samples << " samples, "
            << r.failures.size() << " failures, " << r.elapsed_seconds
            << " s\n";
  return r.ok() ? kOk : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fan-forge: exact computations on the iterated double-fan space"};
  app.require_subcommand(1);
  options o;

  auto* dist_cmd = app.add_subcommand("dist", "Exact distance between two points");
  dist_cmd->add_option("p", o.p)->required();
  dist_cmd->add_option("q", o.q)->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle-dist", "Shortest-path distance on an explicit truncation");
  oracle_cmd->add_option("p", o.p)->required();
  oracle_cmd->add_option("q", o.q)->required();
  oracle_cmd->add_option("--level", o.level)->required();
  oracle_cmd->add_option("--spokes", o.spokes)->required();
  oracle_cmd->add_option("--denom", o.denom)->required();

  auto* act_cmd = app.add_subcommand("act", "Apply a group element to a point");
  act_cmd->add_option("element", o.element_a, "JSON file or literal")->required();
  act_cmd->add_option("point", o.p)->required();

  auto* mul_cmd = app.add_subcommand("mul", "Multiply two group elements");
  mul_cmd->add_option("first", o.element_a)->required();
  mul_cmd->add_option("second", o.element_b)->required();
  mul_cmd->add_option("--out", o.out_path);

  auto* inv_cmd = app.add_subcommand("inv", "Invert a group element");
  inv_cmd->add_option("element", o.element_a)->required();
  inv_cmd->add_option("--out", o.out_path);

  auto* id_cmd = app.add_subcommand("identity", "Identity element of a level");
  id_cmd->add_option("--level", o.level)->required();
  id_cmd->add_option("--out", o.out_path);

  auto* mover_cmd =
      app.add_subcommand("mover", "Segment mover taking lo+a to hi-b");
  mover_cmd->add_option("--pair", o.pair);
  mover_cmd->add_option("--level", o.level);
  mover_cmd->add_option("--spoke", o.spoke);
  mover_cmd->add_option("--side", o.side_name);
  mover_cmd->add_option("--segment", o.segment);
  mover_cmd->add_option("--a", o.offset_a)->required();
  mover_cmd->add_option("--b", o.offset_b)->required();
  mover_cmd->add_option("--out", o.out_path);

  auto* chain_cmd = app.add_subcommand("chain", "Build a collapse chain");
  chain_cmd->add_option("--pair", o.pair);
  chain_cmd->add_option("--level", o.level);
  chain_cmd->add_option("--spoke", o.spoke);
  chain_cmd->add_option("--side", o.side_name);
  chain_cmd->add_option("--gamma", o.gamma);
  chain_cmd->add_option("--fix", o.fix_path);
  chain_cmd->add_option("--oracle", o.oracle);
  chain_cmd->add_option("--out", o.out_path);

  auto* refute_cmd = app.add_subcommand(
      "refute", "Search for a witness that an oracle is not uniform");
  refute_cmd->add_option("--oracle", o.oracle)->required();
  refute_cmd->add_option("--eps", o.eps)->required();
  refute_cmd->add_option("--fix", o.fix_path);
  refute_cmd->add_option("--max-spoke", o.max_spoke);
  refute_cmd->add_option("--max-segment", o.max_segment);
  refute_cmd->add_option("--grid", o.grid);
  refute_cmd->add_option("--out", o.out_path);

  auto* certify_cmd = app.add_subcommand(
      "certify", "Certify that a fan identifies its two base points");
  certify_cmd->add_option("--pair", o.pair);
  certify_cmd->add_option("--level", o.level);
  certify_cmd->add_option("--gamma", o.gamma);
  certify_cmd->add_option("--fix", o.fix_path);
  certify_cmd->add_option("--oracle", o.oracle)->required();
  certify_cmd->add_option("--out", o.out_path);

  auto* trunc_cmd =
      app.add_subcommand("truncate", "Export a finite truncation as DOT");
  trunc_cmd->add_option("--level", o.level)->required();
  trunc_cmd->add_option("--spokes", o.spokes);
  trunc_cmd->add_option("--denom", o.denom);
  trunc_cmd->add_option("--dot", o.dot_path);

  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("--suite", o.suite)
      ->check(CLI::IsMember({"metric", "group", "action", "collapse", "all"}));
  verify_cmd->add_option("--samples", o.samples);
  verify_cmd->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (*dist_cmd) return cmd_dist(o);
    if (*oracle_cmd) return cmd_oracle_dist(o);
    if (*act_cmd) return cmd_act(o);
    if (*mul_cmd) return cmd_mul(o);
    if (*inv_cmd) return cmd_inv(o);
    if (*id_cmd) return cmd_identity(o);
    if (*mover_cmd) return cmd_mover(o);
    if (*chain_cmd) return cmd_chain(o);
    if (*refute_cmd) return cmd_refute(o);
    if (*certify_cmd) return cmd_certify(o);
    if (*trunc_cmd) return cmd_truncate(o);
    if (*verify_cmd) return cmd_verify(o);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  return kParseError;
}
