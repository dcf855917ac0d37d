#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fanforge/serialize.hpp"

using namespace fanforge;

namespace {

struct run_result {
  int code;
  std::string out;
};

run_result run(const std::string& args) {
  const std::string cmd = std::string(FAN_FORGE_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::filesystem::path scratch(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "fan-forge-tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("cli dist") {
  CHECK(trim(run("dist b0 b1").out) == "2");
  CHECK(trim(run("dist b0 b0").out) == "0");
  CHECK(trim(run("dist 'fan(1/2;1;A;1;b0,b1)' b0").out) == "1/2");
  const auto r = run("oracle-dist 'fan(1/2;1;A;1;b0,b1)' b0 --level 1 --spokes 1 --denom 4");
  CHECK(r.code == 0);
  CHECK(trim(r.out) == "1/2");
}

TEST_CASE("cli exit codes") {
  CHECK(run("dist 'fan(1/2;1;A;1;b0,b1' b0").code == 2);
  CHECK(run("dist 'fan(1/2;1;A;1;b0,b0)' b0").code == 2);
  CHECK(run("truncate --level 1 --denom 6").code == 2);
  CHECK(run("oracle-dist 'fan(1/3;1;A;1;b0,b1)' b0 --level 1 --spokes 1 --denom 4").code == 3);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("refute --oracle const:1/2 --eps 1/8").code == 4);
  CHECK(run("refute --oracle dist:b0 --eps 0").code == 3);
}

TEST_CASE("cli group commands") {
  const auto id = run("identity --level 1");
  REQUIRE(id.code == 0);
  const auto id_path = scratch("identity.json", id.out);
  CHECK(trim(run("act " + id_path.string() + " b0").out) == "b0");

  const auto mover = run(
      "mover --pair b0,b1 --level 1 --spoke 1 --side A --segment 1 --a 1/16 --b 1/16");
  REQUIRE(mover.code == 0);
  const auto mover_path = scratch("mover.json", mover.out);
  CHECK(trim(run("act " + mover_path.string() + " 'fan(5/16;1;A;1;b0,b1)'").out) ==
        "fan(7/16;1;A;1;b0,b1)");

  const auto inv = run("inv " + mover_path.string());
  REQUIRE(inv.code == 0);
  const auto inv_path = scratch("mover_inv.json", inv.out);
  const auto prod = run("mul " + mover_path.string() + " " + inv_path.string());
  REQUIRE(prod.code == 0);
  CHECK(parse_tower_element(prod.out) == identity(1));
  CHECK(run("mul " + mover_path.string() + " " + scratch("lvl2.json", run("identity --level 2").out).string()).code == 3);
  CHECK(run("act " + scratch("bad.json", "{\"level\":").string() + " b0").code == 2);
}

TEST_CASE("cli chain, certify and refute") {
  const auto chain = run("chain --pair b0,b1 --level 1 --spoke 1 --gamma 1/4");
  REQUIRE(chain.code == 0);
  const json c = parse_json(chain.out);
  CHECK(c["segments"] == 3);
  CHECK(validate_chain(collapse_chain_from_json(c)).empty());

  const auto fix = scratch("fix.txt", "# fixed set\nfan(5/16;3;A;1;b0,b1)\n");
  CHECK(run("chain --pair b0,b1 --level 1 --spoke 3 --gamma 1/4 --fix " + fix.string()).code == 3);
  CHECK(run("chain --pair b0,b1 --level 1 --spoke 4 --gamma 1/4 --fix " + fix.string()).code == 0);

  const auto cert = run("certify --pair b0,b1 --level 1 --oracle dist:b0 --gamma 1/8");
  REQUIRE(cert.code == 0);
  CHECK(parse_json(cert.out)["value_gap"] == "1");

  const auto table = scratch("table.json", R"({"default":"1/2","entries":[["b1","1"]]})");
  CHECK(run("certify --pair b0,b1 --level 1 --oracle table:" + table.string() + " --gamma 1/8").code == 0);

  const auto hit = run("refute --oracle dist:b0 --eps 7/32");
  CHECK(hit.code == 0);
  CHECK(parse_json(hit.out)["witness"]["delta"] == "7/32");
}

TEST_CASE("cli truncate and verify") {
  const auto t0 = run("truncate --level 0");
  REQUIRE(t0.code == 0);
  CHECK(t0.out.rfind("graph truncation {", 0) == 0);
  std::size_t nodes = 0, edges = 0;
  for (std::size_t p = 0; (p = t0.out.find("[label=", p)) != std::string::npos; ++p) ++nodes;
  for (std::size_t p = 0; (p = t0.out.find(" -- ", p)) != std::string::npos; ++p) ++edges;
  CHECK(edges == 1);
  CHECK(nodes == 3);  // two nodes plus one labeled edge
  CHECK(t0.out.find("label=\"2\"") != std::string::npos);

  const auto t1 = run("truncate --level 1 --spokes 1 --denom 2");
  CHECK(t1.out.find("n7 [") != std::string::npos);
  CHECK(t1.out.find("n8 [") == std::string::npos);

  const auto a = run("verify --suite metric --samples 200 --seed 7");
  const auto b = run("verify --suite metric --samples 200 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify --suite group --samples 100 --seed 7").code == 0);
  CHECK(run("verify --suite bogus").code == 2);
}
