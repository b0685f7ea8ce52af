#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "netring/cli.hpp"

using namespace netring;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc = 0;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.rc = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("netring_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = (path / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

}  // namespace

TEST_CASE("generated network piped into code verify") {
  const auto net = run({"net", "gen", "m"});
  REQUIRE(net.rc == 0);
  TempDir dir;
  const auto code = dir.file("mcode.json", run({"code", "gen", "m"}).out);
  const auto v = run({"code", "verify", "-", code}, net.out);
  CHECK(v.rc == exit_code::kSolved);
  CHECK(v.json()["solved"] == true);
}

TEST_CASE("solve exit codes") {
  TempDir dir;
  const auto m = dir.file("m.json", run({"net", "gen", "m"}).out);
  const auto gf2 = dir.file("gf2.json", R"({"type":"prime_field","p":2})");
  const auto r = run({"solve", "scalar", m, "--ring", gf2});
  CHECK(r.rc == exit_code::kUnsolved);
  CHECK(r.json()["status"] == "exhausted-unsolvable");

  const auto b = run({"solve", "vector", m, "--field", "2", "--dim", "2", "--budget", "10"});
  CHECK(b.rc == exit_code::kBudget);
  CHECK(b.json()["status"] == "budget-exceeded");

  CHECK(run({"solve", "scalar", m}).rc == exit_code::kUsage);
  CHECK(run({"frobnicate"}).rc == exit_code::kUsage);
  CHECK(run({"solve", "scalar", m, "--ring", "GF(6)"}).rc == exit_code::kDomain);
  const auto bad = dir.file("bad.json", R"({"nodes":["s"],"edges":[{"tail":"s","head":"q"}],"messages":[],"demands":{}})");
  CHECK(run({"net", "validate", bad}).rc == exit_code::kDomain);
}

TEST_CASE("ring subcommand") {
  const auto c = run({"ring", "--catalog", "2", "6"});
  REQUIRE(c.rc == 0);
  CHECK(c.json()["count"] == 13);
  const auto r = run({"ring", "UT_2(GF(2))", "--radical", "--verify"});
  REQUIRE(r.rc == 0);
  CHECK(r.json()["radical"]["size"] == 2);
  CHECK(r.json()["radical"]["quotient_size"] == 4);
  CHECK(r.json()["axioms"]["passed"] == true);
  const auto h = run({"ring", "--homs", "Z_6", "GF(3)", "--surjective"});
  CHECK(h.json()["count"] == 1);
}

TEST_CASE("CLI results equal library results") {
  TempDir dir;
  const auto net = choose_two_network(4);
  const auto f = dir.file("c4.json", network_to_json(net).dump());
  SearchOptions one;
  one.shards = 1;
  const auto lib = solve_scalar(net, Ring::create(RingDescriptor::prime_field(3)), one);
  const auto cli = run({"solve", "scalar", f, "--ring", "GF(3)", "--shards", "1"});
  REQUIRE(cli.rc == 0);
  CHECK(cli.json()["code"] == code_to_json(net, *lib.code));
  CHECK(cli.json()["stats"]["nodes"] == lib.stats.nodes);
}

TEST_CASE("transforms through files") {
  TempDir dir;
  const auto m = dir.file("m.json", run({"net", "gen", "m"}).out);
  const auto code = dir.file("mcode.json", run({"code", "gen", "m"}).out);
  const auto vec = dir.file("mvec.json", run({"transform", "mat2vec", m, code}).out);
  CHECK(run({"code", "verify", m, vec, "--semantic"}).rc == 0);
  const auto four = run({"transform", "dim-sum", m, vec, vec});
  REQUIRE(four.rc == 0);
  CHECK(four.json()["module"]["dim"] == 4);
  CHECK(run({"code", "verify", m, "-"}, four.out).rc == 0);
  const auto back = run({"transform", "mat2vec", m, vec, "--inverse"});
  CHECK(Json::parse(back.out) == Json::parse(run({"code", "gen", "m"}).out));
  const auto red = run({"transform", "reduce", m, code});
  CHECK(run({"code", "verify", m, "-"}, red.out).rc == 0);
  CHECK(run({"transform", "mat2vec", m, vec, vec}).rc == exit_code::kUsage);
}

TEST_CASE("manifest replay reproduces the result digest") {
  TempDir dir;
  const auto m = dir.file("m.json", run({"net", "gen", "m"}).out);
  const auto man = dir.name("run.json");
  const auto r = run({"solve", "scalar", m, "--ring", "GF(3)", "--manifest", man});
  CHECK(r.rc == exit_code::kUnsolved);
  std::ifstream f(man);
  const auto j = Json::parse(f);
  CHECK(j["exit_code"] == 1);
  CHECK(j["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(j["result_sha256"] == result_digest(r.json()));
  const auto rep = run({"replay", man});
  CHECK(rep.rc == 0);
  CHECK(rep.json()["reproduced"] == true);

  std::ofstream(m, std::ios::app) << " ";
  CHECK(run({"replay", man}).rc == exit_code::kDomain);
}

TEST_CASE("repro suites through the CLI") {
  const auto r = run({"repro", "catalog", "--json"});
  CHECK(r.rc == 0);
  CHECK(r.json()["passed"] == true);
  const auto t = run({"repro", "choose-two"});
  CHECK(t.rc == 0);
  CHECK(t.out.find("FAIL") == std::string::npos);
  CHECK(run({"repro", "nonsense"}).rc == exit_code::kUsage);
}

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
