#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "autoseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = autoseq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string file(const std::string& name) { return testing::data_path(name); }

}  // namespace

TEST_CASE("analyze") {
  auto r = run({"--input", file("example_41"), "analyze"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["tool"] == "autoseq");
  CHECK(j["command"] == "analyze");
  CHECK(j["result"]["analysis"]["r"] == 2);
  const auto& rep = j["result"]["analysis"]["components"][0]["report"];
  CHECK(rep["height"] == 2);
  CHECK(rep["rank"] == 4);
  for (const char* key : {"rank", "images", "height", "classes", "sij", "r", "base_used"}) CHECK(rep.contains(key));

  auto csv = run({"-i", file("thue_morse"), "--format", "csv", "analyze"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("# autoseq analyze seed=0", 0) == 0);
  CHECK(csv.out.find("global,,,,,,2") != std::string::npos);
}

TEST_CASE("complexity") {
  auto r = run({"-i", file("thue_morse"), "--format", "csv", "complexity", "--kind", "ordinary", "--ell", "8", "--N",
                "65536"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\n8,22,65536,") != std::string::npos);
  auto ap = run({"-i", file("thue_morse"), "complexity", "--kind", "ap", "--ell", "4", "--N", "1024", "--Mmax", "16"});
  REQUIRE(ap.code == 0);
  auto j = nlohmann::json::parse(ap.out);
  CHECK(j["result"]["entries"][3]["count"] == 16);
  auto poly = run({"-i", file("mod3_base2"), "complexity", "--kind", "poly", "--ell", "4", "--degree", "1"});
  REQUIRE(poly.code == 0);
  CHECK(nlohmann::json::parse(poly.out)["result"]["entries"][3]["count"] == 9);

  const std::string wpath = "cli_witnesses.json";
  auto w = run({"-i", file("thue_morse"), "complexity", "--ell", "3", "--N", "64", "--Mmax", "8", "--witnesses", wpath});
  REQUIRE(w.code == 0);
  std::ifstream in(wpath);
  auto wj = nlohmann::json::parse(in);
  CHECK(wj.size() == 8);
}

TEST_CASE("verify, cover, gowers, density, masc") {
  auto v = run({"-i", file("contains11"), "verify", "--ell-max", "5", "--N", "1024", "--Mmax", "16"});
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["result"]["sanity_ok"] == true);

  auto c = run({"cover", "--poly", "0,2,2", "--word", "11", "--ell", "10000"});
  CHECK(c.code == 0);
  CHECK(c.err.find("cover: valid") == 0);
  CHECK(nlohmann::json::parse(c.out)["result"]["verdict"]["partition_ok"] == true);

  auto g = run({"-i", file("thue_morse"), "--seed", "7", "gowers", "--N", "64,128", "--cyclic-check", "5"});
  CHECK(g.code == 0);
  auto gj = nlohmann::json::parse(g.out);
  CHECK(gj["seed"] == 7);
  CHECK(gj["result"]["probes"].size() == 2);
  CHECK(gj["result"]["cyclic_check"]["max_difference"].get<double>() < 1e-9);

  auto d = run({"-i", file("thue_morse"), "density", "--label", "0", "--set", "u=1,res=1%3", "--N", "4096"});
  CHECK(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["result"]["set"] == "u=1,v=,len=0%1,res=1%3");

  auto m = run({"-i", file("mod3_base2"), "masc", "--depth", "2", "--N", "4096"});
  CHECK(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["result"]["verdict"] == "NotMaximal");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"-i", "/nonexistent.dfao", "analyze"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "--format", "xml", "analyze"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "complexity", "--kind", "fancy"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "complexity", "--ell", "0"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "density", "--set", "u=01"}).code == 2);
  CHECK(run({"cover", "--poly", "1,x"}).code == 2);
  CHECK(run({"cover", "--poly", "5"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "gowers", "--N", "1000"}).code == 2);
  CHECK(run({"-i", file("thue_morse"), "--threads", "-1", "analyze"}).code == 2);

  std::ofstream bad("cli_bad.dfao");
  bad << "base 2\nstates a\ninitial b\n";
  bad.close();
  auto r = run({"-i", "cli_bad.dfao", "analyze"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("output file and determinism") {
  const std::string path = "cli_out.json";
  auto r = run({"-i", file("rudin_shapiro"), "--out", path, "--seed", "3", "gowers", "--cyclic-check", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream first;
  first << in.rdbuf();
  auto again = run({"-i", file("rudin_shapiro"), "--seed", "3", "gowers", "--cyclic-check", "4"});
  CHECK(again.out == first.str());
  auto other_threads = run({"-i", file("rudin_shapiro"), "--seed", "3", "--threads", "2", "gowers", "--cyclic-check", "4"});
  CHECK(other_threads.out == first.str());
  auto other_seed = run({"-i", file("rudin_shapiro"), "--seed", "4", "gowers", "--cyclic-check", "4"});
  CHECK(other_seed.out != first.str());
}
