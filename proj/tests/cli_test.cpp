#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "feedback/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "feedback");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = feedback::cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("feedback_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("cli gen") {
  Run r = run({"gen", "--family", "octa", "--n", "2", "--layout"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["vertices"].size() == 9);
  CHECK(doc["edges"].size() == 21);
  CHECK(doc["layout"]["v1"] == json::array({1.0, 1.0}));

  Run plain = run({"gen", "--family", "dw", "--rim", "6"});
  REQUIRE(plain.code == 0);
  json dw = json::parse(plain.out);
  CHECK(dw["vertices"].size() == 8);
  CHECK_FALSE(dw.contains("layout"));

  auto path = temp_file("gen.json");
  CHECK(run({"gen", "--family", "cycle", "--n", "5", "--out", path.string()}).code == 0);
  std::ifstream file(path);
  json c5 = json::parse(file);
  CHECK(c5["edges"].size() == 5);
  std::filesystem::remove(path);

  CHECK(run({"gen", "--family", "octa", "--n", "0"}).code == 2);
  CHECK(run({"gen", "--family", "tree"}).code == 2);
}

TEST_CASE("cli solve") {
  Run r = run({"solve", "--family", "octa", "--n", "2", "--p", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("winner: Bob") != std::string::npos);
  CHECK(r.out.find("witness: none") != std::string::npos);

  Run a = run({"solve", "--family", "octa", "--n", "2", "--p", "2", "--json", "--threads", "2"});
  REQUIRE(a.code == 0);
  json doc = json::parse(a.out);
  CHECK(doc["winner"] == "alice");
  CHECK(doc["witness"].is_string());

  Run big = run({"solve", "--family", "octa", "--n", "5", "--p", "0"});
  CHECK(big.code == 3);
  CHECK(big.err.find("48 edges exceed the solver limit of 40") != std::string::npos);

  ::setenv("FEEDBACK_EDGE_LIMIT", "10", 1);
  CHECK(run({"solve", "--family", "octa", "--n", "1"}).code == 3);
  ::unsetenv("FEEDBACK_EDGE_LIMIT");

  auto path = temp_file("custom.json");
  {
    std::ofstream f(path);
    f << R"({"vertices":["a","b","c","z"],"edges":[["a","b"],["b","c"],["c","a"]]})";
  }
  Run custom = run({"solve", "--graph", path.string(), "--start", "a"});
  CHECK(custom.code == 0);
  CHECK(custom.out.find("winner: Alice") != std::string::npos);
  CHECK(run({"solve", "--graph", path.string(), "--start", "z"}).code == 2);
  CHECK(run({"solve", "--graph", (path.string() + ".missing")}).code != 0);
  std::filesystem::remove(path);
}

TEST_CASE("cli usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"solve", "--bogus"}).code == 1);
  CHECK(run({"verify-table"}).code == 1);
  CHECK(run({"kernel", "check", "--n", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli verify-table") {
  Run r = run({"verify-table", "--n", "1", "--n", "2", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all rows agree") != std::string::npos);
  Run j = run({"verify-table", "--n", "2", "--json"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)["rows"].size() == 3);
  CHECK(run({"verify-table", "--n", "5"}).code == 3);
  CHECK(run({"verify-table", "--n", "0"}).code == 2);
}

TEST_CASE("cli kernel") {
  Run ok = run({"kernel", "check", "--family", "octa", "--n", "1", "--start", "u0", "--set", "u0,v1"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out) == json::parse(R"({"start":"u0","kernel":["u0","v1"],"verified":true})"));

  Run bad = run({"kernel", "check", "--family", "octa", "--n", "1", "--start", "u0", "--set", "u0,v0"});
  CHECK(bad.code == 4);
  CHECK(json::parse(bad.out)["verified"] == false);
  CHECK(run({"kernel", "check", "--n", "1", "--set", "u0,q"}).code == 2);

  Run find = run({"kernel", "find", "--family", "octa", "--n", "1", "--start", "u0", "--strategy"});
  CHECK(find.code == 0);
  json f = json::parse(find.out);
  CHECK(f["kernel"] == json::array({"u0", "v1"}));
  CHECK(f["verified"] == true);
  CHECK(f["strategy_verified"] == true);

  Run none = run({"kernel", "find", "--family", "cycle", "--n", "5"});
  CHECK(none.code == 0);
  CHECK(json::parse(none.out)["kernel"].is_null());

  Run l32 = run({"kernel", "lemma32", "--m", "1"});
  CHECK(l32.code == 0);
  json k = json::parse(l32.out);
  CHECK(k["n"] == 4);
  CHECK(k["kernel"] == json::array({"u0", "v1", "u3", "v4"}));
  CHECK(k["verified"] == true);
  CHECK(json::parse(run({"kernel", "lemma32", "--m", "0", "--residue", "1"}).out)["start"] == "v1");
  CHECK(run({"kernel", "lemma32", "--m", "0", "--residue", "2"}).code == 2);

  Run l33 = run({"kernel", "lemma33", "--m", "0", "--k", "0"});
  CHECK(l33.code == 0);
  json s = json::parse(l33.out);
  CHECK(s["start"] == "v1");
  CHECK(s["verified"] == false);
  CHECK(s["odd_vertices"][0] == "u1");
  CHECK(run({"kernel", "lemma33", "--m", "0", "--k", "1"}).code == 2);
}

TEST_CASE("cli play") {
  SUBCASE("two humans on a triangle") {
    Run r = run({"play", "--family", "cycle", "--n", "3", "--start", "c0", "--engine", "none"}, "c1\nc2\nc0\n");
    CHECK(r.code == 0);
    CHECK(r.out.find("Alice wins (returned to start)") != std::string::npos);
  }
  SUBCASE("engine as Alice") {
    Run r = run({"play", "--family", "cycle", "--n", "3", "--start", "c0", "--engine", "alice"}, "c2\n");
    CHECK(r.code == 0);
    CHECK(r.out.find("engine moves to c1") != std::string::npos);
    CHECK(r.out.find("Alice wins") != std::string::npos);
  }
  SUBCASE("bad input is reported and play continues") {
    Run r = run({"play", "--family", "cycle", "--n", "4", "--start", "c0", "--engine", "bob"}, "zz\nc2\nc1\nquit\n");
    CHECK(r.code == 0);
    CHECK(r.out.find("unknown vertex 'zz'") != std::string::npos);
    CHECK(r.out.find("IllegalMove") != std::string::npos);  // c0-c2 is not an edge
    CHECK(r.out.find("engine moves to c2") != std::string::npos);
    CHECK(r.out.find("game abandoned") != std::string::npos);
  }
  SUBCASE("beyond the solver limit the engine plays greedily") {
    Run r = run({"play", "--family", "octa", "--n", "5", "--p", "0", "--engine", "alice"}, "quit\n");
    CHECK(r.code == 0);
    CHECK(r.out.find("non-optimal") != std::string::npos);
  }
  CHECK(run({"play", "--family", "cycle", "--n", "3", "--engine", "carol"}).code == 2);
}

TEST_CASE("cli serve rejects a missing static directory") {
  Run r = run({"serve", "--port", "0", "--static", "/nonexistent/feedback-ui"});
  CHECK(r.code == 2);
}
