#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dimon/cli.hpp"
#include "dimon/presentation.hpp"
#include "json.hpp"

namespace {
  struct Outcome {
    int         code;
    std::string out;
    std::string err;
  };

  Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = dimon::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::filesystem::path temp_file(std::string const& name) {
    return std::filesystem::temp_directory_path() / ("dimon_test_" + name);
  }
}  // namespace

TEST_CASE("verify-presentation R 4") {
  auto r = run({"verify-presentation", "--family", "R", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("44 = 44") != std::string::npos);

  auto j = run({"verify-presentation", "--family", "R", "--n", "4", "--json"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verdict"] == "PASS");
  CHECK(doc["classes"] == 44);
  CHECK(doc["monoid_size"] == 44);
}

TEST_CASE("formulas 4..4") {
  auto r = run({"formulas", "--n-range", "4..4"});
  for (auto v : {"36", "32", "38", "25", "18", "16"}) {
    CHECK(r.out.find(v) != std::string::npos);
  }
  // the VbarPrime builder disagrees with its closed form
  CHECK(r.code == 1);
  auto j   = run({"formulas", "--n-range", "4..4", "--json"});
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verdict"] == "FAIL");
  CHECK_FALSE(run({"formulas", "--n-range", "5..4"}).code == 0);
  CHECK(run({"formulas", "--n-range", "four"}).code == 2);
}

TEST_CASE("build") {
  auto r = run({"build", "--family", "oci", "--n", "1", "--json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["size"] == 2);

  auto path = temp_file("odi5.json");
  auto dot  = temp_file("odi5.dot");
  auto s    = run({"build", "--family", "odi", "--n", "5", "--out", path.string(),
                   "--dot", dot.string()});
  CHECK(s.code == 0);
  std::ifstream in(path);
  auto          doc = nlohmann::json::parse(in);
  CHECK(doc["degree"] == 5);
  CHECK(doc["elements"].size() == 104);
  CHECK(std::filesystem::file_size(dot) > 0);
  std::filesystem::remove(path);
  std::filesystem::remove(dot);
}

TEST_CASE("enumerate a presentation file") {
  auto path = temp_file("p.json");
  {
    std::ofstream f(path);
    f << dimon::to_json(dimon::build_relations(dimon::RelationFamily::U, 4)).dump();
  }
  auto r = run({"enumerate", "--presentation", path.string(), "--json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["status"] == "complete");
  CHECK(doc["classes"] == 38);
  auto c = run({"enumerate", "--presentation", path.string(), "--max-classes", "5"});
  CHECK(c.code == 3);
  std::filesystem::remove(path);
  CHECK(run({"enumerate", "--presentation", path.string()}).code == 2);
}

TEST_CASE("other verbs") {
  CHECK(run({"check-relations", "--family", "Q", "--n", "6"}).code == 0);
  CHECK(run({"forms", "--family", "R", "--n", "4"}).code == 0);
  CHECK(run({"tietze", "--chain", "odi", "--n", "4"}).code == 0);
  CHECK(run({"tietze", "--chain", "opdi", "--n", "4"}).code == 0);
  auto g = run({"green", "--family", "di", "--n", "4", "--json"});
  REQUIRE(g.code == 0);
  auto doc = nlohmann::json::parse(g.out);
  CHECK(doc["size"] > 0);
  CHECK(doc["J"] >= 5);
}

TEST_CASE("invalid input") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build", "--family", "nope", "--n", "4"}).code == 2);
  CHECK(run({"build", "--family", "odi", "--n", "x"}).code == 2);
  CHECK(run({"verify-presentation", "--family", "R", "--n", "4", "--bogus"}).code == 2);
  CHECK(run({"tietze", "--chain", "mdi", "--n", "4"}).code == 2);
}

TEST_CASE("DIMON_MAX_CLASSES caps enumeration") {
  ::setenv("DIMON_MAX_CLASSES", "10", 1);
  auto r = run({"verify-presentation", "--family", "R", "--n", "4"});
  CHECK(r.code == 3);
  CHECK(r.out.find("INDETERMINATE") != std::string::npos);
  // an explicit flag wins over the environment
  CHECK(run({"verify-presentation", "--family", "R", "--n", "4", "--max-classes", "1000"}).code == 0);
  ::setenv("DIMON_MAX_CLASSES", "zero", 1);
  CHECK(run({"verify-presentation", "--family", "R", "--n", "4"}).code == 2);
  ::unsetenv("DIMON_MAX_CLASSES");
}
