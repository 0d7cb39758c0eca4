#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "srlab/errors.hpp"
#include "srlab/io.hpp"

using namespace srlab;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("srlab_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int c = cli::dispatch(args, out, err);
  return {c, out.str(), err.str()};
}

MapSpec f0_spec() {
  MapSpec s;
  s.cosine_coeffs = {-0.05};
  s.label = "f0";
  return s;
}
}  // namespace

TEST_SUITE("io_cli") {
  TEST_CASE("map spec JSON round trip is bit exact") {
    MapSpec s = f0_spec();
    s.sine_coeffs = {0.1 / 3.0, 1e-17, -2.5e-300};
    s.cosine_coeffs = {std::nextafter(0.01, 1.0)};
    s.degree = 3;
    s.normalize = true;
    s.conjugate_sine = std::vector<double>{0.0, 1e-4};
    const MapSpec back = map_spec_from_json(map_spec_to_json(s));
    CHECK(back == s);
    TempDir t;
    write_map_spec(t.file("m.json"), s);
    CHECK(read_map_spec(t.file("m.json")) == s);
    CHECK_THROWS_AS(map_spec_from_json("{\"degree\": \"two\"}"), PreconditionError);
    CHECK_THROWS_AS(map_spec_from_json("not json"), PreconditionError);
    CHECK_THROWS_AS(read_map_spec(t.file("missing.json")), PreconditionError);
  }

  TEST_CASE("build_map applies normalization and conjugacy") {
    MapSpec s = f0_spec();
    CHECK((*build_map(s))(0.3) == doctest::Approx((*trig_map(s))(0.3)));
    s.conjugate_sine = std::vector<double>{1e-3};
    const MapPtr m = build_map(s);
    const double x = 0.3, hx = x + 1e-3 * std::sin(2 * std::numbers::pi * x);
    const double fx = (*trig_map(f0_spec()))(x);
    CHECK((*m)(hx) == doctest::Approx(fx + 1e-3 * std::sin(2 * std::numbers::pi * fx)).epsilon(1e-13));
  }

  TEST_CASE("orbits command") {
    TempDir t;
    write_map_spec(t.file("f0.json"), f0_spec());
    const Run r = run({"orbits", "--map", t.file("f0.json"), "--period", "3"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.find("code") != std::string::npos);
    int rows = 0;
    bool seen001 = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++rows;
      if (line.rfind("001,", 0) == 0) {
        seen001 = true;
        // seventeen significant digits in the numeric fields
        const std::string field = line.substr(4, line.find(',', 4) - 4);
        CHECK(field.size() >= 17);
      }
    }
    CHECK(rows == 7);
    CHECK(seen001);
    const Run prim = run({"orbits", "--map", t.file("f0.json"), "--period", "4", "--primitive"});
    CHECK(prim.code == 0);
    CHECK(std::count(prim.out.begin(), prim.out.end(), '\n') == 1 + 12);
  }

  TEST_CASE("validate and counterexample commands") {
    TempDir t;
    MapSpec lin;
    lin.label = "L2";
    write_map_spec(t.file("lin.json"), lin);
    const Run v = run({"validate", "--map", t.file("lin.json")});
    REQUIRE(v.code == 0);
    const auto j = nlohmann::json::parse(v.out);
    CHECK(j["near_linear"] == true);
    CHECK(j["lambda"].get<double>() == 2.0);

    const Run c = run({"counterexample", "--epsilon", "0.1", "--max-level", "6", "--mismatch-level", "3"});
    REQUIRE(c.code == 0);
    const auto cj = nlohmann::json::parse(c.out);
    CHECK(cj["isospectral"] == true);
    CHECK(cj["opposite_marking_mismatches"] == 0);
    bool has001 = false;
    for (const auto& m : cj["mismatches"]) has001 = has001 || m["code"] == "001";
    CHECK(has001);

    const Run out = run({"validate", "--map", t.file("lin.json"), "--out", t.file("v.json")});
    CHECK(out.code == 0);
    CHECK(out.out.empty());
    std::ifstream in(t.file("v.json"));
    CHECK(nlohmann::json::parse(in)["degree"] == 2);
  }

  TEST_CASE("exit codes") {
    TempDir t;
    write_map_spec(t.file("f0.json"), f0_spec());
    CHECK(run({"orbits", "--map", t.file("f0.json"), "--bogus"}).code == 64);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({"orbits", "--period", "3"}).code == 64);
    CHECK(run({"orbits", "--map", t.file("nope.json"), "--period", "3"}).code == 1);
    CHECK(run({"counterexample", "--epsilon", "0.5"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    // f0 as the target is not near-linear
    const Run r = run({"reconstruct", "--f", t.file("f0.json"), "--g", t.file("f0.json"), "--max-k", "5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("precondition") != std::string::npos);
  }
}
