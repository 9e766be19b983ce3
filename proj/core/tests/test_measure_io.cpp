#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "dhlab/measure_io.hpp"

using namespace dhlab;

TEST_CASE("parse atoms and densities") {
  auto m = parse_measure(
      R"({"atoms": [{"t": 0.5, "w": 1.0}], "densities": [{"c": 2.0, "beta": 1.5, "lam": 1}]})");
  REQUIRE(m.atoms().size() == 1);
  CHECK(m.atoms()[0].t == 0.5);
  REQUIRE(m.densities().size() == 1);
  CHECK(m.densities()[0].c == 2.0);
  CHECK(m.densities()[0].beta == 1.5);
  CHECK(m.densities()[0].lam == 1);
}

TEST_CASE("both arrays are optional") {
  CHECK(parse_measure(R"({"atoms": [{"t": 0.0, "w": 1}]})").densities().empty());
  CHECK(parse_measure(R"({"densities": [{"c": 1, "beta": 1, "lam": 0}]})").atoms().empty());
}

TEST_CASE("round trip through json") {
  auto m = RadialMeasure({{0.25, 0.5}, {0.75, 2.0}}, {{1.0, 2.5, 0}, {0.5, 2.0, 1}});
  auto back = parse_measure(to_json(m));
  CHECK(back.describe() == m.describe());
  CHECK(to_json(back) == to_json(m));
}

TEST_CASE("errors name the offending field") {
  auto message = [](const char* text) {
    try {
      parse_measure(text);
    } catch (const InvalidMeasure& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"atoms": [{"t": 1.5, "w": 1}]})").find("atoms[0].t") != std::string::npos);
  CHECK(message(R"({"atoms": [{"t": 0.5}]})").find("atoms[0].w") != std::string::npos);
  CHECK(message(R"({"densities": [{"c": 1, "beta": -2, "lam": 0}]})").find("densities[0].beta") !=
        std::string::npos);
  CHECK(message(R"({"densities": [{"c": 1, "beta": 2, "lam": 0.5}]})").find("densities[0].lam") !=
        std::string::npos);
  CHECK(message(R"({"atomz": []})").find("atomz") != std::string::npos);
  CHECK(message("not json") != "no error");
  CHECK(message("[1, 2]") != "no error");
}

TEST_CASE("load from file") {
  auto path = std::filesystem::temp_directory_path() / "dhlab_measure_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"densities": [{"c": 1.0, "beta": 2.0, "lam": 0}]})";
  }
  auto m = load_measure(path);
  CHECK(m.densities().size() == 1);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_measure(path), InvalidMeasure);
}
