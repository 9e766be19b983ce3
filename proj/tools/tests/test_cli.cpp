#include <doctest.h>

#include <string>

#include "dhlab/cli.hpp"

using namespace dhlab::cli;

TEST_CASE("command names round trip") {
  for (auto c : {Command::moments, Command::carleson, Command::apply, Command::norm_profile,
                 Command::tail_blocks, Command::scenario, Command::report_all})
    CHECK(parse_command(to_string(c)) == c);
  CHECK_THROWS_AS(parse_command("plot"), InputError);
}

TEST_CASE("parse_config reads a config object") {
  auto c = parse_config(R"({
    "command": "moments",
    "measure": {"atoms": [{"t": 0.5, "w": 1.0}]},
    "params": {"count": 3, "method": "quadrature"},
    "format": "csv"
  })");
  CHECK(c.command == Command::moments);
  REQUIRE(c.measure);
  CHECK(c.measure->atoms().size() == 1);
  CHECK(c.params.at("count") == "3");
  CHECK(c.params.at("method") == "quadrature");
  CHECK(c.format == Format::csv);
  CHECK_FALSE(c.out);
}

TEST_CASE("parse_config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config(R"({"command": "moments", "colour": "red"})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"target": "x"})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"command": "moments", "format": "xml"})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"command": "moments", "params": [1]})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"command": "moments", "params": {"N": [1]}})"), InputError);
  CHECK_THROWS_AS(parse_config("{oops"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"command": "moments", "measure": {"atoms": [{"t": 2, "w": 1}]}})"),
                  std::invalid_argument);
}

TEST_CASE("execute rejects parameters the command does not take") {
  RunConfig c;
  c.command = Command::moments;
  c.measure = dhlab::RadialMeasure::lebesgue();
  c.params["seed"] = "1";
  CHECK_THROWS_AS(execute(c), InputError);
  c.params = {{"count", "-3"}};
  CHECK_THROWS_AS(execute(c), InputError);
  c.params = {{"count", "three"}};
  CHECK_THROWS_AS(execute(c), InputError);
  c.measure.reset();
  c.params.clear();
  CHECK_THROWS_AS(execute(c), InputError);
}

TEST_CASE("moments report") {
  RunConfig c;
  c.command = Command::moments;
  c.measure = dhlab::RadialMeasure::point_mass(0.5);
  c.params["count"] = "3";
  auto o = execute(c);
  CHECK(o.status == 0);
  CHECK(o.report.columns == std::vector<std::string>{"n", "moment"});
  REQUIRE(o.report.rows.size() == 3);
  CHECK(std::get<double>(o.report.rows[2][1]) == 0.25);
  CHECK(o.report.status == "ok");
}

TEST_CASE("csv escaping and number format") {
  Report r;
  r.command = "scenario";
  r.inputs = R"({"a":1,"b":"x"})";
  r.status = "ok";
  r.summary = {{"note", std::string("has,comma")}};
  r.columns = {"name", "value"};
  r.rows = {{std::string("say \"hi\""), 0.1}, {std::string("plain"), std::int64_t{7}}};
  auto csv = to_csv(r);
  CHECK(csv.find("\"say \"\"hi\"\"\",0.10000000000000001\n") != std::string::npos);
  CHECK(csv.find("plain,7\n") != std::string::npos);
  CHECK(csv.find("# summary.note,\"has,comma\"\n") != std::string::npos);
  CHECK(csv.find("# inputs,\"{\"\"a\"\":1,\"\"b\"\":\"\"x\"\"}\"\n") != std::string::npos);
  CHECK(csv.find("name,value\n") != std::string::npos);
}

TEST_CASE("json report layout") {
  Report r;
  r.command = "moments";
  r.inputs = R"({"command":"moments"})";
  r.status = "ok";
  r.columns = {"n", "moment"};
  r.rows = {{std::int64_t{0}, 1.0}};
  auto text = to_json(r);
  for (const char* key : {"\"tool\"", "\"version\"", "\"command\"", "\"status\"", "\"inputs\"",
                          "\"summary\"", "\"columns\"", "\"rows\""})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("inputs_digest ignores output settings") {
  RunConfig a;
  a.command = Command::scenario;
  a.target = "hilbert-ineq";
  a.params["seed"] = "3";
  RunConfig b = a;
  b.format = Format::csv;
  b.out = "/tmp/elsewhere.csv";
  CHECK(inputs_digest(a) == inputs_digest(b));
  b.params["seed"] = "4";
  CHECK(inputs_digest(a) != inputs_digest(b));
}
