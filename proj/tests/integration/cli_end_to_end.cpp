#include <doctest.h>

#ifdef DHLAB_HAVE_CLI

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dhlab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run dhlab_run(std::vector<std::string> args) {
  args.insert(args.begin(), "dhlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = dhlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string corpus(const std::string& name) {
  return (fs::path(DHLAB_CORPUS_DIR) / (name + ".json")).string();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() / ("dhlab_it_" + tag)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }

 private:
  fs::path path_;
};

// Parses the table body of a csv report (comment lines skipped).
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cell += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("moments on a point mass") {
  auto r = dhlab_run({"moments", "--measure", corpus("delta-0.5"), "--count", "3", "--format", "csv"});
  CHECK(r.status == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"0", "1"});
  CHECK(rows[1] == std::vector<std::string>{"1", "0.5"});
  CHECK(rows[2] == std::vector<std::string>{"2", "0.25"});
}

TEST_CASE("hilbert-ineq scenario") {
  auto r = dhlab_run({"scenario", "hilbert-ineq", "--trials", "1000", "--seed", "7"});
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["status"] == "ok");
  bool found = false;
  for (const auto& row : j["rows"]) {
    if (row[1] == "max_ratio") {
      found = true;
      CHECK(row[2].get<double>() < 1.0);
    }
  }
  CHECK(found);
}

TEST_CASE("carleson on beta 1.5 at s = 2") {
  auto r = dhlab_run({"carleson", "--measure", corpus("beta-1.5"), "--s", "2"});
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["summary"]["verdict"] == "not 2-Carleson");
  CHECK(j["summary"]["vanishing"] == "growing");
}

TEST_CASE("input errors exit with 2") {
  CHECK(dhlab_run({"scenario", "no-such-thing"}).status == 2);
  CHECK(dhlab_run({"moments", "--measure", corpus("lebesgue"), "--seed", "1"}).status == 2);
  CHECK(dhlab_run({"moments", "--measure", "/nonexistent.json"}).status == 2);
  CHECK(dhlab_run({"moments"}).status == 2);
  CHECK(dhlab_run({"frobnicate"}).status == 2);
  CHECK(dhlab_run({"scenario", "necessity-4.1-i", "--p", "3"}).status == 2);
  CHECK(dhlab_run({"moments", "--bogus", "1"}).status == 2);
  TempDir tmp("bad_measure");
  tmp.write("m.json", R"({"densities": [{"c": 1, "beta": 0, "lam": 0}]})");
  auto r = dhlab_run({"moments", "--measure", (tmp.path() / "m.json").string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("densities[0].beta") != std::string::npos);
}

TEST_CASE("apply fast and naive columns agree") {
  auto r = dhlab_run({"apply", "--measure", corpus("delta-0.5"), "--N", "3", "--scheme", "derivative",
                      "--series", "monomial", "--k", "0"});
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  std::vector<double> expected{1.0, 1.0, 0.75};
  REQUIRE(j["rows"].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(j["rows"][i][1].get<double>() == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(j["rows"][i][3].get<double>() == doctest::Approx(expected[i]).epsilon(1e-14));
  }
}

TEST_CASE("csv and json carry identical values") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"norm-profile", "--measure", corpus("beta-2"), "--N", "512"},
        std::vector<std::string>{"carleson", "--measure", corpus("log-beta-2"), "--s", "1.5"},
        std::vector<std::string>{"scenario", "pairing-identity", "--trials", "5"}}) {
    auto as_json = dhlab_run(args);
    args.insert(args.end(), {"--format", "csv"});
    auto as_csv = dhlab_run(args);
    REQUIRE(as_json.status == as_csv.status);
    auto j = json::parse(as_json.out);
    auto rows = csv_rows(as_csv.out);
    REQUIRE(rows.size() == j["rows"].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      REQUIRE(rows[i].size() == j["rows"][i].size());
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        const auto& cell = j["rows"][i][c];
        if (cell.is_number_float()) {
          CHECK(std::stod(rows[i][c]) == cell.get<double>());
        } else if (cell.is_number_integer()) {
          CHECK(std::stoll(rows[i][c]) == cell.get<long long>());
        } else {
          CHECK(rows[i][c] == cell.get<std::string>());
        }
      }
    }
  }
}

TEST_CASE("re-running a report reproduces its metrics") {
  TempDir tmp("rerun");
  auto first_path = (tmp.path() / "first.json").string();
  auto first = dhlab_run({"scenario", "repr-identity", "--measure", corpus("beta-2"), "--seed", "5",
                          "--out", first_path});
  REQUIRE(first.status == 0);
  auto again = dhlab_run({"--config", first_path});
  REQUIRE(again.status == 0);
  std::ifstream in(first_path);
  auto a = json::parse(in);
  auto b = json::parse(again.out);
  CHECK(a["rows"] == b["rows"]);
  CHECK(a["summary"] == b["summary"]);
  CHECK(a["inputs"] == b["inputs"]);
}

TEST_CASE("config files drive runs") {
  TempDir tmp("config");
  tmp.write("run.json", R"({"command": "moments", "measure": ")" + corpus("lebesgue") +
                            R"(", "params": {"count": 4}, "format": "csv"})");
  auto r = dhlab_run({"--config", (tmp.path() / "run.json").string()});
  CHECK(r.status == 0);
  CHECK(csv_rows(r.out).size() == 4);
  tmp.write("bad.json", R"({"command": "moments", "unexpected": 1})");
  CHECK(dhlab_run({"--config", (tmp.path() / "bad.json").string()}).status == 2);
}

TEST_CASE("report-all over the standard corpus") {
  auto r = dhlab_run({"report-all", DHLAB_CORPUS_DIR});
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  bool bounded_pass = false;
  for (const auto& row : j["rows"]) {
    CHECK(row[2] != "fail");
    CHECK(row[2] != "error");
    if (row[1] == "h2-bounded-dichotomy" && row[2] == "pass") bounded_pass = true;
  }
  CHECK(bounded_pass);
  CHECK(j["rows"].size() == 7 * 11);
}

TEST_CASE("report-all on an empty directory") {
  TempDir tmp("empty");
  auto r = dhlab_run({"report-all", tmp.path().string(), "--format", "csv"});
  CHECK(r.status == 0);
  CHECK(csv_rows(r.out).empty());
}

TEST_CASE("report-all isolates a malformed file") {
  TempDir tmp("malformed");
  fs::copy_file(corpus("beta-3"), tmp.path() / "beta-3.json");
  tmp.write("broken.json", R"({"atoms": [{"t": 1.5, "w": 1}]})");
  auto r = dhlab_run({"report-all", tmp.path().string()});
  CHECK(r.status == 2);
  auto j = json::parse(r.out);
  int broken = 0, complete = 0;
  for (const auto& row : j["rows"]) {
    if (row[0] == "broken") {
      ++broken;
      CHECK(row[2] == "input-error");
      CHECK(row[5].get<std::string>().find("atoms[0].t") != std::string::npos);
    } else {
      ++complete;
      CHECK(row[2] != "input-error");
    }
  }
  CHECK(broken == 1);
  CHECK(complete == 11);
}

#endif
