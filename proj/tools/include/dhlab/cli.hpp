#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dhlab/measure.hpp"

namespace dhlab::cli {

/// Bad flags, bad config keys or values, unreadable measure files. Exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { moments, carleson, apply, norm_profile, tail_blocks, scenario, report_all };
const char* to_string(Command c);
Command parse_command(std::string_view name);

enum class Format { json, csv };

struct RunConfig {
  Command command = Command::moments;
  /// Scenario id for `scenario`, corpus directory for `report-all`.
  std::string target;
  std::optional<RadialMeasure> measure;
  /// Raw key/value parameters exactly as supplied; validated by execute().
  std::map<std::string, std::string> params;
  Format format = Format::json;
  std::optional<std::filesystem::path> out;
};

/// Accepts either a config object
///   {"command": "...", "target": "...", "measure": <path or measure object>,
///    "params": {...}, "format": "json|csv", "out": "..."}
/// or a previously written json report, whose "inputs" block is re-run.
RunConfig parse_config(std::string_view text);

/// The reproducible part of a config: command, target, inline measure, params.
std::string inputs_digest(const RunConfig& config);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Report {
  std::string command;
  std::string inputs;  ///< inputs_digest of the run
  std::string status;  ///< "ok", "fail" or "input-error"
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string to_json(const Report& r);
/// Comment lines "# key,value" for metadata and summary, then the table.
/// Doubles use %.17g.
std::string to_csv(const Report& r);

struct Outcome {
  int status = 0;  ///< 0 ok, 1 failed scenario, 2 input error
  Report report;
};

Outcome execute(const RunConfig& config);

/// Full command-line entry point: parses argv, executes, writes the report to
/// --out or `out`, diagnostics to `err`. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dhlab::cli
