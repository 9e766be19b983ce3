#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dhlab/hankel.hpp"
#include "dhlab/measure.hpp"

namespace dhlab {

enum class Verdict { pass, fail, informational };
const char* to_string(Verdict v);

struct Metric {
  std::string name;
  double value = 0.0;
};

struct Label {
  std::string name;
  std::string value;
};

struct VerificationOutcome {
  std::string scenario_id;
  Verdict verdict = Verdict::fail;
  std::vector<Metric> metrics;
  /// Textual verdicts such as "growth.beta-1 = growing".
  std::vector<Label> labels;
  double tolerance = 0.0;
  /// Compact JSON object with the measure and every effective parameter.
  std::string inputs_digest;

  bool passed() const { return verdict != Verdict::fail; }
  /// Throws std::out_of_range if absent.
  double metric(std::string_view name) const;
  std::string label(std::string_view name) const;
};

/// Unset fields fall back to per-scenario defaults. Without a measure the
/// scenario runs its built-in comparison set.
struct ScenarioConfig {
  std::optional<RadialMeasure> measure;
  std::optional<int> n;
  std::optional<WeightScheme> scheme;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<int> grid_j;
  std::optional<int> trials;
  std::uint64_t seed = 0;
};

class UnknownScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& scenario_catalog();

/// Throws UnknownScenario for ids outside the catalog and std::invalid_argument
/// when a parameter violates the scenario's preconditions.
VerificationOutcome run_scenario(std::string_view id, const ScenarioConfig& config = {});

/// growing iff the last five values strictly increase and grow by at least 10%.
Trend classify_embedding(std::span<const double> values);

}  // namespace dhlab
