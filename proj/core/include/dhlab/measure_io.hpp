#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dhlab/measure.hpp"

namespace dhlab {

/// Parses the measure file format
///   { "atoms": [{"t": 0.5, "w": 1.0}], "densities": [{"c": 1.0, "beta": 2.0, "lam": 0}] }
/// Both arrays are optional; densities may also carry "cutoff". Errors are
/// reported as InvalidMeasure with the offending field in the message.
RadialMeasure parse_measure(std::string_view text);
RadialMeasure load_measure(const std::filesystem::path& path);

std::string to_json(const RadialMeasure& m);

}  // namespace dhlab
