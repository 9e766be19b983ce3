#pragma once

#include <string>
#include <vector>

#include "dhlab/measure.hpp"

namespace dhlab {

struct NamedMeasure {
  std::string name;
  RadialMeasure measure;
};

/// delta_{0.5}, Lebesgue, beta in {1.5, 2, 2.5, 3}, and the log density (beta 2, lam 1).
/// Names match the files under corpus/.
std::vector<NamedMeasure> standard_corpus();

}  // namespace dhlab
