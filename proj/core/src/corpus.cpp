#include "dhlab/corpus.hpp"

namespace dhlab {

std::vector<NamedMeasure> standard_corpus() {
  return {
      {"delta-0.5", RadialMeasure::point_mass(0.5)},
      {"lebesgue", RadialMeasure::lebesgue()},
      {"beta-1.5", RadialMeasure::beta_density(1.5)},
      {"beta-2", RadialMeasure::beta_density(2.0)},
      {"beta-2.5", RadialMeasure::beta_density(2.5)},
      {"beta-3", RadialMeasure::beta_density(3.0)},
      {"log-beta-2", RadialMeasure::beta_density(2.0, 1.0, 1)},
  };
}

}  // namespace dhlab
