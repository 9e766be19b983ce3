#include <doctest.h>

#include <filesystem>

#include "dhlab/corpus.hpp"
#include "dhlab/measure_io.hpp"

using namespace dhlab;

TEST_CASE("corpus files match the built-in corpus") {
  const std::filesystem::path dir(DHLAB_CORPUS_DIR);
  for (const auto& [name, m] : standard_corpus()) {
    INFO(name);
    auto loaded = load_measure(dir / (name + ".json"));
    CHECK(to_json(loaded) == to_json(m));
    CHECK(moments(loaded, 50).values == moments(m, 50).values);
  }
}
