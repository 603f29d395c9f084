#pragma once

#include <string>
#include <vector>

#include "grs/properties.hpp"
#include "grs/stochastic.hpp"

namespace grs {

struct CheckItem {
  std::string property;
  int instances = 0;
  int failures = 0;
  std::string counterexample;  // first failure
};

struct CheckReport {
  std::vector<CheckItem> items;
  std::vector<Graph> states;  // the states the checks ran on
  bool ok() const;
};

/// Runs the algebraic property suites on the model's own rules: associativity
/// on rule triples, the representation homomorphism, concurrency and jump
/// closure on the initial state and a few states reached by a seeded random
/// walk, generator conservation, and constraint preservation of every
/// admissible step from those states.
CheckReport check_model(const ModelSpec& model, std::uint64_t seed = 1, int max_triples = 27, int walk_steps = 8);

}  // namespace grs
