#pragma once

#include <array>
#include <cstdint>

#include "configuration.hpp"
#include "model_io.hpp"

namespace splbee {

// The five minimization objectives of a configuration.
struct ObjectiveVector {
  std::int64_t correctness = 0;   // violated constraints
  std::int64_t richness = 0;      // deselected features
  std::int64_t used_before = 0;   // selected features never used before
  std::int64_t defects = 0;       // summed defects over selected features
  double cost = 0.0;              // summed cost over selected features

  std::array<double, 5> as_array() const {
    return {static_cast<double>(correctness), static_cast<double>(richness),
            static_cast<double>(used_before), static_cast<double>(defects), cost};
  }

  bool operator==(const ObjectiveVector&) const = default;
  bool operator<(const ObjectiveVector& other) const { return as_array() < other.as_array(); }
};

// a dominates b: no component worse, at least one strictly better.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

ObjectiveVector evaluate(const Configuration& config, const FeatureModel& model,
                         const AttributeTable& attrs);

// The four attribute-derived components (everything except correctness),
// summed in feature order. Shared by evaluate() and the optimizer's fast
// path so both produce bit-identical sums.
ObjectiveVector attribute_objectives(const Configuration& config, const AttributeTable& attrs);

}  // namespace splbee
