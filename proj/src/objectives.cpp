#include "objectives.hpp"

#include "sat_engine.hpp"

namespace splbee {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const auto av = a.as_array();
  const auto bv = b.as_array();
  bool strictly_better = false;
  for (int i = 0; i < 5; ++i) {
    if (av[i] > bv[i]) return false;
    if (av[i] < bv[i]) strictly_better = true;
  }
  return strictly_better;
}

ObjectiveVector attribute_objectives(const Configuration& config, const AttributeTable& attrs) {
  ObjectiveVector v;
  const int num_features = config.feature_count();
  for (int f = 1; f <= num_features; ++f) {
    if (!config.selected(f)) {
      ++v.richness;
      continue;
    }
    const FeatureAttributes& a = attrs.at(f);
    if (!a.used_before) ++v.used_before;
    v.defects += a.defects;
    v.cost += a.cost;
  }
  return v;
}

ObjectiveVector evaluate(const Configuration& config, const FeatureModel& model,
                         const AttributeTable& attrs) {
  ObjectiveVector v = attribute_objectives(config, attrs);
  v.correctness = count_violations(config, model.clauses);
  return v;
}

}  // namespace splbee
