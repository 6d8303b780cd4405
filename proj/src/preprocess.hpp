#pragma once

#include <vector>

#include "configuration.hpp"
#include "model_io.hpp"

namespace splbee {

// Features whose value is forced before search: `one` forced selected,
// `zero` forced deselected. Disjoint by construction.
struct ConstantSets {
  std::vector<int> one;
  std::vector<int> zero;

  int total() const { return static_cast<int>(one.size() + zero.size()); }
  bool operator==(const ConstantSets&) const = default;
};

// The model after constant substitution. Declined clauses (permanently
// satisfied by a constant) are dropped; the remaining active clauses keep
// their original feature ids with constant-falsified literals removed.
struct ReducedModel {
  FeatureModel base;
  ConstantSets constants;
  std::vector<int> free_features;        // ascending original ids
  std::vector<int> free_slot;            // feature id -> index in free_features, or -1
  std::vector<std::vector<int>> active_clauses;
  std::int64_t declined = 0;

  int free_count() const { return static_cast<int>(free_features.size()); }

  // Constants applied, free features deselected.
  Configuration base_config() const;
};

// Fixpoint propagation of forced values: whenever every other literal of a
// clause is falsified by the current constants, the remaining literal is
// asserted; repeat until no change. Declared-mandatory features are injected
// as positive facts before the loop. Throws UnsatError on contradiction.
ConstantSets determine_constants(const FeatureModel& model);

ReducedModel reduce(const FeatureModel& model, const ConstantSets& constants);

// Number of 32-bit position words spanning the free features (0 for fully
// determined models).
int reduced_dimension(const ReducedModel& reduced);

// Convenience: determine_constants + reduce.
ReducedModel preprocess(const FeatureModel& model);

// Mandatory set used for reporting: declared mandatory features if any,
// otherwise the features of unit positive clauses.
std::vector<int> reported_mandatory(const FeatureModel& model);

}  // namespace splbee
