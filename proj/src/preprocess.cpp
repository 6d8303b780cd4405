#include "preprocess.hpp"

#include <algorithm>
#include <cstdlib>

#include "errors.hpp"

namespace splbee {

Configuration ReducedModel::base_config() const {
  Configuration config(base.num_features);
  for (int f : constants.one) config.set(f, true);
  return config;
}

ConstantSets determine_constants(const FeatureModel& model) {
  // value[f]: 0 undefined, +1 forced true, -1 forced false.
  std::vector<signed char> value(model.num_features + 1, 0);
  for (int f : model.mandatory) value[f] = 1;

  auto falsified = [&](int lit) {
    const signed char v = value[std::abs(lit)];
    return lit > 0 ? v == -1 : v == 1;
  };
  auto satisfied = [&](int lit) {
    const signed char v = value[std::abs(lit)];
    return lit > 0 ? v == 1 : v == -1;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : model.clauses) {
      int undefined_lit = 0;
      int undefined_count = 0;
      bool clause_satisfied = false;
      for (int lit : clause) {
        if (satisfied(lit)) {
          clause_satisfied = true;
          break;
        }
        if (!falsified(lit)) {
          undefined_lit = lit;
          ++undefined_count;
          if (undefined_count > 1) break;
        }
      }
      if (clause_satisfied || undefined_count > 1) continue;
      if (undefined_count == 0)
        throw UnsatError("model unsatisfiable: clause falsified during constant propagation");
      value[std::abs(undefined_lit)] = undefined_lit > 0 ? 1 : -1;
      changed = true;
    }
  }

  ConstantSets constants;
  for (int f = 1; f <= model.num_features; ++f) {
    if (value[f] == 1)
      constants.one.push_back(f);
    else if (value[f] == -1)
      constants.zero.push_back(f);
  }
  return constants;
}

ReducedModel reduce(const FeatureModel& model, const ConstantSets& constants) {
  ReducedModel reduced;
  reduced.base = model;
  reduced.constants = constants;

  std::vector<signed char> value(model.num_features + 1, 0);
  for (int f : constants.one) value[f] = 1;
  for (int f : constants.zero) value[f] = -1;

  reduced.free_slot.assign(model.num_features + 1, -1);
  for (int f = 1; f <= model.num_features; ++f) {
    if (value[f] == 0) {
      reduced.free_slot[f] = static_cast<int>(reduced.free_features.size());
      reduced.free_features.push_back(f);
    }
  }

  for (const auto& clause : model.clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      const signed char v = value[std::abs(lit)];
      if ((lit > 0 && v == 1) || (lit < 0 && v == -1)) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) {
      ++reduced.declined;
      continue;
    }
    std::vector<int> active;
    active.reserve(clause.size());
    for (int lit : clause)
      if (value[std::abs(lit)] == 0) active.push_back(lit);
    // An emptied clause would have been a contradiction in determine_constants.
    if (active.empty()) throw UnsatError("model unsatisfiable: clause emptied by constants");
    reduced.active_clauses.push_back(std::move(active));
  }
  return reduced;
}

int reduced_dimension(const ReducedModel& reduced) {
  return (reduced.free_count() + 31) / 32;
}

ReducedModel preprocess(const FeatureModel& model) {
  return reduce(model, determine_constants(model));
}

std::vector<int> reported_mandatory(const FeatureModel& model) {
  if (!model.mandatory.empty()) return {model.mandatory.begin(), model.mandatory.end()};
  std::vector<int> result;
  for (const auto& clause : model.clauses)
    if (clause.size() == 1 && clause[0] > 0) result.push_back(clause[0]);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace splbee
