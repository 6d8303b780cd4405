#pragma once

// Test-side reference implementations. Everything here is written from the
// definitions (exhaustive enumeration, direct formulas) and stays independent
// of the library code paths it is used to check.

#include <cstdint>
#include <optional>
#include <vector>

#include "model_io.hpp"

namespace oracles {

// All satisfying assignments of a model with at most 20 variables, each as a
// bitmask with bit f-1 holding feature f.
inline std::vector<std::uint32_t> satisfying_assignments(const splbee::FeatureModel& model) {
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> clauses;
  clauses.reserve(model.clauses.size());
  for (const auto& clause : model.clauses) {
    Masks m;
    for (int lit : clause) {
      const std::uint32_t bit = 1u << (std::abs(lit) - 1);
      if (lit > 0)
        m.pos |= bit;
      else
        m.neg |= bit;
    }
    clauses.push_back(m);
  }

  std::vector<std::uint32_t> result;
  const std::uint64_t total = 1ull << model.num_features;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto assignment = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (const Masks& m : clauses) {
      if ((assignment & m.pos) == 0 && (~assignment & m.neg) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) result.push_back(assignment);
  }
  return result;
}

struct Backbone {
  std::vector<int> always_true;
  std::vector<int> always_false;
};

// Backbone by enumeration; nullopt when the model is unsatisfiable.
inline std::optional<Backbone> backbone(const splbee::FeatureModel& model) {
  const auto assignments = satisfying_assignments(model);
  if (assignments.empty()) return std::nullopt;
  std::uint32_t all_true = ~0u;
  std::uint32_t all_false = ~0u;
  for (std::uint32_t a : assignments) {
    all_true &= a;
    all_false &= ~a;
  }
  Backbone result;
  for (int f = 1; f <= model.num_features; ++f) {
    const std::uint32_t bit = 1u << (f - 1);
    if (all_true & bit) result.always_true.push_back(f);
    if (all_false & bit) result.always_false.push_back(f);
  }
  return result;
}

inline bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

// O(n^2) non-dominated filter, exact duplicates collapsed to the first copy.
inline std::vector<std::vector<double>> pareto_filter(
    const std::vector<std::vector<double>>& points) {
  std::vector<std::vector<double>> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool rejected = false;
    for (std::size_t j = 0; j < points.size() && !rejected; ++j) {
      if (i == j) continue;
      if (dominates(points[j], points[i])) rejected = true;
      if (j < i && points[j] == points[i]) rejected = true;
    }
    if (!rejected) kept.push_back(points[i]);
  }
  return kept;
}

// Grid cell and quality weight recomputed straight from the definitions.
struct GroupRank {
  std::int64_t group = 0;
  std::int64_t rank = 1;
};

inline GroupRank group_rank_of(const std::vector<double>& point,
                               const std::vector<double>& mins,
                               const std::vector<double>& maxs, int sections) {
  GroupRank gr;
  std::int64_t scale = 1;
  for (std::size_t o = 0; o < point.size(); ++o) {
    std::int64_t bin = 0;
    if (maxs[o] > mins[o]) {
      bin = static_cast<std::int64_t>(
          std::floor(sections * (point[o] - mins[o]) / (maxs[o] - mins[o])));
      if (bin < 0) bin = 0;
      if (bin > sections) bin = sections;
    }
    gr.group += scale * bin;
    scale *= 255;
    gr.rank *= sections + 1 - bin;
  }
  return gr;
}

}  // namespace oracles
