#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splbee {

// A Pareto front as raw indicator input: points share one arity (five for
// this artifact, but every indicator below is dimension-generic), all
// objectives minimized. `configs` optionally carries the bitstring of the
// product behind each point (empty, or parallel to `points`).
struct Front {
  std::vector<std::vector<double>> points;
  std::vector<std::string> configs;

  std::size_t size() const { return points.size(); }
};

struct NormalizationBounds {
  std::vector<double> min;
  std::vector<double> max;
};

// Componentwise (v-min)/(max-min), clipped to [0,1]; a degenerate range maps
// to 0.
Front normalize(const Front& front, const NormalizationBounds& bounds);

// Exact hypervolume dominated by `points` up to `ref` (minimization):
// Lebesgue measure of the union of boxes [p, ref], by WFG-style recursive
// slicing over points. Points beyond the reference are clipped. Empty -> 0.
double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& reference_point);
double hypervolume(const Front& normalized_front);  // ref = (1,...,1)

// Additive epsilon: max over reference points of the smallest uniform shift
// that brings some front point to weakly dominate it.
double epsilon(const Front& front, const Front& reference_front);

// Mean Euclidean distance from each reference point to the nearest front
// point.
double igd(const Front& front, const Front& reference_front);

// Distribution irregularity (generalized nearest-neighbour form of Deb's
// delta): with d_i the distance from each front point to its nearest distinct
// neighbour, dbar their mean, and ext_o the distance from each per-objective
// extreme of the reference front to its nearest front point,
//   delta = (sum_o ext_o + sum_i |d_i - dbar|) / (sum_o ext_o + n*dbar).
// A front with fewer than two points (or zero denominator) is maximally
// irregular: 1.0.
double spread(const Front& front, const Front& reference_front);

// Vargha-Delaney effect size: probability that a sample from A exceeds one
// from B, ties counted half.
double a12(const std::vector<double>& samples_a, const std::vector<double>& samples_b);

// Non-dominated filter of the union of the input fronts (exact duplicate
// points collapse, first occurrence kept) plus normalization bounds over the
// whole union.
struct ReferenceResult {
  Front front;
  NormalizationBounds bounds;
};
ReferenceResult build_reference_front(const std::vector<Front>& fronts);

bool dominates_point(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace splbee
