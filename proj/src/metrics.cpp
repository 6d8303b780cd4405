#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace splbee {

bool dominates_point(const std::vector<double>& a, const std::vector<double>& b) {
  bool strictly_better = false;
  for (std::size_t o = 0; o < a.size(); ++o) {
    if (a[o] > b[o]) return false;
    if (a[o] < b[o]) strictly_better = true;
  }
  return strictly_better;
}

Front normalize(const Front& front, const NormalizationBounds& bounds) {
  Front result = front;
  for (auto& point : result.points) {
    if (point.size() != bounds.min.size())
      throw std::invalid_argument("normalize: point arity does not match bounds");
    for (std::size_t o = 0; o < point.size(); ++o) {
      const double range = bounds.max[o] - bounds.min[o];
      double v = range > 0.0 ? (point[o] - bounds.min[o]) / range : 0.0;
      point[o] = std::clamp(v, 0.0, 1.0);
    }
  }
  return result;
}

namespace {

using Point = std::vector<double>;
using PointSet = std::vector<Point>;

double inclusive_hv(const Point& p, const Point& ref) {
  double volume = 1.0;
  for (std::size_t o = 0; o < p.size(); ++o) {
    const double side = ref[o] - p[o];
    if (side <= 0.0) return 0.0;
    volume *= side;
  }
  return volume;
}

// Keep only minimal points (weak dominance: q <= p removes p).
PointSet minimal_points(PointSet points) {
  const std::size_t n = points.size();
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !covered[i]; ++j) {
      if (i == j) continue;
      bool le = true, lt = false;
      for (std::size_t o = 0; o < points[i].size(); ++o) {
        if (points[j][o] > points[i][o]) {
          le = false;
          break;
        }
        if (points[j][o] < points[i][o]) lt = true;
      }
      // A duplicate survives only in its first occurrence.
      covered[i] = le && (lt || j < i);
    }
  }
  PointSet kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!covered[i]) kept.push_back(std::move(points[i]));
  return kept;
}

double wfg_hv(PointSet points, const Point& ref) {
  const std::size_t n = points.size();
  if (n == 0) return 0.0;
  if (n == 1) return inclusive_hv(points[0], ref);
  if (n == 2) {
    Point meet(points[0].size());
    for (std::size_t o = 0; o < meet.size(); ++o) meet[o] = std::max(points[0][o], points[1][o]);
    return inclusive_hv(points[0], ref) + inclusive_hv(points[1], ref) - inclusive_hv(meet, ref);
  }

  std::sort(points.begin(), points.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Exclusive contribution of point i relative to the points after it.
    PointSet limited;
    limited.reserve(n - i - 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      Point q(points[i].size());
      for (std::size_t o = 0; o < q.size(); ++o) q[o] = std::max(points[i][o], points[j][o]);
      limited.push_back(std::move(q));
    }
    total += inclusive_hv(points[i], ref) - wfg_hv(minimal_points(std::move(limited)), ref);
  }
  return total;
}

double distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t o = 0; o < a.size(); ++o) {
    const double d = a[o] - b[o];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double nearest_distance(const Point& p, const PointSet& points) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : points) best = std::min(best, distance(p, q));
  return best;
}

}  // namespace

double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& reference_point) {
  if (points.empty()) return 0.0;
  PointSet clipped;
  clipped.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != reference_point.size())
      throw std::invalid_argument("hypervolume: point arity does not match reference");
    Point q = p;
    for (std::size_t o = 0; o < q.size(); ++o) q[o] = std::min(q[o], reference_point[o]);
    clipped.push_back(std::move(q));
  }
  return wfg_hv(minimal_points(std::move(clipped)), reference_point);
}

double hypervolume(const Front& normalized_front) {
  if (normalized_front.points.empty()) return 0.0;
  const std::vector<double> ref(normalized_front.points.front().size(), 1.0);
  return hypervolume(normalized_front.points, ref);
}

double epsilon(const Front& front, const Front& reference_front) {
  if (front.points.empty() || reference_front.points.empty())
    throw std::invalid_argument("epsilon: fronts must be non-empty");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : reference_front.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : front.points) {
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t o = 0; o < r.size(); ++o) shift = std::max(shift, p[o] - r[o]);
      best = std::min(best, shift);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double igd(const Front& front, const Front& reference_front) {
  if (front.points.empty() || reference_front.points.empty())
    throw std::invalid_argument("igd: fronts must be non-empty");
  double sum = 0.0;
  for (const auto& r : reference_front.points) sum += nearest_distance(r, front.points);
  return sum / static_cast<double>(reference_front.points.size());
}

double spread(const Front& front, const Front& reference_front) {
  const std::size_t n = front.points.size();
  if (n < 2) return 1.0;
  if (reference_front.points.empty())
    throw std::invalid_argument("spread: reference front must be non-empty");

  std::vector<double> neighbour(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) best = std::min(best, distance(front.points[i], front.points[j]));
    neighbour[i] = best;
  }
  const double mean =
      std::accumulate(neighbour.begin(), neighbour.end(), 0.0) / static_cast<double>(n);

  // One extreme per objective: the reference point with the smallest value
  // there (ties broken lexicographically for determinism).
  const std::size_t arity = reference_front.points.front().size();
  double extremes_sum = 0.0;
  for (std::size_t o = 0; o < arity; ++o) {
    const Point* extreme = &reference_front.points.front();
    for (const auto& r : reference_front.points) {
      if (r[o] < (*extreme)[o] || (r[o] == (*extreme)[o] && r < *extreme)) extreme = &r;
    }
    extremes_sum += nearest_distance(*extreme, front.points);
  }

  double deviation = 0.0;
  for (double d : neighbour) deviation += std::abs(d - mean);

  const double denominator = extremes_sum + static_cast<double>(n) * mean;
  if (denominator <= 0.0) return 1.0;
  return (extremes_sum + deviation) / denominator;
}

double a12(const std::vector<double>& samples_a, const std::vector<double>& samples_b) {
  if (samples_a.empty() || samples_b.empty())
    throw std::invalid_argument("a12: samples must be non-empty");
  double score = 0.0;
  for (double a : samples_a) {
    for (double b : samples_b) {
      if (a > b)
        score += 1.0;
      else if (a == b)
        score += 0.5;
    }
  }
  return score / (static_cast<double>(samples_a.size()) * static_cast<double>(samples_b.size()));
}

ReferenceResult build_reference_front(const std::vector<Front>& fronts) {
  Front all;
  for (const Front& front : fronts) {
    for (std::size_t i = 0; i < front.points.size(); ++i) {
      all.points.push_back(front.points[i]);
      all.configs.push_back(i < front.configs.size() ? front.configs[i] : std::string());
    }
  }
  if (all.points.empty()) throw std::invalid_argument("build_reference_front: no points");
  const std::size_t arity = all.points.front().size();
  for (const auto& p : all.points)
    if (p.size() != arity)
      throw std::invalid_argument("build_reference_front: mixed point arities");

  ReferenceResult result;
  result.bounds.min = all.points.front();
  result.bounds.max = all.points.front();
  for (const auto& p : all.points) {
    for (std::size_t o = 0; o < arity; ++o) {
      result.bounds.min[o] = std::min(result.bounds.min[o], p[o]);
      result.bounds.max[o] = std::max(result.bounds.max[o], p[o]);
    }
  }

  for (std::size_t i = 0; i < all.points.size(); ++i) {
    bool rejected = false;
    for (std::size_t j = 0; j < all.points.size() && !rejected; ++j) {
      if (j == i) continue;
      if (dominates_point(all.points[j], all.points[i])) rejected = true;
      if (j < i && all.points[j] == all.points[i]) rejected = true;
    }
    if (!rejected) {
      result.front.points.push_back(all.points[i]);
      result.front.configs.push_back(all.configs[i]);
    }
  }
  return result;
}

}  // namespace splbee
