#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "configuration.hpp"
#include "preprocess.hpp"
#include "rng.hpp"

namespace splbee {

// Iterative DPLL with two watched literals and chronological backtracking.
// Decisions follow a fixed variable order with default polarity false, so
// results are fully deterministic; a nonzero decision seed permutes the order
// once at construction. No clause learning: active clause sets after
// reduction are modest and determinism matters more than raw speed.
class SatSolver {
 public:
  // Clauses over variables 1..num_vars. An empty clause makes every solve
  // return UNSAT.
  SatSolver(int num_vars, const std::vector<std::vector<int>>& clauses,
            std::uint64_t decision_seed = 0);

  // Finds a total assignment satisfying all clauses and extending the
  // assumption literals, or nullopt. Index v of the result holds var v.
  std::optional<std::vector<std::uint8_t>> solve(std::span<const int> assumptions);

  int var_count() const { return num_vars_; }

 private:
  enum : signed char { kFalse = -1, kUndef = 0, kTrue = 1 };

  bool enqueue(int lit);
  bool propagate();
  void unassign_from(std::size_t trail_start);

  int num_vars_ = 0;
  bool contradiction_ = false;            // input contained an empty clause
  std::vector<std::vector<int>> clauses_;  // clause id -> literals (watches at [0], [1])
  std::vector<int> unit_facts_;            // input unit clauses
  std::vector<std::vector<int>> watchers_; // literal index -> clause ids
  std::vector<signed char> value_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  std::vector<int> decision_order_;
};

// Number of clauses with no literal satisfied by the configuration.
std::int64_t count_violations(const Configuration& config,
                              const std::vector<std::vector<int>>& clauses);

enum class RepairMode { Full, Bounded, Off };

// Turns an arbitrary decoded configuration into a valid product, the SAT
// solver acting as the repair engine: features of violated clauses are made
// indeterminate in growing random batches while everything else is assumed
// at its current value, until the solver completes the assignment.
class Repairer {
 public:
  explicit Repairer(const ReducedModel& reduced, std::uint64_t decision_seed = 0);

  // mode Full loops until valid (throws UnsatError if the clause set is
  // unsatisfiable, which preprocessing rules out); Bounded gives up after
  // max_rounds solver calls and returns the best configuration seen; Off
  // returns the input unchanged. Constant features are never touched.
  Configuration repair(Configuration config, RngStream& rng, RepairMode mode,
                       int max_rounds = 0);

  std::int64_t active_violations(const Configuration& config) const;

 private:
  const ReducedModel* reduced_;
  SatSolver solver_;                       // over free-slot vars 1..free_count
  std::vector<std::vector<int>> dense_clauses_;
};

}  // namespace splbee
