#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "objectives.hpp"
#include "preprocess.hpp"
#include "rng.hpp"
#include "sat_engine.hpp"

namespace splbee {

// A point in the packed search space: one 32-bit word per 32 free features.
// Bit j of word w maps to free_features[32*w + j]; surplus high bits of the
// last word stay zero.
struct Position {
  std::vector<std::uint32_t> words;
  bool operator==(const Position&) const = default;
};

std::uint32_t last_word_mask(int free_count);
void mask_surplus_bits(Position& position, int free_count);

Configuration decode_position(const Position& position, const ReducedModel& reduced);
Position encode_position(const Configuration& config, const ReducedModel& reduced);
Position random_position(int word_count, int free_count, RngStream& rng);

enum class Role { Forager, Onlooker, Scout };
enum class MoveSemantics { WordArith, BitwiseProb };

struct Bee {
  Position position;
  Configuration config;
  ObjectiveVector objectives;
  Role role = Role::Onlooker;
};

struct ArchiveEntry {
  Configuration config;
  ObjectiveVector objectives;
  std::int64_t group = 0;
  std::int64_t rank = 1;
};

struct RunParams {
  int population = 3000;
  double scout_fraction = 0.02;
  double leader_weight = 2.5;
  double elite_weight = 2.12;
  int archive_capacity = 5000;
  int sections = 10;              // grid sections per objective, <= 254
  std::int64_t max_iterations = 100;
  double budget_seconds = 0.0;    // <= 0: no wall-clock bound
  std::uint64_t seed = 0;
  MoveSemantics move_semantics = MoveSemantics::WordArith;
  RepairMode repair_mode = RepairMode::Full;
  int repair_rounds = 10;         // solver-call budget for RepairMode::Bounded
  int workers = 0;                // 0: SPLBEE_WORKERS env, then hardware

  void validate() const;
};

struct InitResult {
  std::vector<Bee> bees;
  std::vector<ArchiveEntry> archive;
};

// N bees at uniformly random positions, each decoded, repaired and
// evaluated; the archive is the non-dominated subset of their objective
// vectors (no capacity cap yet, the run loop applies it).
InitResult initialize(const RunParams& params, const ReducedModel& reduced,
                      const AttributeTable& attrs);

// Scouts are ps*N bees (rounded to nearest, at least 1 when ps > 0) chosen
// uniformly at random; experienced foragers are the remaining bees whose
// objective vector currently sits in the archive; everyone else onlooks.
void partition_roles(std::vector<Bee>& bees, const std::vector<ArchiveEntry>& archive,
                     double scout_fraction, RngStream& rng);

// Samples an archive entry with probability proportional to its rank
// (larger in less crowded, better regions).
const ArchiveEntry& select_leader(const std::vector<ArchiveEntry>& archive, RngStream& rng);

// One word of the guided update: from + weight*r*(toward - from), rounded to
// nearest and clamped to the 32-bit range.
std::uint32_t word_arith_step(std::uint32_t from, std::uint32_t toward, double weight, double r);

// The guided movement shared by foragers (target = leader, weight = w_l) and
// onlookers (target = elite, weight = w_e). One uniform r per word; in
// bitwise-prob mode each bit copies the target's bit with probability
// min(1, weight*r).
Position move_guided(const Position& bee, const Position& target, double weight,
                     MoveSemantics semantics, int free_count, RngStream& rng);

// Scout jump: uniform per-word integer inside the envelope of two archive
// positions.
Position move_scout(const Position& bound_a, const Position& bound_b, int free_count,
                    RngStream& rng);

// archive := non-dominated subset of archive ∪ bees, duplicate objective
// vectors collapsed to the first occurrence. The input archive must itself be
// mutually non-dominated.
void update_archive(std::vector<ArchiveEntry>& archive, const std::vector<Bee>& bees);

// Recomputes the per-entry grid cell (group) and quality weight (rank) over
// the given set: per objective, bin = floor(sections*(v-min)/(max-min)) with
// bin = 0 on a degenerate range, clamped to [0, sections];
// group = a + 255*(b + 255*(c + 255*(d + 255*e)));
// rank  = (sections+1-a)(sections+1-b)(sections+1-c)(sections+1-d)(sections+1-e).
void annotate_group_rank(std::vector<ArchiveEntry>& archive, int sections);

// Thins a crowded archive: entries are grouped by grid cell, each group keeps
// at most rank members chosen uniformly at random, and if the survivors still
// exceed the capacity, members are removed uniformly at random from the
// largest surviving groups. No-op when the archive already fits.
void truncate_archive(std::vector<ArchiveEntry>& archive, int sections, int capacity,
                      RngStream& rng);

bool is_mutually_non_dominated(const std::vector<ArchiveEntry>& archive);

struct RunOutcome {
  std::vector<ArchiveEntry> front;
  std::int64_t iterations = 0;
  bool partial = false;  // budget expired before the first iteration
  double wall_seconds = 0.0;
};

using IterationObserver =
    std::function<void(std::int64_t iteration, const std::vector<ArchiveEntry>& archive)>;

// The full optimizer loop. Deterministic in (seed, params, model) regardless
// of worker count: every bee owns private random streams split from the
// master seed, and the wall-clock budget is only checked between iterations.
RunOutcome run(const RunParams& params, const ReducedModel& reduced, const AttributeTable& attrs,
               const IterationObserver& observer = {});

// Predicted parallel speedup of one iteration: (F+C+N) / ((F+C)/P + N).
// The iteration count cancels but is kept (and validated) for symmetry with
// the cost model.
double predict_speedup(double iterations, double population, double features,
                       double constraints, double processors);

// Worker resolution: explicit value, else SPLBEE_WORKERS, else hardware.
int resolve_workers(int requested);

}  // namespace splbee
