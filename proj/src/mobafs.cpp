#include "mobafs.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"

namespace splbee {

std::uint32_t last_word_mask(int free_count) {
  const int rem = free_count % 32;
  return rem == 0 ? 0xffffffffu : (1u << rem) - 1u;
}

void mask_surplus_bits(Position& position, int free_count) {
  if (!position.words.empty()) position.words.back() &= last_word_mask(free_count);
}

Configuration decode_position(const Position& position, const ReducedModel& reduced) {
  Configuration config = reduced.base_config();
  const auto& free = reduced.free_features;
  for (std::size_t s = 0; s < free.size(); ++s)
    if (position.words[s >> 5] & (1u << (s & 31))) config.set(free[s], true);
  return config;
}

Position encode_position(const Configuration& config, const ReducedModel& reduced) {
  Position position;
  position.words.assign(reduced_dimension(reduced), 0);
  const auto& free = reduced.free_features;
  for (std::size_t s = 0; s < free.size(); ++s)
    if (config.selected(free[s])) position.words[s >> 5] |= 1u << (s & 31);
  return position;
}

Position random_position(int word_count, int free_count, RngStream& rng) {
  Position position;
  position.words.resize(word_count);
  for (auto& word : position.words) word = rng.next_u32();
  mask_surplus_bits(position, free_count);
  return position;
}

void RunParams::validate() const {
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (!(scout_fraction > 0.0 && scout_fraction < 1.0))
    throw std::invalid_argument("scout fraction must be in (0, 1)");
  if (sections < 1 || sections > 254)
    throw std::invalid_argument("sections per objective must be in 1..254");
  if (archive_capacity < 1) throw std::invalid_argument("archive capacity must be >= 1");
  if (max_iterations < 0) throw std::invalid_argument("max iterations must be >= 0");
  if (repair_mode == RepairMode::Bounded && repair_rounds < 1)
    throw std::invalid_argument("bounded repair needs at least one round");
}

namespace {

// Decode, repair and evaluate every bee; the parallel map of the run loop.
// Each bee's repair stream is derived from (seed, iteration, bee index), so
// the outcome does not depend on how bees are distributed over workers.
// Correctness is counted over the active clauses, which equals the count
// over the original clause set because decoded configurations extend the
// constants (declined clauses are satisfied by them, and dropped literals
// are false).
void decode_repair_evaluate(std::vector<Bee>& bees, const ReducedModel& reduced,
                            const AttributeTable& attrs, const RunParams& params,
                            std::int64_t iteration, std::vector<Repairer>& repairers) {
  parallel_chunks(
      static_cast<std::int64_t>(bees.size()), static_cast<int>(repairers.size()),
      [&](int worker, std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
          Bee& bee = bees[i];
          bee.config = decode_position(bee.position, reduced);
          RngStream rng = RngStream::derive(params.seed, stream::kRepair,
                                            static_cast<std::uint64_t>(iteration),
                                            static_cast<std::uint64_t>(i));
          bee.config = repairers[worker].repair(std::move(bee.config), rng, params.repair_mode,
                                                params.repair_rounds);
          bee.position = encode_position(bee.config, reduced);
          bee.objectives = attribute_objectives(bee.config, attrs);
          bee.objectives.correctness = repairers[worker].active_violations(bee.config);
        }
      });
}

}  // namespace

InitResult initialize(const RunParams& params, const ReducedModel& reduced,
                      const AttributeTable& attrs) {
  InitResult result;
  result.bees.resize(params.population);
  const int word_count = reduced_dimension(reduced);
  for (std::size_t i = 0; i < result.bees.size(); ++i) {
    RngStream rng = RngStream::derive(params.seed, stream::kInitPosition, i);
    result.bees[i].position = random_position(word_count, reduced.free_count(), rng);
  }
  std::vector<Repairer> repairers;
  const int workers = resolve_workers(params.workers);
  repairers.reserve(workers);
  for (int w = 0; w < workers; ++w) repairers.emplace_back(reduced);
  decode_repair_evaluate(result.bees, reduced, attrs, params, 0, repairers);
  update_archive(result.archive, result.bees);
  annotate_group_rank(result.archive, params.sections);
  return result;
}

void partition_roles(std::vector<Bee>& bees, const std::vector<ArchiveEntry>& archive,
                     double scout_fraction, RngStream& rng) {
  const int n = static_cast<int>(bees.size());
  int scouts = 0;
  if (scout_fraction > 0.0)
    scouts = std::min<int>(n, std::max<long long>(1, std::llround(scout_fraction * n)));

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < scouts; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
  }

  std::set<std::array<double, 5>> in_archive;
  for (const auto& entry : archive) in_archive.insert(entry.objectives.as_array());

  for (auto& bee : bees)
    bee.role = in_archive.count(bee.objectives.as_array()) ? Role::Forager : Role::Onlooker;
  for (int i = 0; i < scouts; ++i) bees[order[i]].role = Role::Scout;
}

const ArchiveEntry& select_leader(const std::vector<ArchiveEntry>& archive, RngStream& rng) {
  std::uint64_t total = 0;
  for (const auto& entry : archive) total += static_cast<std::uint64_t>(entry.rank);
  std::uint64_t draw = rng.below(total);
  for (const auto& entry : archive) {
    const auto weight = static_cast<std::uint64_t>(entry.rank);
    if (draw < weight) return entry;
    draw -= weight;
  }
  return archive.back();
}

std::uint32_t word_arith_step(std::uint32_t from, std::uint32_t toward, double weight, double r) {
  const double value = static_cast<double>(from) +
                       weight * r * (static_cast<double>(toward) - static_cast<double>(from));
  long long rounded = std::llround(value);
  if (rounded < 0) rounded = 0;
  if (rounded > 0xffffffffLL) rounded = 0xffffffffLL;
  return static_cast<std::uint32_t>(rounded);
}

Position move_guided(const Position& bee, const Position& target, double weight,
                     MoveSemantics semantics, int free_count, RngStream& rng) {
  Position next = bee;
  for (std::size_t k = 0; k < next.words.size(); ++k) {
    const double r = rng.next_double();
    if (semantics == MoveSemantics::WordArith) {
      next.words[k] = word_arith_step(bee.words[k], target.words[k], weight, r);
    } else {
      const double p = std::min(1.0, weight * r);
      std::uint32_t word = bee.words[k];
      for (int b = 0; b < 32; ++b) {
        if (rng.next_double() < p) {
          const std::uint32_t bit = 1u << b;
          word = (word & ~bit) | (target.words[k] & bit);
        }
      }
      next.words[k] = word;
    }
  }
  mask_surplus_bits(next, free_count);
  return next;
}

Position move_scout(const Position& bound_a, const Position& bound_b, int free_count,
                    RngStream& rng) {
  Position next;
  next.words.resize(bound_a.words.size());
  for (std::size_t k = 0; k < next.words.size(); ++k) {
    const std::uint32_t lo = std::min(bound_a.words[k], bound_b.words[k]);
    const std::uint32_t hi = std::max(bound_a.words[k], bound_b.words[k]);
    next.words[k] = lo + static_cast<std::uint32_t>(
                             rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  mask_surplus_bits(next, free_count);
  return next;
}

void update_archive(std::vector<ArchiveEntry>& archive, const std::vector<Bee>& bees) {
  for (const Bee& bee : bees) {
    bool rejected = false;
    for (const auto& entry : archive) {
      if (entry.objectives == bee.objectives || dominates(entry.objectives, bee.objectives)) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(archive, [&](const ArchiveEntry& entry) {
      return dominates(bee.objectives, entry.objectives);
    });
    archive.push_back({bee.config, bee.objectives, 0, 1});
  }
}

void annotate_group_rank(std::vector<ArchiveEntry>& archive, int sections) {
  if (archive.empty()) return;
  std::array<double, 5> lo = archive.front().objectives.as_array();
  std::array<double, 5> hi = lo;
  for (const auto& entry : archive) {
    const auto v = entry.objectives.as_array();
    for (int o = 0; o < 5; ++o) {
      lo[o] = std::min(lo[o], v[o]);
      hi[o] = std::max(hi[o], v[o]);
    }
  }
  for (auto& entry : archive) {
    const auto v = entry.objectives.as_array();
    std::int64_t group = 0;
    std::int64_t rank = 1;
    std::int64_t scale = 1;
    for (int o = 0; o < 5; ++o) {
      std::int64_t bin = 0;
      if (hi[o] > lo[o]) {
        bin = static_cast<std::int64_t>(
            std::floor(sections * (v[o] - lo[o]) / (hi[o] - lo[o])));
        bin = std::clamp<std::int64_t>(bin, 0, sections);
      }
      group += scale * bin;
      scale *= 255;
      rank *= sections + 1 - bin;
    }
    entry.group = group;
    entry.rank = rank;
  }
}

void truncate_archive(std::vector<ArchiveEntry>& archive, int sections, int capacity,
                      RngStream& rng) {
  if (static_cast<int>(archive.size()) <= capacity) return;

  annotate_group_rank(archive, sections);

  std::map<std::int64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < archive.size(); ++i) groups[archive[i].group].push_back(i);

  // Per group, keep at most `rank` members chosen uniformly at random.
  std::int64_t kept_total = 0;
  for (auto& [group, members] : groups) {
    const auto rank = static_cast<std::size_t>(archive[members.front()].rank);
    if (members.size() > rank) {
      for (std::size_t i = 0; i < rank; ++i) {
        const std::size_t j = i + rng.below(members.size() - i);
        std::swap(members[i], members[j]);
      }
      members.resize(rank);
    }
    kept_total += static_cast<std::int64_t>(members.size());
  }

  // Rank-based keeps may still exceed the hard cap; shave the largest
  // surviving groups (smallest group id on ties) one random member at a time.
  while (kept_total > capacity) {
    auto largest = groups.begin();
    for (auto it = groups.begin(); it != groups.end(); ++it)
      if (it->second.size() > largest->second.size()) largest = it;
    auto& members = largest->second;
    const std::size_t j = rng.below(members.size());
    members[j] = members.back();
    members.pop_back();
    --kept_total;
  }

  std::vector<std::size_t> kept;
  kept.reserve(kept_total);
  for (const auto& [group, members] : groups) kept.insert(kept.end(), members.begin(), members.end());
  std::sort(kept.begin(), kept.end());

  std::vector<ArchiveEntry> result;
  result.reserve(kept.size());
  for (std::size_t i : kept) result.push_back(std::move(archive[i]));
  archive = std::move(result);
}

bool is_mutually_non_dominated(const std::vector<ArchiveEntry>& archive) {
  for (std::size_t i = 0; i < archive.size(); ++i)
    for (std::size_t j = 0; j < archive.size(); ++j)
      if (i != j && dominates(archive[i].objectives, archive[j].objectives)) return false;
  return true;
}

RunOutcome run(const RunParams& params, const ReducedModel& reduced, const AttributeTable& attrs,
               const IterationObserver& observer) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  RunOutcome outcome;

  // Fully determined model: the constants are the one valid product.
  if (reduced.free_count() == 0) {
    ArchiveEntry entry;
    entry.config = reduced.base_config();
    entry.objectives = attribute_objectives(entry.config, attrs);
    entry.objectives.correctness = count_violations(entry.config, reduced.base.clauses);
    outcome.front.push_back(std::move(entry));
    annotate_group_rank(outcome.front, params.sections);
    outcome.wall_seconds = elapsed();
    return outcome;
  }

  const int workers = resolve_workers(params.workers);
  std::vector<Repairer> repairers;
  repairers.reserve(workers);
  for (int w = 0; w < workers; ++w) repairers.emplace_back(reduced);

  const int word_count = reduced_dimension(reduced);
  std::vector<Bee> bees(params.population);
  for (std::size_t i = 0; i < bees.size(); ++i) {
    RngStream rng = RngStream::derive(params.seed, stream::kInitPosition, i);
    bees[i].position = random_position(word_count, reduced.free_count(), rng);
  }
  decode_repair_evaluate(bees, reduced, attrs, params, 0, repairers);

  std::vector<ArchiveEntry> archive;
  update_archive(archive, bees);
  {
    RngStream rng = RngStream::derive(params.seed, stream::kTruncate, 0);
    truncate_archive(archive, params.sections, params.archive_capacity, rng);
  }
  annotate_group_rank(archive, params.sections);
  if (observer) observer(0, archive);

  const bool budgeted = params.budget_seconds > 0.0;
  for (std::int64_t iter = 1; iter <= params.max_iterations; ++iter) {
    if (budgeted && elapsed() >= params.budget_seconds) {
      outcome.partial = outcome.iterations == 0;
      break;
    }

    RngStream roles_rng = RngStream::derive(params.seed, stream::kRoles,
                                            static_cast<std::uint64_t>(iter));
    partition_roles(bees, archive, params.scout_fraction, roles_rng);

    std::vector<std::size_t> foragers;
    for (std::size_t i = 0; i < bees.size(); ++i)
      if (bees[i].role == Role::Forager) foragers.push_back(i);

    // Movement runs on the main thread; all randomness comes from per-bee
    // streams keyed by (iteration, bee).
    std::vector<Position> moved(bees.size());
    for (std::size_t i = 0; i < bees.size(); ++i) {
      RngStream rng = RngStream::derive(params.seed, stream::kMovement,
                                        static_cast<std::uint64_t>(iter),
                                        static_cast<std::uint64_t>(i));
      switch (bees[i].role) {
        case Role::Forager: {
          const ArchiveEntry& leader = select_leader(archive, rng);
          moved[i] = move_guided(bees[i].position, encode_position(leader.config, reduced),
                                 params.leader_weight, params.move_semantics,
                                 reduced.free_count(), rng);
          break;
        }
        case Role::Onlooker: {
          Position target;
          if (!foragers.empty()) {
            target = bees[foragers[rng.below(foragers.size())]].position;
          } else {
            target = encode_position(select_leader(archive, rng).config, reduced);
          }
          moved[i] = move_guided(bees[i].position, target, params.elite_weight,
                                 params.move_semantics, reduced.free_count(), rng);
          break;
        }
        case Role::Scout: {
          const ArchiveEntry& a = archive[rng.below(archive.size())];
          const ArchiveEntry& b = archive[rng.below(archive.size())];
          moved[i] = move_scout(encode_position(a.config, reduced),
                                encode_position(b.config, reduced), reduced.free_count(), rng);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < bees.size(); ++i) bees[i].position = std::move(moved[i]);

    decode_repair_evaluate(bees, reduced, attrs, params, iter, repairers);

    update_archive(archive, bees);
    RngStream trunc_rng = RngStream::derive(params.seed, stream::kTruncate,
                                            static_cast<std::uint64_t>(iter));
    truncate_archive(archive, params.sections, params.archive_capacity, trunc_rng);
    annotate_group_rank(archive, params.sections);
    assert(is_mutually_non_dominated(archive));

    outcome.iterations = iter;
    if (observer) observer(iter, archive);
  }

  outcome.front = std::move(archive);
  outcome.wall_seconds = elapsed();
  return outcome;
}

double predict_speedup(double iterations, double population, double features,
                       double constraints, double processors) {
  if (iterations <= 0 || population <= 0 || features <= 0 || constraints <= 0 || processors <= 0)
    throw std::invalid_argument("predict_speedup: all inputs must be positive");
  // The iteration factor cancels between the serial and parallel cost models.
  return (features + constraints + population) /
         ((features + constraints) / processors + population);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPLBEE_WORKERS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

}  // namespace splbee
