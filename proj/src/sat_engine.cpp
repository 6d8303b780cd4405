#include "sat_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "errors.hpp"

namespace splbee {

namespace {

// Maps literal l to a dense index: 2*(|l|-1) + sign bit.
std::size_t lit_index(int lit) {
  return 2 * static_cast<std::size_t>(std::abs(lit) - 1) + (lit < 0 ? 1 : 0);
}

}  // namespace

SatSolver::SatSolver(int num_vars, const std::vector<std::vector<int>>& clauses,
                     std::uint64_t decision_seed)
    : num_vars_(num_vars) {
  value_.assign(num_vars_ + 1, kUndef);
  watchers_.assign(2 * static_cast<std::size_t>(num_vars_), {});

  for (const auto& clause : clauses) {
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > num_vars_)
        throw std::invalid_argument("SatSolver: literal out of range");
    if (clause.empty()) {
      contradiction_ = true;
      continue;
    }
    if (clause.size() == 1) {
      unit_facts_.push_back(clause[0]);
      continue;
    }
    const int id = static_cast<int>(clauses_.size());
    clauses_.push_back(clause);
    watchers_[lit_index(clause[0])].push_back(id);
    watchers_[lit_index(clause[1])].push_back(id);
  }

  decision_order_.resize(num_vars_);
  for (int v = 1; v <= num_vars_; ++v) decision_order_[v - 1] = v;
  if (decision_seed != 0) {
    RngStream rng(decision_seed);
    for (std::size_t i = decision_order_.size(); i > 1; --i)
      std::swap(decision_order_[i - 1], decision_order_[rng.below(i)]);
  }
}

bool SatSolver::enqueue(int lit) {
  const int var = std::abs(lit);
  const signed char want = lit > 0 ? kTrue : kFalse;
  if (value_[var] == want) return true;
  if (value_[var] != kUndef) return false;
  value_[var] = want;
  trail_.push_back(lit);
  return true;
}

bool SatSolver::propagate() {
  auto lit_value = [&](int lit) -> signed char {
    const signed char v = value_[std::abs(lit)];
    return lit > 0 ? v : static_cast<signed char>(-v);
  };

  while (qhead_ < trail_.size()) {
    const int falsified = -trail_[qhead_++];
    auto& watch_list = watchers_[lit_index(falsified)];
    std::size_t kept = 0;
    for (std::size_t i = 0; i < watch_list.size(); ++i) {
      const int id = watch_list[i];
      auto& clause = clauses_[id];
      if (clause[0] == falsified) std::swap(clause[0], clause[1]);
      if (lit_value(clause[0]) == kTrue) {
        watch_list[kept++] = id;
        continue;
      }
      bool rewatched = false;
      for (std::size_t k = 2; k < clause.size(); ++k) {
        if (lit_value(clause[k]) != kFalse) {
          std::swap(clause[1], clause[k]);
          watchers_[lit_index(clause[1])].push_back(id);
          rewatched = true;
          break;
        }
      }
      if (rewatched) continue;
      watch_list[kept++] = id;
      if (lit_value(clause[0]) == kFalse) {
        for (++i; i < watch_list.size(); ++i) watch_list[kept++] = watch_list[i];
        watch_list.resize(kept);
        return false;
      }
      enqueue(clause[0]);  // unit: cannot fail, clause[0] was undefined
    }
    watch_list.resize(kept);
  }
  return true;
}

void SatSolver::unassign_from(std::size_t trail_start) {
  for (std::size_t t = trail_.size(); t > trail_start; --t)
    value_[std::abs(trail_[t - 1])] = kUndef;
  trail_.resize(trail_start);
  qhead_ = trail_start;
}

std::optional<std::vector<std::uint8_t>> SatSolver::solve(std::span<const int> assumptions) {
  if (contradiction_) return std::nullopt;

  std::fill(value_.begin(), value_.end(), static_cast<signed char>(kUndef));
  trail_.clear();
  qhead_ = 0;

  for (int lit : unit_facts_)
    if (!enqueue(lit)) return std::nullopt;
  for (int lit : assumptions)
    if (!enqueue(lit)) return std::nullopt;
  if (!propagate()) return std::nullopt;

  struct Decision {
    int var;
    std::size_t trail_pos;
    std::size_t order_pos;
    bool flipped;
  };
  std::vector<Decision> decisions;
  std::size_t order_pos = 0;

  for (;;) {
    while (order_pos < decision_order_.size() && value_[decision_order_[order_pos]] != kUndef)
      ++order_pos;
    if (order_pos == decision_order_.size()) {
      std::vector<std::uint8_t> result(num_vars_ + 1, 0);
      for (int v = 1; v <= num_vars_; ++v) result[v] = value_[v] == kTrue ? 1 : 0;
      return result;
    }
    const int var = decision_order_[order_pos];
    decisions.push_back({var, trail_.size(), order_pos, false});
    enqueue(-var);  // default polarity: deselect

    while (!propagate()) {
      while (!decisions.empty() && decisions.back().flipped) {
        unassign_from(decisions.back().trail_pos);
        decisions.pop_back();
      }
      if (decisions.empty()) return std::nullopt;
      Decision& d = decisions.back();
      unassign_from(d.trail_pos);
      d.flipped = true;
      order_pos = d.order_pos;
      enqueue(d.var);
    }
  }
}

std::int64_t count_violations(const Configuration& config,
                              const std::vector<std::vector<int>>& clauses) {
  std::int64_t violations = 0;
  for (const auto& clause : clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      if (lit > 0 ? config.selected(lit) : !config.selected(-lit)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) ++violations;
  }
  return violations;
}

Repairer::Repairer(const ReducedModel& reduced, std::uint64_t decision_seed)
    : reduced_(&reduced),
      solver_(reduced.free_count(),
              [&] {
                std::vector<std::vector<int>> dense;
                dense.reserve(reduced.active_clauses.size());
                for (const auto& clause : reduced.active_clauses) {
                  std::vector<int> mapped;
                  mapped.reserve(clause.size());
                  for (int lit : clause) {
                    const int slot = reduced.free_slot[std::abs(lit)] + 1;
                    mapped.push_back(lit > 0 ? slot : -slot);
                  }
                  dense.push_back(std::move(mapped));
                }
                return dense;
              }(),
              decision_seed) {}

std::int64_t Repairer::active_violations(const Configuration& config) const {
  return count_violations(config, reduced_->active_clauses);
}

Configuration Repairer::repair(Configuration config, RngStream& rng, RepairMode mode,
                               int max_rounds) {
  if (mode == RepairMode::Off) return config;

  const int nfree = reduced_->free_count();
  std::vector<std::uint8_t> in_pool(nfree, 0);
  std::vector<int> pool;  // free-slot indices eligible to become indeterminate
  for (const auto& clause : reduced_->active_clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      if (lit > 0 ? config.selected(lit) : !config.selected(-lit)) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    for (int lit : clause) {
      const int slot = reduced_->free_slot[std::abs(lit)];
      if (!in_pool[slot]) {
        in_pool[slot] = 1;
        pool.push_back(slot);
      }
    }
  }
  if (pool.empty()) return config;  // already valid: zero solver calls
  std::sort(pool.begin(), pool.end());

  // 10% of the violated-clause variables to start, doubling on every UNSAT.
  std::size_t target = std::max<std::size_t>(1, (pool.size() + 9) / 10);
  std::vector<std::uint8_t> indeterminate(nfree, 0);
  std::size_t indeterminate_count = 0;
  bool widened_to_all = false;
  int rounds = 0;

  for (;;) {
    if (mode == RepairMode::Bounded && rounds >= max_rounds) return config;

    while (indeterminate_count < std::min<std::size_t>(target, nfree)) {
      if (pool.empty()) {
        // Locality exhausted: allow any free feature to move. Needed for
        // termination when the conflict reaches beyond the violated clauses.
        if (widened_to_all) break;
        widened_to_all = true;
        for (int s = 0; s < nfree; ++s)
          if (!indeterminate[s]) pool.push_back(s);
        continue;
      }
      const std::size_t j = rng.below(pool.size());
      const int slot = pool[j];
      pool[j] = pool.back();
      pool.pop_back();
      indeterminate[slot] = 1;
      ++indeterminate_count;
    }

    std::vector<int> assumptions;
    assumptions.reserve(nfree - indeterminate_count);
    for (int s = 0; s < nfree; ++s) {
      if (indeterminate[s]) continue;
      const int f = reduced_->free_features[s];
      assumptions.push_back(config.selected(f) ? s + 1 : -(s + 1));
    }

    const auto result = solver_.solve(assumptions);
    ++rounds;
    if (result) {
      for (int s = 0; s < nfree; ++s)
        config.set(reduced_->free_features[s], (*result)[s + 1] != 0);
      return config;
    }
    if (indeterminate_count == static_cast<std::size_t>(nfree)) {
      if (mode == RepairMode::Full) throw UnsatError("repair: clause set unsatisfiable");
      return config;
    }
    target = std::min<std::size_t>(nfree, target * 2);
  }
}

}  // namespace splbee
