// algorithms.hpp — the multi-task multi-behavior search and its baselines.
//
// All four algorithms are budgeted evaluation loops over a TaskDomain
// producing an Archive: every evaluation passes through one choke point
// that bumps the archive's counter and reports periodic snapshots, so each
// run consumes exactly budget.B evaluations. Runs are pure functions of
// (domain, configs, seed); parallelize across runs, never within one.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mtmb/archive.hpp"
#include "mtmb/domain.hpp"
#include "mtmb/variation.hpp"

namespace mtmb {

struct BudgetConfig {
    std::size_t B = 0;
    std::size_t init_target_elites = 0; // 0: defaults to the task count
    std::size_t init_cap = 0;           // 0: defaults to B / 2
    std::size_t snapshot_every = 0;     // 0: only the final snapshot
};

/// BudgetConfig with the zero-means-default fields filled in for a concrete
/// domain; construction validates 0 < init_target_elites <= init_cap < B.
struct ResolvedBudget {
    std::size_t B = 0;
    std::size_t init_target_elites = 0;
    std::size_t init_cap = 0;
    std::size_t snapshot_every = 0;
};

ResolvedBudget resolve_budget(const BudgetConfig& budget, std::size_t n_tasks);

/// Called after evaluation multiples of snapshot_every and after the last.
using SnapshotSink = std::function<void(const Archive&, std::size_t evaluations)>;

/// Counters a run reports back besides the archive itself.
struct RunStats {
    std::size_t init_evaluations = 0; // realized initialization spend
};

/// Multi-task multi-behavior elite search. Initializes with uniform random
/// (task, command) pairs until the archive holds init_target_elites elites
/// or init_cap evaluations are spent, then runs steady state for the rest
/// of the budget: two parents drawn via random_elite_of_random_task,
/// uniform crossover plus Gaussian mutation, and the child is evaluated on
/// a target task drawn uniformly over all tasks.
Archive mtmb_map_elites(const TaskDomain& domain, const BudgetConfig& budget,
                        const VariationConfig& var_cfg, std::uint64_t seed,
                        const SnapshotSink& sink = nullptr, RunStats* stats = nullptr);

/// Uniform random (task, command) pairs for the whole budget.
Archive random_search(const TaskDomain& domain, const BudgetConfig& budget, std::uint64_t seed,
                      const SnapshotSink& sink = nullptr);

/// Per task (seed-randomized order), evaluates a fixed lattice spanning the
/// task's active dimensions: per-dimension counts grow greedily and
/// balanced while their product stays within the per-task budget
/// floor(B/n), points are evenly spaced endpoints included (a count of one
/// sits at the midpoint), inactive dimensions sit at the midpoint. Budget
/// not covered by the lattice is spent on uniform random commands.
Archive grid_search(const TaskDomain& domain, const BudgetConfig& budget, std::uint64_t seed,
                    const SnapshotSink& sink = nullptr);

/// Independent per-task elite search (seed-randomized task order), each
/// task getting floor(B/n) evaluations: uniform initialization until the
/// task holds min(10, P/5) elites or P/2 evaluations are spent, then
/// within-task steady state. Leftover budget goes to uniform random pairs.
Archive taskwise_map_elites(const TaskDomain& domain, const BudgetConfig& budget,
                            const VariationConfig& var_cfg, std::uint64_t seed,
                            const SnapshotSink& sink = nullptr);

enum class AlgorithmKind { Mtmb, Random, Grid, Taskwise };

/// Parse the config value for `algorithm`; unknown names raise ConfigError.
AlgorithmKind parse_algorithm(const std::string& name);
std::string algorithm_name(AlgorithmKind kind);

/// Dispatch on kind; var_cfg is ignored by the two unguided baselines.
Archive run_algorithm(AlgorithmKind kind, const TaskDomain& domain, const BudgetConfig& budget,
                      const VariationConfig& var_cfg, std::uint64_t seed,
                      const SnapshotSink& sink = nullptr, RunStats* stats = nullptr);

} // namespace mtmb
