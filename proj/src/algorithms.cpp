#include "mtmb/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mtmb/errors.hpp"

namespace mtmb {

namespace {

/// The single evaluation choke point: every algorithm funnels each of its B
/// evaluations through here, which keeps budget accounting and snapshot
/// reporting uniform.
class EvaluationLoop {
public:
    EvaluationLoop(const TaskDomain& domain, const ResolvedBudget& budget,
                   const SnapshotSink& sink)
        : domain_(domain), budget_(budget), sink_(sink),
          archive_(domain.task_count()) {}

    InsertOutcome evaluate_and_insert(TaskId task, Command command) {
        Evaluation e = domain_.evaluate(task, command);
        archive_.note_evaluation();
        const InsertOutcome outcome =
            archive_.insert(task, Elite{std::move(command), std::move(e.behavior), e.fitness});
        const std::uint64_t done = archive_.eval_count();
        if (sink_ && (done % budget_.snapshot_every == 0 || done == budget_.B))
            sink_(archive_, done);
        return outcome;
    }

    std::uint64_t evaluations() const { return archive_.eval_count(); }
    std::uint64_t remaining() const { return budget_.B - archive_.eval_count(); }
    Archive& archive() { return archive_; }
    Archive take() && { return std::move(archive_); }

private:
    const TaskDomain& domain_;
    const ResolvedBudget& budget_;
    const SnapshotSink& sink_;
    Archive archive_;
};

Command uniform_command(const TaskDomain& domain, RandomStream& rng) {
    const std::span<const Interval> bounds = domain.bounds();
    Command c(domain.dimension());
    for (std::size_t d = 0; d < c.size(); ++d)
        c[d] = rng.uniform(bounds[d].lo, bounds[d].hi);
    return c;
}

Command bred_command(const Command& parent_a, const Command& parent_b, const TaskDomain& domain,
                     const VariationConfig& var_cfg, RandomStream& rng) {
    return mutate_gaussian(crossover_uniform(parent_a, parent_b, var_cfg, rng), domain.bounds(),
                           var_cfg, rng);
}

std::vector<TaskId> shuffled_tasks(std::size_t n, RandomStream& rng) {
    std::vector<TaskId> order(n);
    std::iota(order.begin(), order.end(), TaskId{0});
    rng.shuffle(order);
    return order;
}

std::size_t per_task_budget(const TaskDomain& domain, const ResolvedBudget& budget) {
    const std::size_t p = budget.B / domain.task_count();
    if (p == 0) {
        std::ostringstream os;
        os << "budget.B: per-task budget floor(B/n) is zero (B=" << budget.B
           << ", n=" << domain.task_count() << ")";
        throw ConfigError(os.str());
    }
    return p;
}

void spend_on_random_pairs(EvaluationLoop& loop, const TaskDomain& domain, RandomStream& rng,
                           std::size_t evaluations) {
    for (std::size_t i = 0; i < evaluations; ++i) {
        const TaskId task = rng.index(domain.task_count());
        loop.evaluate_and_insert(task, uniform_command(domain, rng));
    }
}

/// Per-dimension lattice counts by balanced greedy growth: start at one
/// point per dimension and keep incrementing the currently smallest count
/// while the total stays within the per-task budget.
std::vector<std::size_t> balanced_grid_counts(std::size_t dims, std::size_t per_task) {
    std::vector<std::size_t> counts(dims, 1);
    for (;;) {
        auto smallest = std::min_element(counts.begin(), counts.end());
        std::size_t product = *smallest + 1;
        for (auto it = counts.begin(); it != counts.end(); ++it)
            if (it != smallest)
                product *= *it;
        if (product > per_task)
            return counts;
        ++*smallest;
    }
}

double lattice_coordinate(const Interval& bounds, std::size_t index, std::size_t count) {
    if (count == 1)
        return 0.5 * (bounds.lo + bounds.hi);
    const double t = static_cast<double>(index) / static_cast<double>(count - 1);
    return bounds.lo + t * (bounds.hi - bounds.lo);
}

} // namespace

ResolvedBudget resolve_budget(const BudgetConfig& budget, std::size_t n_tasks) {
    if (n_tasks == 0)
        throw ConfigError("budget: domain has no tasks");
    ResolvedBudget r;
    r.B = budget.B;
    r.init_target_elites = budget.init_target_elites == 0 ? n_tasks : budget.init_target_elites;
    r.init_cap = budget.init_cap == 0 ? budget.B / 2 : budget.init_cap;
    r.snapshot_every = budget.snapshot_every == 0 ? budget.B : budget.snapshot_every;
    if (r.B == 0)
        throw ConfigError("budget.B: must be > 0");
    if (r.init_target_elites > r.init_cap)
        throw ConfigError("budget.init_target_elites: must not exceed budget.init_cap");
    if (r.init_cap >= r.B)
        throw ConfigError("budget.init_cap: must be below budget.B");
    return r;
}

Archive mtmb_map_elites(const TaskDomain& domain, const BudgetConfig& budget,
                        const VariationConfig& var_cfg, std::uint64_t seed,
                        const SnapshotSink& sink, RunStats* stats) {
    validate(var_cfg);
    const ResolvedBudget resolved = resolve_budget(budget, domain.task_count());
    EvaluationLoop loop(domain, resolved, sink);
    RandomStream init_rng = derive_stream(seed, "init");
    RandomStream select_rng = derive_stream(seed, "selection");
    RandomStream vary_rng = derive_stream(seed, "variation");

    while (loop.archive().total_elites() < resolved.init_target_elites &&
           loop.evaluations() < resolved.init_cap) {
        const TaskId task = init_rng.index(domain.task_count());
        loop.evaluate_and_insert(task, uniform_command(domain, init_rng));
    }
    if (stats != nullptr)
        stats->init_evaluations = loop.evaluations();

    while (loop.remaining() > 0) {
        const auto parent_a = loop.archive().random_elite_of_random_task(select_rng);
        const auto parent_b = loop.archive().random_elite_of_random_task(select_rng);
        if (!parent_a || !parent_b)
            throw std::logic_error("mtmb: archive empty after initialization");
        Command child = bred_command(parent_a->second.command, parent_b->second.command, domain,
                                     var_cfg, vary_rng);
        const TaskId target = select_rng.index(domain.task_count());
        loop.evaluate_and_insert(target, std::move(child));
    }
    return std::move(loop).take();
}

Archive random_search(const TaskDomain& domain, const BudgetConfig& budget, std::uint64_t seed,
                      const SnapshotSink& sink) {
    const ResolvedBudget resolved = resolve_budget(budget, domain.task_count());
    EvaluationLoop loop(domain, resolved, sink);
    RandomStream init_rng = derive_stream(seed, "init");
    spend_on_random_pairs(loop, domain, init_rng, resolved.B);
    return std::move(loop).take();
}

Archive grid_search(const TaskDomain& domain, const BudgetConfig& budget, std::uint64_t seed,
                    const SnapshotSink& sink) {
    const ResolvedBudget resolved = resolve_budget(budget, domain.task_count());
    const std::size_t per_task = per_task_budget(domain, resolved);
    EvaluationLoop loop(domain, resolved, sink);
    RandomStream init_rng = derive_stream(seed, "init");
    RandomStream order_rng = derive_stream(seed, "task-order");
    const std::span<const Interval> bounds = domain.bounds();

    for (TaskId task : shuffled_tasks(domain.task_count(), order_rng)) {
        const std::vector<std::size_t> dims = domain.active_dims(task);
        const std::vector<std::size_t> counts = balanced_grid_counts(dims.size(), per_task);
        const std::size_t lattice_total =
            std::accumulate(counts.begin(), counts.end(), std::size_t{1},
                            std::multiplies<>());

        Command c(domain.dimension());
        for (std::size_t d = 0; d < c.size(); ++d)
            c[d] = 0.5 * (bounds[d].lo + bounds[d].hi);
        std::vector<std::size_t> odo(dims.size(), 0);
        for (std::size_t step = 0; step < lattice_total; ++step) {
            for (std::size_t k = 0; k < dims.size(); ++k)
                c[dims[k]] = lattice_coordinate(bounds[dims[k]], odo[k], counts[k]);
            loop.evaluate_and_insert(task, c);
            for (std::size_t k = dims.size(); k-- > 0;) {
                if (++odo[k] < counts[k])
                    break;
                odo[k] = 0;
            }
        }
        for (std::size_t i = lattice_total; i < per_task; ++i)
            loop.evaluate_and_insert(task, uniform_command(domain, init_rng));
    }
    spend_on_random_pairs(loop, domain, init_rng, loop.remaining());
    return std::move(loop).take();
}

Archive taskwise_map_elites(const TaskDomain& domain, const BudgetConfig& budget,
                            const VariationConfig& var_cfg, std::uint64_t seed,
                            const SnapshotSink& sink) {
    validate(var_cfg);
    const ResolvedBudget resolved = resolve_budget(budget, domain.task_count());
    const std::size_t per_task = per_task_budget(domain, resolved);
    EvaluationLoop loop(domain, resolved, sink);
    RandomStream init_rng = derive_stream(seed, "init");
    RandomStream select_rng = derive_stream(seed, "selection");
    RandomStream vary_rng = derive_stream(seed, "variation");
    RandomStream order_rng = derive_stream(seed, "task-order");

    const std::size_t init_target = std::min<std::size_t>(10, per_task / 5);
    for (TaskId task : shuffled_tasks(domain.task_count(), order_rng)) {
        std::size_t spent = 0;
        while (loop.archive().elite_count(task) < init_target && spent < per_task / 2) {
            loop.evaluate_and_insert(task, uniform_command(domain, init_rng));
            ++spent;
        }
        while (spent < per_task) {
            const auto parent_a = loop.archive().random_elite_of_task(task, select_rng);
            const auto parent_b = loop.archive().random_elite_of_task(task, select_rng);
            if (parent_a && parent_b)
                loop.evaluate_and_insert(
                    task, bred_command(parent_a->command, parent_b->command, domain, var_cfg,
                                       vary_rng));
            else // tiny per-task budgets can reach here with no elites yet
                loop.evaluate_and_insert(task, uniform_command(domain, init_rng));
            ++spent;
        }
    }
    spend_on_random_pairs(loop, domain, init_rng, loop.remaining());
    return std::move(loop).take();
}

AlgorithmKind parse_algorithm(const std::string& name) {
    if (name == "mtmb")
        return AlgorithmKind::Mtmb;
    if (name == "random")
        return AlgorithmKind::Random;
    if (name == "grid")
        return AlgorithmKind::Grid;
    if (name == "taskwise")
        return AlgorithmKind::Taskwise;
    throw ConfigError("algorithm: unknown value \"" + name +
                      "\" (expected mtmb, random, grid, or taskwise)");
}

std::string algorithm_name(AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Mtmb:
        return "mtmb";
    case AlgorithmKind::Random:
        return "random";
    case AlgorithmKind::Grid:
        return "grid";
    case AlgorithmKind::Taskwise:
        return "taskwise";
    }
    throw std::logic_error("algorithm_name: bad kind");
}

Archive run_algorithm(AlgorithmKind kind, const TaskDomain& domain, const BudgetConfig& budget,
                      const VariationConfig& var_cfg, std::uint64_t seed,
                      const SnapshotSink& sink, RunStats* stats) {
    switch (kind) {
    case AlgorithmKind::Mtmb:
        return mtmb_map_elites(domain, budget, var_cfg, seed, sink, stats);
    case AlgorithmKind::Random:
        return random_search(domain, budget, seed, sink);
    case AlgorithmKind::Grid:
        return grid_search(domain, budget, seed, sink);
    case AlgorithmKind::Taskwise:
        return taskwise_map_elites(domain, budget, var_cfg, seed, sink);
    }
    throw std::logic_error("run_algorithm: bad kind");
}

} // namespace mtmb
