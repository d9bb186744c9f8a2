// archive.hpp — per-task, behavior-keyed elite store.
//
// The archive is the sole mutable state of every search algorithm here: a
// dense range of tasks, each holding at most one elite per behavior key.
// Insertion keeps the incumbent unless the challenger is strictly fitter.
// Iteration order is deterministic everywhere (ascending task id,
// lexicographic behavior key), so dumps and metrics are byte-stable.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "mtmb/rng.hpp"

namespace mtmb {

using TaskId = std::size_t;

/// Normalized command coordinates, length D for the whole domain.
using Command = std::vector<double>;

/// Discretized behavior: one cell index per behavior dimension. Length may
/// differ across tasks. The planar-arm domain uses -1 as a no-contact
/// sentinel; everything else is >= 0.
using BehaviorKey = std::vector<int>;

/// Absolute tolerance deciding whether an elite's fitness attains f_max.
/// Synthetic domains return f_max exactly on the solution plateau, so this
/// only guards float transport.
inline constexpr double kSolveEps = 1e-9;

struct Elite {
    Command command;
    BehaviorKey behavior;
    double fitness = 0.0;
};

enum class InsertOutcome { Added, Replaced, Rejected };

class Archive {
public:
    using CellMap = std::map<BehaviorKey, Elite>;

    explicit Archive(std::size_t n_tasks) : per_task_(n_tasks) {}

    std::size_t task_count() const { return per_task_.size(); }

    /// Store the elite at (task, elite.behavior). An empty cell always takes
    /// the elite; an occupied one is replaced only on strictly greater
    /// fitness (a tie keeps the incumbent). Does not touch eval_count.
    InsertOutcome insert(TaskId task, Elite elite);

    /// All elites of the task with fitness >= f_max - eps, ascending
    /// lexicographic behavior-key order.
    std::vector<Elite> solutions_of_task(TaskId task, double f_max, double eps) const;

    /// Size of solutions_of_task without materializing it.
    std::size_t solution_count(TaskId task, double f_max, double eps) const;

    /// Number of tasks holding at least one solution.
    std::size_t solved_task_count(double f_max, double eps) const;

    /// Uniform task among tasks with >= 1 elite, then uniform elite within
    /// it. Consumes exactly two draws when an elite exists, zero otherwise.
    std::optional<std::pair<TaskId, Elite>> random_elite_of_random_task(RandomStream& rng) const;

    /// Uniform elite within one task; one draw, or zero if the task is empty.
    std::optional<Elite> random_elite_of_task(TaskId task, RandomStream& rng) const;

    const CellMap& cells(TaskId task) const;

    std::size_t elite_count(TaskId task) const { return cells(task).size(); }
    std::size_t total_elites() const { return total_elites_; }

    /// Evaluation accounting lives here so all algorithms share one counter;
    /// bumped by the evaluation choke point, never by insert.
    void note_evaluation() { ++eval_count_; }
    std::uint64_t eval_count() const { return eval_count_; }

private:
    void check_task(TaskId task) const;

    std::vector<CellMap> per_task_;
    std::vector<TaskId> nonempty_tasks_; // sorted
    std::size_t total_elites_ = 0;
    std::uint64_t eval_count_ = 0;
};

/// JSON-lines dump, one record per elite, sorted by (task, behavior):
///   {"task": <int>, "behavior": [<int>...], "command": [<float>...], "fitness": <float>}
/// Floats carry 17 significant digits so a round trip is exact.
void dump_archive(const Archive& archive, std::ostream& out);

struct DumpRecord {
    TaskId task = 0;
    BehaviorKey behavior;
    Command command;
    double fitness = 0.0;
};

/// Parse a dump produced by dump_archive.
std::vector<DumpRecord> load_archive_dump(std::istream& in);

} // namespace mtmb
