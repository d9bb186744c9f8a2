// domain.hpp — the task-domain contract every search algorithm runs against.
//
// A domain is a family of optimization tasks over one shared command space:
// fixed dimension, per-dimension bounds, a bounded fitness, and a
// discretizing transition from (task, command) to a behavior key. Evaluation
// is deterministic and total on in-bounds commands; domains are immutable
// after construction and safe to share read-only across threads.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtmb/archive.hpp"
#include "mtmb/variation.hpp"

namespace mtmb {

struct Evaluation {
    BehaviorKey behavior;
    double fitness = 0.0;
};

/// A situation is duplicated into two tasks: one per group mode.
enum class TaskMode { SingleGroup, DualGroup };

class TaskDomain {
public:
    virtual ~TaskDomain() = default;

    virtual std::size_t dimension() const = 0;
    virtual std::span<const Interval> bounds() const = 0;
    virtual double f_max() const = 0;
    virtual std::size_t task_count() const = 0;
    virtual TaskMode task_mode(TaskId task) const = 0;

    /// Command dimensions the task actually reads; the rest are ignored.
    virtual std::vector<std::size_t> active_dims(TaskId task) const = 0;

    /// Deterministic; 0 <= fitness <= f_max for any in-bounds command.
    virtual Evaluation evaluate(TaskId task, const Command& c) const = 0;

    /// Probe coordinates along one active dimension for exhaustive cell
    /// enumeration: probes_per_cell_axis points per behavior cell, centered
    /// within each cell, never on a boundary.
    virtual std::vector<double> oracle_axis_probes(TaskId task, std::size_t active_dim,
                                                   int probes_per_cell_axis) const = 0;

    /// Stable human-readable summary recorded in run metadata.
    virtual std::string description() const = 0;

    /// Hash over the built task specs; equal seeds must hash equal.
    virtual std::uint64_t spec_hash() const = 0;
};

namespace detail {

/// Half-open cells of width h tiling [lo, lo + extent], closed at the top:
/// index(x) = floor((x - lo) / h), with x at the upper edge clamped into the
/// last reachable cell so keys stay finite.
struct CellGrid {
    double lo = 0.0;
    double h = 1.0;
    int n_cells = 1;

    CellGrid() = default;
    CellGrid(double lo_, double extent, double h_);

    int index(double x) const;
    double cell_lo(int i) const { return lo + i * h; }
    double cell_hi(int i) const { return lo + (i + 1) * h; }
};

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v);
std::uint64_t hash_mix(std::uint64_t h, double v);

} // namespace detail

} // namespace mtmb
