// metrics.hpp — solved-task metrics and cross-run quantile aggregation.
//
// A snapshot reduces one archive to the two headline metrics (fraction of
// tasks holding a solution, mean solutions per solved task) plus raw
// counts. Aggregation turns per-run snapshot series into quantile curves;
// the quantile method is fixed to inclusive linear interpolation between
// order statistics so aggregates are reproducible to the byte.
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mtmb/archive.hpp"
#include "mtmb/domain.hpp"

namespace mtmb {

struct Snapshot {
    std::size_t evaluations = 0;
    double solved_fraction = 0.0;
    double solutions_per_solved = 0.0; // 0 when no task is solved
    std::size_t total_solutions = 0;
    std::size_t total_elites = 0;
};

Snapshot snapshot(const Archive& archive, const TaskDomain& domain, std::size_t evaluations);

/// Metric columns of the run CSV, in file order.
inline constexpr std::array<const char*, 4> kMetricNames{
    "solved_fraction", "solutions_per_solved", "total_solutions", "total_elites"};

/// Snapshot field by metric name; unknown names throw std::invalid_argument.
double metric_value(const Snapshot& s, const std::string& metric);

/// Inclusive-interpolation empirical quantile of a sorted sample:
/// position p * (m - 1), linear between the two straddling order
/// statistics. values must be non-empty and ascending.
double quantile_inclusive(std::span<const double> sorted_values, double p);

struct AggregateCurve {
    std::size_t evaluations = 0;
    double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation; 0 for a single run
};

/// Quantile curves of one metric across runs. All series must share the
/// same snapshot evaluation grid; a mismatch throws std::invalid_argument.
std::vector<AggregateCurve> aggregate(const std::vector<std::vector<Snapshot>>& runs,
                                      const std::string& metric);

} // namespace mtmb
