// report.hpp — cross-experiment comparison tables and plot-ready curves.
//
// Consumes the aggregate.csv + meta.json pairs the runner leaves behind:
// one experiment directory per algorithm. Emits a final-snapshot comparison
// table for the two headline metrics, a win/loss ordering by final median
// solved fraction, and a long-format CSV of every quantile curve for
// external plotting tools.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mtmb {

/// One parsed row of an aggregate.csv.
struct AggregateFileRow {
    std::size_t evaluations = 0;
    std::string metric;
    double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
    double mean = 0.0, sd = 0.0;
};

std::vector<AggregateFileRow> load_aggregate_csv(const std::filesystem::path& path);

/// One experiment directory's data, labeled by its algorithm (from meta.json).
struct ExperimentSeries {
    std::string algorithm;
    std::vector<AggregateFileRow> rows;
};

ExperimentSeries load_experiment_dir(const std::filesystem::path& dir);

struct ComparisonRow {
    std::size_t rank = 0; // 1 = best final median solved_fraction
    std::string algorithm;
    std::string metric;
    double final_median = 0.0;
    double final_mean = 0.0;
    double final_sd = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;      // sorted by (rank, metric)
    std::vector<std::string> ordering;    // algorithms, best first
};

/// Build the comparison across experiment directories. All aggregates must
/// share one snapshot grid; a mismatch throws std::invalid_argument.
ComparisonReport compare_report(const std::vector<ExperimentSeries>& experiments);

void write_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path);

/// Long-format curves: `algorithm,evaluations,metric,quantile,value`, one
/// row per (experiment, snapshot, metric, quantile).
void write_curves_csv(const std::vector<ExperimentSeries>& experiments,
                      const std::filesystem::path& path);

} // namespace mtmb
