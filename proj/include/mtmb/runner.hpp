// runner.hpp — replication orchestration and result files.
//
// One experiment = one domain (built from base_seed, shared by every
// replication and every algorithm compared at that seed) and `replications`
// independent runs seeded base_seed + r. Each run writes a snapshot CSV and
// an archive dump; the aggregate CSV is then recomputed from the run CSVs
// themselves, so it is reproducible from the published files alone.
// Replications may run on any number of workers; outputs are byte-identical
// regardless.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mtmb/config.hpp"
#include "mtmb/metrics.hpp"

namespace mtmb {

struct ExperimentResult {
    std::filesystem::path output_dir;
    std::vector<Snapshot> final_snapshots;      // one per replication
    std::vector<std::size_t> init_evaluations;  // realized init spend per replication
};

/// Run the configured experiment and write run_<r>.csv, archive_<r>.jsonl,
/// aggregate.csv, and meta.json into the output directory. `overrides` is
/// recorded in meta.json verbatim; it must already be applied to cfg.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers = 1,
                                const std::vector<std::string>& overrides = {});

/// Resolve cfg.output_dir, falling back to $MTMB_OUTPUT_DIR; errors when
/// neither is set.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

/// CSV float formatting used across all result files: 9 significant digits.
std::string format_csv_double(double v);

/// Parse a run_<r>.csv back into its snapshot series.
std::vector<Snapshot> load_run_csv(const std::filesystem::path& path);

} // namespace mtmb
