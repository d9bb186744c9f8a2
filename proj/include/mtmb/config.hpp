// config.hpp — strict experiment configuration: flat dotted-key text files.
//
// Grammar: one `key = value` per line, full-line comments starting with
// `#`, blank lines ignored, order-insensitive. Parsing is strict — unknown
// keys, duplicate keys, malformed values, and keys that do not apply to the
// chosen domain type are all hard errors naming the offending key, because
// a silently ignored typo would quietly change an experiment. Overrides
// (the CLI's --set key=value) land on top of the file before any
// validation, so they can switch the domain type wholesale.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mtmb/algorithms.hpp"
#include "mtmb/planar_arm.hpp"
#include "mtmb/planted_disks.hpp"

namespace mtmb {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Environment variable supplying output_dir when the config does not.
inline constexpr const char* kOutputDirEnvVar = "MTMB_OUTPUT_DIR";

struct ExperimentConfig {
    std::string domain_type; // "planted_disks" | "planar_arm"
    PlantedDisksParams disks;
    PlanarArmParams arm;
    std::string algorithm;
    BudgetConfig budget; // snapshot_every fed from the top-level key
    VariationConfig variation;
    std::size_t replications = 1;
    std::uint64_t base_seed = 1;
    std::string output_dir; // empty: fall back to $MTMB_OUTPUT_DIR
};

/// Parse config text, then apply `key=value` overrides on top; throws
/// ConfigError naming the first offending key.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides = {});

/// Read and parse a config file; a missing file throws ConfigError naming
/// the path.
ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides = {});

/// Canonical key=value view of the full effective config (defaults
/// included, only keys applicable to the domain type). Drives meta.json and
/// the config hash.
std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg);

/// FNV-1a over the canonical entries except output_dir; equal hashes mean
/// equal experiments regardless of where their results are written.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Construct the configured domain from (domain params, base_seed).
std::unique_ptr<TaskDomain> build_domain(const ExperimentConfig& cfg);

} // namespace mtmb
