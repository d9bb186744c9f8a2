// test_runner.cpp — experiment orchestration and result-file contracts.
//
// Runs small experiments into throwaway directories and checks the
// published files themselves: schemas, determinism across worker counts
// and invocations, and that the aggregate table is recomputable from the
// run CSVs alone.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtmb/archive.hpp"
#include "mtmb/config.hpp"
#include "mtmb/errors.hpp"
#include "mtmb/metrics.hpp"
#include "mtmb/runner.hpp"

using namespace mtmb;
namespace fs = std::filesystem;

namespace {

constexpr const char* kRunnerConfig = R"(# small experiment used across the runner tests
domain.type = planted_disks
domain.n_situations = 2
domain.disks_per_group = 2
domain.dispersion = 0.15
domain.radius = 0.08
domain.decay_length = 0.2
domain.exclusion = 0.05
domain.cell_size = 0.1

algorithm = mtmb
budget.B = 600
snapshot_every = 200
replications = 3
base_seed = 77
)";

/// Fresh, empty directory under the system temp root.
fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mtmb-runner-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ExperimentConfig runner_config(const fs::path& out_dir) {
    ExperimentConfig cfg = parse_config_text(kRunnerConfig);
    cfg.output_dir = out_dir.string();
    return cfg;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    return lines;
}

/// Every file an experiment directory is expected to hold, sorted by name.
std::vector<std::string> dir_file_names(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

/// Reads dir/name with the directory's own path masked out. meta.json
/// records output_dir among the config entries, so two otherwise identical
/// experiments written to different directories agree only up to that path;
/// the payload files never mention it, so masking is a no-op for them.
std::string slurp_masking_dir(const fs::path& dir, const std::string& name) {
    std::string text = slurp(dir / name);
    const std::string needle = dir.string();
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at))
        text.replace(at, needle.size(), "<output-dir>");
    return text;
}

} // namespace

TEST_CASE("run_experiment writes the complete file set with the documented schemas") {
    const fs::path dir = scratch_dir("file-set");
    const ExperimentConfig cfg = runner_config(dir);
    const ExperimentResult result = run_experiment(cfg);

    CHECK(result.output_dir == dir);
    CHECK(dir_file_names(dir) ==
          std::vector<std::string>{"aggregate.csv", "archive_0.jsonl", "archive_1.jsonl",
                                   "archive_2.jsonl", "meta.json", "run_0.csv", "run_1.csv",
                                   "run_2.csv"});
    CHECK(result.final_snapshots.size() == 3);
    CHECK(result.init_evaluations.size() == 3);

    // Snapshot grid: B = 600 at snapshot_every = 200 means rows at 200, 400, 600.
    for (std::size_t r = 0; r < 3; ++r) {
        const std::vector<std::string> lines = split_lines(slurp(dir / ("run_" +
                                                                        std::to_string(r) +
                                                                        ".csv")));
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "replication,evaluations,solved_fraction,solutions_per_solved,"
                          "total_solutions,total_elites");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const std::string expected_prefix =
                std::to_string(r) + "," + std::to_string(200 * i) + ",";
            CHECK(lines[i].substr(0, expected_prefix.size()) == expected_prefix);
        }
        CHECK(result.final_snapshots[r].evaluations == 600);
    }

    // Aggregate: header plus one row per (metric, snapshot) pair.
    const std::vector<std::string> agg = split_lines(slurp(dir / "aggregate.csv"));
    REQUIRE(agg.size() == 1 + kMetricNames.size() * 3);
    CHECK(agg[0] == "evaluations,metric,q05,q25,q50,q75,q95,mean,sd");
    std::size_t row = 1;
    for (const char* metric : kMetricNames)
        for (const std::size_t evals : {200, 400, 600}) {
            const std::string prefix = std::to_string(evals) + "," + metric + ",";
            CHECK(agg[row].substr(0, prefix.size()) == prefix);
            ++row;
        }
}

TEST_CASE("archive dumps account for every elite and solution in the final snapshot") {
    const fs::path dir = scratch_dir("dump-consistency");
    const ExperimentConfig cfg = runner_config(dir);
    const ExperimentResult result = run_experiment(cfg);

    for (std::size_t r = 0; r < cfg.replications; ++r) {
        std::ifstream in(dir / ("archive_" + std::to_string(r) + ".jsonl"));
        REQUIRE(static_cast<bool>(in));
        const std::vector<DumpRecord> records = load_archive_dump(in);
        CHECK(records.size() == result.final_snapshots[r].total_elites);
        std::size_t solutions = 0;
        for (const DumpRecord& rec : records)
            if (rec.fitness >= cfg.disks.f_max - kSolveEps)
                ++solutions;
        CHECK(solutions == result.final_snapshots[r].total_solutions);
    }
}

TEST_CASE("outputs are byte-identical across worker counts and invocations") {
    const fs::path dir_a = scratch_dir("workers-1");
    const fs::path dir_b = scratch_dir("workers-4");
    const fs::path dir_c = scratch_dir("workers-1-again");
    run_experiment(runner_config(dir_a), 1);
    run_experiment(runner_config(dir_b), 4);
    run_experiment(runner_config(dir_c), 1);

    const std::vector<std::string> names = dir_file_names(dir_a);
    CHECK(dir_file_names(dir_b) == names);
    CHECK(dir_file_names(dir_c) == names);
    for (const std::string& name : names) {
        const std::string a = slurp_masking_dir(dir_a, name);
        CHECK(slurp_masking_dir(dir_b, name) == a);
        CHECK(slurp_masking_dir(dir_c, name) == a);
    }
}

TEST_CASE("worker counts beyond the replication count are harmless") {
    const fs::path dir_a = scratch_dir("workers-over-1");
    const fs::path dir_b = scratch_dir("workers-over-16");
    run_experiment(runner_config(dir_a), 1);
    run_experiment(runner_config(dir_b), 16); // only 3 replications exist
    for (const std::string& name : dir_file_names(dir_a))
        CHECK(slurp_masking_dir(dir_b, name) == slurp_masking_dir(dir_a, name));
}

TEST_CASE("aggregate.csv is recomputable from the run CSVs alone") {
    const fs::path dir = scratch_dir("aggregate-repro");
    const ExperimentConfig cfg = runner_config(dir);
    run_experiment(cfg);

    std::vector<std::vector<Snapshot>> runs;
    for (std::size_t r = 0; r < cfg.replications; ++r)
        runs.push_back(load_run_csv(dir / ("run_" + std::to_string(r) + ".csv")));

    std::ostringstream rebuilt;
    rebuilt << "evaluations,metric,q05,q25,q50,q75,q95,mean,sd\n";
    for (const char* metric : kMetricNames)
        for (const AggregateCurve& row : aggregate(runs, metric))
            rebuilt << row.evaluations << ',' << metric << ',' << format_csv_double(row.q05)
                    << ',' << format_csv_double(row.q25) << ',' << format_csv_double(row.q50)
                    << ',' << format_csv_double(row.q75) << ',' << format_csv_double(row.q95)
                    << ',' << format_csv_double(row.mean) << ',' << format_csv_double(row.sd)
                    << '\n';
    CHECK(slurp(dir / "aggregate.csv") == rebuilt.str());
}

TEST_CASE("meta.json records the experiment identity") {
    const fs::path dir = scratch_dir("meta");
    ExperimentConfig cfg = runner_config(dir);
    const std::vector<std::string> overrides{"budget.B=600", "base_seed=77"};
    const ExperimentResult result = run_experiment(cfg, 2, overrides);

    const nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta.at("artifact_version").get<std::string>() == kArtifactVersion);
    CHECK(meta.at("algorithm").get<std::string>() == "mtmb");
    CHECK(meta.at("base_seed").get<std::uint64_t>() == 77);
    CHECK(meta.at("replications").get<std::size_t>() == 3);
    CHECK(meta.at("overrides").get<std::vector<std::string>>() == overrides);
    CHECK(meta.at("init_evaluations").get<std::vector<std::size_t>>() ==
          result.init_evaluations);
    CHECK(meta.at("domain_description").get<std::string>().find("planted") !=
          std::string::npos);

    // The embedded config and its hash match the canonical in-memory view.
    const auto entries = meta.at("config").get<std::map<std::string, std::string>>();
    const std::map<std::string, std::string> expected = config_entries(cfg);
    CHECK(entries == expected);
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    CHECK(meta.at("config_hash").get<std::string>() == hash_hex);
    CHECK(meta.at("domain_hash").get<std::string>().size() == 16);
}

TEST_CASE("one base_seed pins one domain across algorithm comparisons") {
    std::map<std::string, std::string> hashes;
    for (const std::string algorithm : {"mtmb", "random", "grid", "taskwise"}) {
        const fs::path dir = scratch_dir("domain-" + algorithm);
        ExperimentConfig cfg = runner_config(dir);
        cfg.algorithm = algorithm;
        run_experiment(cfg);
        const nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
        hashes[algorithm] = meta.at("domain_hash").get<std::string>();
    }
    CHECK(hashes.at("random") == hashes.at("mtmb"));
    CHECK(hashes.at("grid") == hashes.at("mtmb"));
    CHECK(hashes.at("taskwise") == hashes.at("mtmb"));
}

TEST_CASE("load_run_csv round trips the published rows") {
    const fs::path dir = scratch_dir("round-trip");
    const ExperimentConfig cfg = runner_config(dir);
    const ExperimentResult result = run_experiment(cfg);

    const std::vector<Snapshot> series = load_run_csv(dir / "run_1.csv");
    REQUIRE(series.size() == 3);
    CHECK(series[0].evaluations == 200);
    CHECK(series[1].evaluations == 400);
    CHECK(series[2].evaluations == 600);
    const Snapshot& last = series.back();
    const Snapshot& expected = result.final_snapshots[1];
    CHECK(last.total_solutions == expected.total_solutions);
    CHECK(last.total_elites == expected.total_elites);
    // Ratios pass through the 9-significant-digit CSV format.
    CHECK(last.solved_fraction ==
          doctest::Approx(expected.solved_fraction).epsilon(1e-8));
    CHECK(last.solutions_per_solved ==
          doctest::Approx(expected.solutions_per_solved).epsilon(1e-8));
}

TEST_CASE("load_run_csv rejects missing files, bad headers, and short rows") {
    const fs::path dir = scratch_dir("csv-errors");

    CHECK_THROWS_WITH_AS(load_run_csv(dir / "absent.csv"), doctest::Contains("absent.csv"),
                         std::runtime_error);

    const fs::path bad_header = dir / "bad_header.csv";
    std::ofstream(bad_header) << "evaluations,solved_fraction\n0,0\n";
    CHECK_THROWS_WITH_AS(load_run_csv(bad_header), doctest::Contains("header"),
                         std::runtime_error);

    const fs::path short_row = dir / "short_row.csv";
    std::ofstream(short_row) << "replication,evaluations,solved_fraction,solutions_per_solved,"
                                "total_solutions,total_elites\n0,100,0.5\n";
    CHECK_THROWS_WITH_AS(load_run_csv(short_row), doctest::Contains("malformed"),
                         std::runtime_error);
}

TEST_CASE("load_run_csv parses exact hand-written values") {
    const fs::path dir = scratch_dir("csv-values");
    const fs::path path = dir / "run_0.csv";
    std::ofstream(path) << "replication,evaluations,solved_fraction,solutions_per_solved,"
                           "total_solutions,total_elites\n"
                           "0,100,0.25,3.5,7,12\n"
                           "0,200,0.5,2,8,16\n";
    const std::vector<Snapshot> series = load_run_csv(path);
    REQUIRE(series.size() == 2);
    CHECK(series[0].evaluations == 100);
    CHECK(series[0].solved_fraction == 0.25);
    CHECK(series[0].solutions_per_solved == 3.5);
    CHECK(series[0].total_solutions == 7);
    CHECK(series[0].total_elites == 12);
    CHECK(series[1].evaluations == 200);
    CHECK(series[1].solved_fraction == 0.5);
}

TEST_CASE("resolve_output_dir prefers the config and falls back to the environment") {
    ExperimentConfig cfg = parse_config_text(kRunnerConfig);

    cfg.output_dir = "/tmp/explicit-dir";
    ::setenv(kOutputDirEnvVar, "/tmp/env-dir", 1);
    CHECK(resolve_output_dir(cfg) == fs::path("/tmp/explicit-dir"));

    cfg.output_dir.clear();
    CHECK(resolve_output_dir(cfg) == fs::path("/tmp/env-dir"));

    ::unsetenv(kOutputDirEnvVar);
    CHECK_THROWS_WITH_AS(resolve_output_dir(cfg), doctest::Contains("output_dir"),
                         ConfigError);
}

TEST_CASE("format_csv_double keeps nine significant digits") {
    CHECK(format_csv_double(0.0) == "0");
    CHECK(format_csv_double(0.5) == "0.5");
    CHECK(format_csv_double(1.0 / 3.0) == "0.333333333");
    CHECK(format_csv_double(123456789.0) == "123456789");
    CHECK(format_csv_double(1.25e-7) == "1.25e-07");
}
