#include "mtmb/runner.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mtmb/errors.hpp"

namespace mtmb {

namespace {

constexpr const char* kRunCsvHeader =
    "replication,evaluations,solved_fraction,solutions_per_solved,total_solutions,total_elites";

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // \n endings on every platform
    if (!out)
        throw std::runtime_error("cannot write \"" + path.string() + "\"");
    return out;
}

/// What one replication produces before anything touches the filesystem.
struct ReplicationOutput {
    std::vector<Snapshot> series;
    std::string archive_dump;
    std::size_t init_evaluations = 0;
};

ReplicationOutput run_replication(const ExperimentConfig& cfg, const TaskDomain& domain,
                                  std::size_t r) {
    ReplicationOutput out;
    const std::uint64_t seed_r = cfg.base_seed + r;
    RunStats stats;
    const SnapshotSink sink = [&](const Archive& archive, std::size_t evaluations) {
        out.series.push_back(snapshot(archive, domain, evaluations));
    };
    const Archive archive = run_algorithm(parse_algorithm(cfg.algorithm), domain, cfg.budget,
                                          cfg.variation, seed_r, sink, &stats);
    out.init_evaluations = stats.init_evaluations;
    std::ostringstream dump;
    dump_archive(archive, dump);
    out.archive_dump = std::move(dump).str();
    return out;
}

void write_run_csv(const std::filesystem::path& path, std::size_t r,
                   const std::vector<Snapshot>& series) {
    std::ofstream out = open_for_write(path);
    out << kRunCsvHeader << '\n';
    for (const Snapshot& s : series)
        out << r << ',' << s.evaluations << ',' << format_csv_double(s.solved_fraction) << ','
            << format_csv_double(s.solutions_per_solved) << ',' << s.total_solutions << ','
            << s.total_elites << '\n';
}

void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<std::vector<Snapshot>>& runs) {
    std::ofstream out = open_for_write(path);
    out << "evaluations,metric,q05,q25,q50,q75,q95,mean,sd\n";
    for (const char* metric : kMetricNames)
        for (const AggregateCurve& row : aggregate(runs, metric))
            out << row.evaluations << ',' << metric << ',' << format_csv_double(row.q05) << ','
                << format_csv_double(row.q25) << ',' << format_csv_double(row.q50) << ','
                << format_csv_double(row.q75) << ',' << format_csv_double(row.q95) << ','
                << format_csv_double(row.mean) << ',' << format_csv_double(row.sd) << '\n';
}

void write_meta_json(const std::filesystem::path& path, const ExperimentConfig& cfg,
                     const TaskDomain& domain, const std::vector<std::string>& overrides,
                     const std::vector<std::size_t>& init_evaluations) {
    nlohmann::json meta;
    meta["artifact_version"] = kArtifactVersion;
    meta["algorithm"] = cfg.algorithm;
    meta["base_seed"] = cfg.base_seed;
    meta["replications"] = cfg.replications;
    meta["config"] = config_entries(cfg);
    meta["config_hash"] = hex64(config_hash(cfg));
    meta["domain_hash"] = hex64(domain.spec_hash());
    meta["domain_description"] = domain.description();
    meta["overrides"] = overrides;
    meta["init_evaluations"] = init_evaluations;
    std::ofstream out = open_for_write(path);
    out << meta.dump(2) << '\n';
}

} // namespace

std::string format_csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg) {
    if (!cfg.output_dir.empty())
        return cfg.output_dir;
    if (const char* env = std::getenv(kOutputDirEnvVar); env != nullptr && *env != '\0')
        return env;
    throw ConfigError(std::string("output_dir: not set and $") + kOutputDirEnvVar +
                      " is empty");
}

std::vector<Snapshot> load_run_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read \"" + path.string() + "\"");
    std::string line;
    if (!std::getline(in, line) || line != kRunCsvHeader)
        throw std::runtime_error("\"" + path.string() + "\": unexpected run CSV header");
    std::vector<Snapshot> series;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ','))
            fields.push_back(field);
        if (fields.size() != 6)
            throw std::runtime_error("\"" + path.string() + "\": malformed row: " + line);
        Snapshot s;
        s.evaluations = std::stoull(fields[1]);
        s.solved_fraction = std::stod(fields[2]);
        s.solutions_per_solved = std::stod(fields[3]);
        s.total_solutions = std::stoull(fields[4]);
        s.total_elites = std::stoull(fields[5]);
        series.push_back(s);
    }
    return series;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers,
                                const std::vector<std::string>& overrides) {
    const std::filesystem::path out_dir = resolve_output_dir(cfg);
    std::filesystem::create_directories(out_dir);
    const std::unique_ptr<TaskDomain> domain = build_domain(cfg);

    // Compute every replication first (any worker count, same results),
    // write files afterwards in replication order.
    const std::size_t n_reps = cfg.replications;
    std::vector<ReplicationOutput> outputs(n_reps);
    std::vector<std::exception_ptr> failures(n_reps);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= n_reps)
                return;
            try {
                outputs[r] = run_replication(cfg, *domain, r);
            } catch (...) {
                failures[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(workers, n_reps); ++w)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    for (const std::exception_ptr& failure : failures)
        if (failure)
            std::rethrow_exception(failure);

    ExperimentResult result;
    result.output_dir = out_dir;
    for (std::size_t r = 0; r < n_reps; ++r) {
        write_run_csv(out_dir / ("run_" + std::to_string(r) + ".csv"), r, outputs[r].series);
        std::ofstream dump = open_for_write(out_dir / ("archive_" + std::to_string(r) +
                                                       ".jsonl"));
        dump << outputs[r].archive_dump;
        result.final_snapshots.push_back(outputs[r].series.back());
        result.init_evaluations.push_back(outputs[r].init_evaluations);
    }

    // Aggregate from the files just written, not from memory: the CSVs round
    // to 9 significant digits and the aggregate must be reproducible from
    // the published files alone.
    std::vector<std::vector<Snapshot>> parsed(n_reps);
    for (std::size_t r = 0; r < n_reps; ++r)
        parsed[r] = load_run_csv(out_dir / ("run_" + std::to_string(r) + ".csv"));
    write_aggregate_csv(out_dir / "aggregate.csv", parsed);
    write_meta_json(out_dir / "meta.json", cfg, *domain, overrides, result.init_evaluations);
    return result;
}

} // namespace mtmb
