#include "mtmb/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtmb/config.hpp"
#include "mtmb/oracle.hpp"
#include "mtmb/report.hpp"
#include "mtmb/runner.hpp"

namespace mtmb {

namespace {

void cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
             std::size_t workers) {
    const ExperimentConfig cfg = load_config_file(config_path, overrides);
    const ExperimentResult result = run_experiment(cfg, workers, overrides);
    for (std::size_t r = 0; r < result.final_snapshots.size(); ++r) {
        const Snapshot& s = result.final_snapshots[r];
        std::cout << "replication " << r << ": evaluations=" << s.evaluations
                  << " solved_fraction=" << format_csv_double(s.solved_fraction)
                  << " solutions_per_solved=" << format_csv_double(s.solutions_per_solved)
                  << " total_solutions=" << s.total_solutions
                  << " total_elites=" << s.total_elites << '\n';
    }
    std::cout << "results in " << result.output_dir.string() << '\n';
}

void cmd_oracle(const std::string& config_path, const std::vector<std::string>& overrides,
                int probes) {
    const ExperimentConfig cfg = load_config_file(config_path, overrides);
    const std::unique_ptr<TaskDomain> domain = build_domain(cfg);
    std::cout << "task,mode,oracle_count\n";
    std::size_t total = 0;
    for (TaskId task = 0; task < domain->task_count(); ++task) {
        const std::size_t count = oracle_count_solution_cells(*domain, task, probes);
        total += count;
        std::cout << task << ','
                  << (domain->task_mode(task) == TaskMode::SingleGroup ? "single" : "dual")
                  << ',' << count << '\n';
    }
    std::cout << "total,," << total << '\n';
}

void cmd_report(const std::vector<std::string>& dirs, const std::string& out_dir) {
    std::vector<ExperimentSeries> experiments;
    for (const std::string& dir : dirs)
        experiments.push_back(load_experiment_dir(dir));
    const ComparisonReport report = compare_report(experiments);
    std::filesystem::create_directories(out_dir);
    write_comparison_csv(report, std::filesystem::path(out_dir) / "comparison.csv");
    write_curves_csv(experiments, std::filesystem::path(out_dir) / "curves.csv");
    std::cout << "ordering by final median solved_fraction:";
    for (const std::string& name : report.ordering)
        std::cout << ' ' << name;
    std::cout << '\n';
}

void cmd_dump_stats(const std::string& archive_path, double f_max) {
    std::ifstream in(archive_path);
    if (!in)
        throw std::runtime_error("cannot read \"" + archive_path + "\"");
    const std::vector<DumpRecord> records = load_archive_dump(in);
    struct TaskStats {
        std::size_t elites = 0;
        std::size_t solutions = 0;
        double best_fitness = 0.0;
    };
    std::map<TaskId, TaskStats> stats;
    for (const DumpRecord& rec : records) {
        TaskStats& s = stats[rec.task];
        if (s.elites == 0 || rec.fitness > s.best_fitness)
            s.best_fitness = rec.fitness;
        ++s.elites;
        if (rec.fitness >= f_max - kSolveEps)
            ++s.solutions;
    }
    std::cout << "task,elites,solutions,best_fitness\n";
    for (const auto& [task, s] : stats)
        std::cout << task << ',' << s.elites << ',' << s.solutions << ','
                  << format_csv_double(s.best_fitness) << '\n';
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"multi-task multi-behavior elite search benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::size_t workers = 1;
    CLI::App* run = app.add_subcommand("run", "execute a configured experiment");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--set", overrides, "override a config key (key=value, repeatable)");
    run->add_option("--workers", workers, "parallel replication workers");

    int probes = 32;
    CLI::App* oracle = app.add_subcommand("oracle", "print per-task solution-cell counts");
    oracle->add_option("--config", config_path, "experiment config file")->required();
    oracle->add_option("--set", overrides, "override a config key (key=value, repeatable)");
    oracle->add_option("--probes", probes, "probes per cell per axis");

    std::vector<std::string> dirs;
    std::string report_out = ".";
    CLI::App* report = app.add_subcommand("report", "compare experiment directories");
    report->add_option("--dirs", dirs, "experiment output directories")->required();
    report->add_option("--out", report_out, "where to write comparison.csv and curves.csv");

    std::string archive_path;
    double f_max = 10.0;
    CLI::App* dump_stats = app.add_subcommand("dump-stats", "summarize an archive dump");
    dump_stats->add_option("file", archive_path, "archive_<r>.jsonl path")->required();
    dump_stats->add_option("--f-max", f_max, "fitness bound deciding solutions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (run->parsed())
            cmd_run(config_path, overrides, workers);
        else if (oracle->parsed())
            cmd_oracle(config_path, overrides, probes);
        else if (report->parsed())
            cmd_report(dirs, report_out);
        else if (dump_stats->parsed())
            cmd_dump_stats(archive_path, f_max);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace mtmb
