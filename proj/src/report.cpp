#include "mtmb/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mtmb/runner.hpp"

namespace mtmb {

namespace {

constexpr const char* kAggregateHeader = "evaluations,metric,q05,q25,q50,q75,q95,mean,sd";

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ','))
        fields.push_back(field);
    return fields;
}

/// The final-snapshot row of one metric; aggregates list snapshots in
/// ascending evaluation order per metric block.
const AggregateFileRow& final_row(const ExperimentSeries& exp, const std::string& metric) {
    const AggregateFileRow* best = nullptr;
    for (const AggregateFileRow& row : exp.rows)
        if (row.metric == metric && (best == nullptr || row.evaluations >= best->evaluations))
            best = &row;
    if (best == nullptr)
        throw std::invalid_argument("report: experiment \"" + exp.algorithm +
                                    "\" has no rows for metric " + metric);
    return *best;
}

void check_same_grid(const std::vector<ExperimentSeries>& experiments) {
    auto grid_of = [](const ExperimentSeries& exp) {
        std::vector<std::size_t> grid;
        for (const AggregateFileRow& row : exp.rows)
            if (row.metric == "solved_fraction")
                grid.push_back(row.evaluations);
        return grid;
    };
    const std::vector<std::size_t> reference = grid_of(experiments.front());
    for (const ExperimentSeries& exp : experiments)
        if (grid_of(exp) != reference)
            throw std::invalid_argument("report: experiment \"" + exp.algorithm +
                                        "\" disagrees on the snapshot grid");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write \"" + path.string() + "\"");
    return out;
}

} // namespace

std::vector<AggregateFileRow> load_aggregate_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read \"" + path.string() + "\"");
    std::string line;
    if (!std::getline(in, line) || line != kAggregateHeader)
        throw std::runtime_error("\"" + path.string() + "\": unexpected aggregate CSV header");
    std::vector<AggregateFileRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> fields = split_csv_row(line);
        if (fields.size() != 9)
            throw std::runtime_error("\"" + path.string() + "\": malformed row: " + line);
        AggregateFileRow row;
        row.evaluations = std::stoull(fields[0]);
        row.metric = fields[1];
        row.q05 = std::stod(fields[2]);
        row.q25 = std::stod(fields[3]);
        row.q50 = std::stod(fields[4]);
        row.q75 = std::stod(fields[5]);
        row.q95 = std::stod(fields[6]);
        row.mean = std::stod(fields[7]);
        row.sd = std::stod(fields[8]);
        rows.push_back(std::move(row));
    }
    return rows;
}

ExperimentSeries load_experiment_dir(const std::filesystem::path& dir) {
    ExperimentSeries exp;
    exp.rows = load_aggregate_csv(dir / "aggregate.csv");
    const std::filesystem::path meta_path = dir / "meta.json";
    std::ifstream meta_in(meta_path);
    if (!meta_in)
        throw std::runtime_error("cannot read \"" + meta_path.string() + "\"");
    nlohmann::json meta;
    try {
        meta_in >> meta;
        exp.algorithm = meta.at("algorithm").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("\"" + meta_path.string() + "\": " + e.what());
    }
    return exp;
}

ComparisonReport compare_report(const std::vector<ExperimentSeries>& experiments) {
    if (experiments.empty())
        throw std::invalid_argument("report: no experiment directories");
    check_same_grid(experiments);

    // Rank by final median solved fraction, best first; ties break on the
    // algorithm name so the report is deterministic.
    std::vector<const ExperimentSeries*> order;
    for (const ExperimentSeries& exp : experiments)
        order.push_back(&exp);
    std::stable_sort(order.begin(), order.end(),
                     [](const ExperimentSeries* a, const ExperimentSeries* b) {
                         const double ma = final_row(*a, "solved_fraction").q50;
                         const double mb = final_row(*b, "solved_fraction").q50;
                         if (ma != mb)
                             return ma > mb;
                         return a->algorithm < b->algorithm;
                     });

    ComparisonReport report;
    for (std::size_t i = 0; i < order.size(); ++i) {
        report.ordering.push_back(order[i]->algorithm);
        for (const char* metric : {"solved_fraction", "solutions_per_solved"}) {
            const AggregateFileRow& row = final_row(*order[i], metric);
            report.rows.push_back(ComparisonRow{i + 1, order[i]->algorithm, metric, row.q50,
                                                row.mean, row.sd});
        }
    }
    return report;
}

void write_comparison_csv(const ComparisonReport& report, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    out << "rank,algorithm,metric,final_median,final_mean,final_sd\n";
    for (const ComparisonRow& row : report.rows)
        out << row.rank << ',' << row.algorithm << ',' << row.metric << ','
            << format_csv_double(row.final_median) << ',' << format_csv_double(row.final_mean)
            << ',' << format_csv_double(row.final_sd) << '\n';
}

void write_curves_csv(const std::vector<ExperimentSeries>& experiments,
                      const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    out << "algorithm,evaluations,metric,quantile,value\n";
    for (const ExperimentSeries& exp : experiments)
        for (const AggregateFileRow& row : exp.rows) {
            const std::pair<const char*, double> quantiles[] = {
                {"0.05", row.q05}, {"0.25", row.q25}, {"0.5", row.q50},
                {"0.75", row.q75}, {"0.95", row.q95}};
            for (const auto& [name, value] : quantiles)
                out << exp.algorithm << ',' << row.evaluations << ',' << row.metric << ','
                    << name << ',' << format_csv_double(value) << '\n';
        }
}

} // namespace mtmb
