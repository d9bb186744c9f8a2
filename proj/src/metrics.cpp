#include "mtmb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mtmb {

Snapshot snapshot(const Archive& archive, const TaskDomain& domain, std::size_t evaluations) {
    const std::size_t n = domain.task_count();
    const double f_max = domain.f_max();
    Snapshot s;
    s.evaluations = evaluations;
    std::size_t solved = 0;
    for (TaskId task = 0; task < n; ++task) {
        const std::size_t m = archive.solution_count(task, f_max, kSolveEps);
        if (m > 0)
            ++solved;
        s.total_solutions += m;
    }
    s.total_elites = archive.total_elites();
    s.solved_fraction = n == 0 ? 0.0 : static_cast<double>(solved) / static_cast<double>(n);
    s.solutions_per_solved =
        solved == 0 ? 0.0 : static_cast<double>(s.total_solutions) / static_cast<double>(solved);
    return s;
}

double metric_value(const Snapshot& s, const std::string& metric) {
    if (metric == "solved_fraction")
        return s.solved_fraction;
    if (metric == "solutions_per_solved")
        return s.solutions_per_solved;
    if (metric == "total_solutions")
        return static_cast<double>(s.total_solutions);
    if (metric == "total_elites")
        return static_cast<double>(s.total_elites);
    throw std::invalid_argument("metric_value: unknown metric \"" + metric + "\"");
}

double quantile_inclusive(std::span<const double> sorted_values, double p) {
    if (sorted_values.empty())
        throw std::invalid_argument("quantile_inclusive: empty sample");
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("quantile_inclusive: p must be in [0, 1]");
    const std::size_t m = sorted_values.size();
    const double pos = p * static_cast<double>(m - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= m)
        return sorted_values[m - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

std::vector<AggregateCurve> aggregate(const std::vector<std::vector<Snapshot>>& runs,
                                      const std::string& metric) {
    if (runs.empty())
        throw std::invalid_argument("aggregate: no runs");
    const std::size_t n_snapshots = runs.front().size();
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].size() != n_snapshots)
            throw std::invalid_argument("aggregate: runs disagree on snapshot count");

    std::vector<AggregateCurve> out(n_snapshots);
    std::vector<double> sample(runs.size());
    for (std::size_t i = 0; i < n_snapshots; ++i) {
        const std::size_t evals = runs.front()[i].evaluations;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            if (runs[r][i].evaluations != evals) {
                std::ostringstream os;
                os << "aggregate: snapshot grids disagree at index " << i << " (" << evals
                   << " vs " << runs[r][i].evaluations << ")";
                throw std::invalid_argument(os.str());
            }
            sample[r] = metric_value(runs[r][i], metric);
        }
        std::sort(sample.begin(), sample.end());

        AggregateCurve& row = out[i];
        row.evaluations = evals;
        row.q05 = quantile_inclusive(sample, 0.05);
        row.q25 = quantile_inclusive(sample, 0.25);
        row.q50 = quantile_inclusive(sample, 0.50);
        row.q75 = quantile_inclusive(sample, 0.75);
        row.q95 = quantile_inclusive(sample, 0.95);

        double mean = 0.0;
        for (double v : sample)
            mean += v;
        mean /= static_cast<double>(sample.size());
        row.mean = mean;
        if (sample.size() > 1) {
            double ss = 0.0;
            for (double v : sample)
                ss += (v - mean) * (v - mean);
            row.sd = std::sqrt(ss / static_cast<double>(sample.size() - 1));
        }
    }
    return out;
}

} // namespace mtmb
