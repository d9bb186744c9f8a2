#include "mtmb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mtmb/errors.hpp"

namespace mtmb {

namespace {

[[noreturn]] void refuse_lattice(std::size_t cap) {
    std::ostringstream os;
    os << "oracle: probe lattice exceeds the cap of " << cap
       << " probes; lower probes_per_cell_axis or raise the cap";
    throw ConfigError(os.str());
}

/// Solvedness threshold shared with the archive's solution test.
double solve_threshold(const TaskDomain& domain) { return domain.f_max() - kSolveEps; }

/// Distance from a point to a closed axis-aligned rectangle (0 inside).
double rect_distance(Point p, double lo_x, double hi_x, double lo_y, double hi_y) {
    const double dx = std::max({lo_x - p.x, 0.0, p.x - hi_x});
    const double dy = std::max({lo_y - p.y, 0.0, p.y - hi_y});
    return std::sqrt(dx * dx + dy * dy);
}

/// Minimum distance between two cells of the same grid (0 when touching).
double cell_gap(const detail::CellGrid& grid, std::pair<int, int> a, std::pair<int, int> b) {
    const double gx = std::max({0.0, grid.cell_lo(b.first) - grid.cell_hi(a.first),
                                grid.cell_lo(a.first) - grid.cell_hi(b.first)});
    const double gy = std::max({0.0, grid.cell_lo(b.second) - grid.cell_hi(a.second),
                                grid.cell_lo(a.second) - grid.cell_hi(b.second)});
    return std::sqrt(gx * gx + gy * gy);
}

/// Qualifying probes of one disk group, bucketed by behavior cell.
using CellPoints = std::map<std::pair<int, int>, std::vector<Point>>;

CellPoints qualifying_probes(const PlantedDisksDomain& domain, std::span<const Point> centers,
                             const std::vector<double>& axis, double threshold) {
    CellPoints out;
    const detail::CellGrid& grid = domain.grid();
    for (double x : axis)
        for (double y : axis) {
            const Point p{x, y};
            const double d =
                PlantedDisksDomain::distance_to_disks(p, centers, domain.params().radius);
            if (domain.decay_fitness(d) >= threshold)
                out[{grid.index(x), grid.index(y)}].push_back(p);
        }
    return out;
}

/// Exact count for a planted-disks dual task without touching the 4-D
/// lattice. The dual fitness at (p1, p2) is zero inside the exclusion band
/// and otherwise decay(max(d1, d2)) = min(decay(d1), decay(d2)) — the decay
/// is monotone, also under IEEE rounding — so a probe pair solves iff each
/// point solves its own group AND the pair clears the exclusion distance.
/// Enumerating qualifying points per group and searching each cell pair for
/// one witness therefore reproduces the naive scan bit for bit.
std::size_t dual_count_by_decomposition(const PlantedDisksDomain& domain, TaskId task,
                                        int probes_per_cell_axis, std::size_t probe_cap) {
    const DiskSituation& situation = domain.situation(task / 2);
    const std::vector<double> axis = domain.oracle_axis_probes(task, 0, probes_per_cell_axis);
    if (axis.empty())
        throw std::logic_error("oracle: domain returned an empty probe axis");
    if (axis.size() > (probe_cap / 2) / axis.size())
        refuse_lattice(probe_cap);

    const double threshold = solve_threshold(domain);
    const CellPoints qual1 = qualifying_probes(domain, situation.group1, axis, threshold);
    const CellPoints qual2 = qualifying_probes(domain, situation.group2, axis, threshold);

    const detail::CellGrid& grid = domain.grid();
    const double exclusion = domain.params().exclusion;
    std::size_t count = 0;
    for (const auto& [cell1, pts1] : qual1)
        for (const auto& [cell2, pts2] : qual2) {
            // When the cell boxes are comfortably farther apart than the
            // exclusion distance, any pair of occupants is a witness.
            bool witnessed = cell_gap(grid, cell1, cell2) >= exclusion + 1e-9;
            for (std::size_t i = 0; i < pts1.size() && !witnessed; ++i)
                for (std::size_t j = 0; j < pts2.size() && !witnessed; ++j)
                    witnessed = !(point_dist(pts1[i], pts2[j]) < exclusion);
            if (witnessed)
                ++count;
        }
    return count;
}

} // namespace

std::size_t oracle_count_by_scan(const TaskDomain& domain, TaskId task, int probes_per_cell_axis,
                                 std::size_t probe_cap) {
    if (probes_per_cell_axis < 1)
        throw std::invalid_argument("oracle: probes_per_cell_axis must be >= 1");
    const std::vector<std::size_t> dims = domain.active_dims(task);
    std::vector<std::vector<double>> axes;
    axes.reserve(dims.size());
    std::size_t total = 1;
    for (std::size_t d : dims) {
        axes.push_back(domain.oracle_axis_probes(task, d, probes_per_cell_axis));
        if (axes.back().empty())
            throw std::logic_error("oracle: domain returned an empty probe axis");
        if (axes.back().size() > probe_cap / total)
            refuse_lattice(probe_cap);
        total *= axes.back().size();
    }

    // Inactive dimensions are pinned at the bounds midpoint; the task never
    // reads them, so any in-bounds value gives the same count.
    const std::span<const Interval> bounds = domain.bounds();
    Command c(domain.dimension());
    for (std::size_t d = 0; d < c.size(); ++d)
        c[d] = 0.5 * (bounds[d].lo + bounds[d].hi);

    const double threshold = solve_threshold(domain);
    std::set<BehaviorKey> cells;
    std::vector<std::size_t> odo(dims.size(), 0);
    for (std::size_t step = 0; step < total; ++step) {
        for (std::size_t k = 0; k < dims.size(); ++k)
            c[dims[k]] = axes[k][odo[k]];
        Evaluation e = domain.evaluate(task, c);
        if (e.fitness >= threshold)
            cells.insert(std::move(e.behavior));
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++odo[k] < axes[k].size())
                break;
            odo[k] = 0;
        }
    }
    return cells.size();
}

std::size_t planted_disks_closed_form_single(const PlantedDisksDomain& domain, TaskId task) {
    if (domain.task_mode(task) != TaskMode::SingleGroup)
        throw std::invalid_argument("closed form only covers single-group tasks");
    const DiskSituation& situation = domain.situation(task / 2);
    const detail::CellGrid& grid = domain.grid();
    const double r = domain.params().radius;
    std::size_t count = 0;
    for (int i = 0; i < grid.n_cells; ++i)
        for (int j = 0; j < grid.n_cells; ++j) {
            const double hi_x = std::min(grid.cell_hi(i), 1.0);
            const double hi_y = std::min(grid.cell_hi(j), 1.0);
            const bool hit = std::any_of(
                situation.group1.begin(), situation.group1.end(), [&](Point center) {
                    return rect_distance(center, grid.cell_lo(i), hi_x, grid.cell_lo(j), hi_y) <=
                           r;
                });
            if (hit)
                ++count;
        }
    return count;
}

std::size_t oracle_count_solution_cells(const TaskDomain& domain, TaskId task,
                                        int probes_per_cell_axis, std::size_t probe_cap) {
    if (task >= domain.task_count())
        throw std::out_of_range("oracle: task index out of range");
    const auto* disks = dynamic_cast<const PlantedDisksDomain*>(&domain);
    if (disks != nullptr && domain.task_mode(task) == TaskMode::DualGroup)
        return dual_count_by_decomposition(*disks, task, probes_per_cell_axis, probe_cap);
    return oracle_count_by_scan(domain, task, probes_per_cell_axis, probe_cap);
}

OracleSingleAudit oracle_audit_single(const PlantedDisksDomain& domain, TaskId task,
                                      int probes_per_cell_axis, std::size_t probe_cap) {
    OracleSingleAudit audit;
    audit.probe_count = oracle_count_by_scan(domain, task, probes_per_cell_axis, probe_cap);
    audit.closed_form = planted_disks_closed_form_single(domain, task);
    return audit;
}

} // namespace mtmb
