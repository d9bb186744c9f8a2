// planted_disks.hpp — synthetic desk-scale domain with planted solution disks.
//
// Commands live in [0,1]^4. Each situation plants one or two groups of disks
// in the unit square; the single-group task reads the first two command
// coordinates as a point, the dual-group task reads two points and must place
// each inside its own group while keeping them at least `exclusion` apart
// (placing them closer scores zero, a deceptive trap). Fitness is f_max on
// the disks and decays linearly with distance over `decay_length`, so most of
// the space is a flat zero plateau. Behavior is the cell index of each active
// point on an h-grid of the unit square.
#pragma once

#include <cmath>
#include <memory>

#include "mtmb/domain.hpp"

namespace mtmb {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double point_dist(Point a, Point b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct PlantedDisksParams {
    std::size_t n_situations = 0;
    std::size_t disks_per_group = 1;  // K
    double dispersion = 0.0;          // rho: per-situation center jitter
    double radius = 0.1;              // r
    double decay_length = 0.2;        // lambda
    double exclusion = 0.05;          // delta, dual-group only
    double cell_size = 0.1;           // h
    double f_max = 10.0;
    // Shared group centers; drawn from the seed when left empty.
    std::vector<Point> shared_centers_g1;
    std::vector<Point> shared_centers_g2;
};

/// One situation's planted geometry; tasks 2s (single) and 2s+1 (dual) share
/// group 1.
struct DiskSituation {
    std::vector<Point> group1;
    std::vector<Point> group2;
};

class PlantedDisksDomain final : public TaskDomain {
public:
    PlantedDisksDomain(PlantedDisksParams params, std::uint64_t seed);

    std::size_t dimension() const override { return 4; }
    std::span<const Interval> bounds() const override { return bounds_; }
    double f_max() const override { return params_.f_max; }
    std::size_t task_count() const override { return 2 * params_.n_situations; }
    TaskMode task_mode(TaskId task) const override;
    std::vector<std::size_t> active_dims(TaskId task) const override;
    Evaluation evaluate(TaskId task, const Command& c) const override;
    std::vector<double> oracle_axis_probes(TaskId task, std::size_t active_dim,
                                           int probes_per_cell_axis) const override;
    std::string description() const override;
    std::uint64_t spec_hash() const override;

    const PlantedDisksParams& params() const { return params_; }
    const DiskSituation& situation(std::size_t s) const { return situations_.at(s); }
    const detail::CellGrid& grid() const { return grid_; }

    /// Distance from p to the union of disks (0 inside), sharing the exact
    /// float path with evaluate so oracles can reproduce fitness bit-for-bit.
    static double distance_to_disks(Point p, std::span<const Point> centers, double radius);
    double decay_fitness(double d) const;

private:
    PlantedDisksParams params_;
    std::vector<Interval> bounds_;
    std::vector<DiskSituation> situations_;
    detail::CellGrid grid_;
};

std::unique_ptr<PlantedDisksDomain> planted_disks_build(PlantedDisksParams params,
                                                        std::uint64_t seed);

} // namespace mtmb
