// planar_arm.hpp — two-link arm wall-contact domain, second taker of the
// task-domain contract.
//
// Commands are normalized joint angles: dims 0-1 drive arm 1, dims 2-3 arm 2,
// each mapped from [0,1] to [-pi, pi]. A situation plants a vertical wall at
// abscissa w with an admissible contact segment on it. A tip is "in contact"
// when its abscissa is within h/2 of the wall; the behavior is then the cell
// index of the tip ordinate, and the sentinel -1 otherwise. Fitness is f_max
// on contact inside the segment and decays with the wall miss distance. The
// dual task needs both tips in contact inside the segment and at least h/2
// apart; closer tips collide and score zero.
#pragma once

#include <memory>

#include "mtmb/domain.hpp"
#include "mtmb/planted_disks.hpp" // Point

namespace mtmb {

struct PlanarArmParams {
    std::size_t n_situations = 0;
    double link1 = 0.5;
    double link2 = 0.5;
    double wall_x_min = 0.0;
    double wall_x_max = 0.0;
    double cell_size = 0.1; // h, over the tip ordinate
    double f_max = 10.0;
};

struct WallSituation {
    double wall_x = 0.0;
    double segment_lo = 0.0;
    double segment_hi = 0.0;
};

class PlanarArmDomain final : public TaskDomain {
public:
    PlanarArmDomain(PlanarArmParams params, std::uint64_t seed);

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

    const PlanarArmParams& params() const { return params_; }
    const WallSituation& situation(std::size_t s) const { return situations_.at(s); }
    double reach() const { return params_.link1 + params_.link2; }
    double tip_separation_min() const { return params_.cell_size / 2.0; }

    /// Forward kinematics for one arm from two normalized angles.
    Point tip_position(double c_a, double c_b) const;

    /// Evaluate against an explicit situation (tests build edge-case walls
    /// the sampler never draws).
    Evaluation evaluate_on(const WallSituation& s, TaskMode mode, const Command& c) const;

private:
    PlanarArmParams params_;
    std::vector<Interval> bounds_;
    std::vector<WallSituation> situations_;
    detail::CellGrid grid_; // over tip ordinate [-reach, reach]
};

std::unique_ptr<PlanarArmDomain> planar_arm_build(PlanarArmParams params, std::uint64_t seed);

} // namespace mtmb
