#include "mtmb/planar_arm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mtmb/errors.hpp"
#include "mtmb/rng.hpp"

namespace mtmb {

namespace {

PlanarArmParams validated(PlanarArmParams p) {
    if (p.n_situations < 1)
        throw ConfigError("planar_arm: n_situations must be >= 1");
    if (!(p.link1 > 0.0) || !(p.link2 > 0.0))
        throw ConfigError("planar_arm: link lengths must be > 0");
    if (p.wall_x_min > p.wall_x_max)
        throw ConfigError("planar_arm: wall range must satisfy wall_x_min <= wall_x_max");
    if (!(p.wall_x_min < p.link1 + p.link2))
        throw ConfigError("planar_arm: wall is unreachable (wall_x_min >= link1 + link2)");
    if (!(p.cell_size > 0.0))
        throw ConfigError("planar_arm: cell_size must be > 0");
    if (!(p.f_max > 0.0))
        throw ConfigError("planar_arm: f_max must be > 0");
    return p;
}

} // namespace

PlanarArmDomain::PlanarArmDomain(PlanarArmParams params, std::uint64_t seed)
    : params_(validated(std::move(params))),
      bounds_(4, Interval{0.0, 1.0}),
      grid_(-(params_.link1 + params_.link2), 2.0 * (params_.link1 + params_.link2),
            params_.cell_size) {
    RandomStream walls = derive_stream(seed, "wall-situations");
    situations_.resize(params_.n_situations);
    for (WallSituation& s : situations_) {
        s.wall_x = walls.uniform(params_.wall_x_min, params_.wall_x_max);
        // Admissible segment: a stretch of the wall around a random center,
        // clamped into the reachable ordinate band.
        const double r = reach();
        const double center = walls.uniform(-0.5 * r, 0.5 * r);
        const double half = walls.uniform(0.1, 0.3) * r;
        s.segment_lo = std::max(-r, center - half);
        s.segment_hi = std::min(r, center + half);
    }
}

TaskMode PlanarArmDomain::task_mode(TaskId task) const {
    if (task >= task_count())
        throw std::out_of_range("planar_arm: task index out of range");
    return task % 2 == 0 ? TaskMode::SingleGroup : TaskMode::DualGroup;
}

std::vector<std::size_t> PlanarArmDomain::active_dims(TaskId task) const {
    return task_mode(task) == TaskMode::SingleGroup ? std::vector<std::size_t>{0, 1}
                                                    : std::vector<std::size_t>{0, 1, 2, 3};
}

Point PlanarArmDomain::tip_position(double c_a, double c_b) const {
    const double theta1 = -kPi + c_a * 2.0 * kPi;
    const double theta2 = -kPi + c_b * 2.0 * kPi;
    return {params_.link1 * std::cos(theta1) + params_.link2 * std::cos(theta1 + theta2),
            params_.link1 * std::sin(theta1) + params_.link2 * std::sin(theta1 + theta2)};
}

Evaluation PlanarArmDomain::evaluate_on(const WallSituation& s, TaskMode mode,
                                        const Command& c) const {
    if (c.size() != 4)
        throw std::invalid_argument("planar_arm: command must have dimension 4");
    for (double v : c)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("planar_arm: command component out of bounds");

    const Point tip1 = tip_position(c[0], c[1]);
    const double miss1 = std::abs(tip1.x - s.wall_x);
    const bool contact1 = miss1 <= params_.cell_size / 2.0;
    const bool inside1 = contact1 && tip1.y >= s.segment_lo && tip1.y <= s.segment_hi;

    if (mode == TaskMode::SingleGroup) {
        BehaviorKey key{contact1 ? grid_.index(tip1.y) : -1};
        const double fitness =
            inside1 ? params_.f_max
                    : params_.f_max * std::max(0.0, 1.0 - miss1 / params_.link2);
        return {std::move(key), fitness};
    }

    const Point tip2 = tip_position(c[2], c[3]);
    const double miss2 = std::abs(tip2.x - s.wall_x);
    const bool contact2 = miss2 <= params_.cell_size / 2.0;
    const bool inside2 = contact2 && tip2.y >= s.segment_lo && tip2.y <= s.segment_hi;
    BehaviorKey key{contact1 ? grid_.index(tip1.y) : -1, contact2 ? grid_.index(tip2.y) : -1};

    if (contact1 && contact2 && point_dist(tip1, tip2) < tip_separation_min())
        return {std::move(key), 0.0}; // arms collide on the wall
    if (inside1 && inside2)
        return {std::move(key), params_.f_max};
    const double fitness =
        params_.f_max * std::max(0.0, 1.0 - std::max(miss1, miss2) / params_.link2);
    return {std::move(key), std::min(fitness, params_.f_max)};
}

Evaluation PlanarArmDomain::evaluate(TaskId task, const Command& c) const {
    if (task >= task_count())
        throw std::out_of_range("planar_arm: task index out of range");
    return evaluate_on(situations_[task / 2], task_mode(task), c);
}

std::vector<double> PlanarArmDomain::oracle_axis_probes(TaskId task, std::size_t active_dim,
                                                        int probes_per_cell_axis) const {
    if (task >= task_count())
        throw std::out_of_range("planar_arm: task index out of range");
    (void)active_dim;
    if (probes_per_cell_axis < 1)
        throw std::invalid_argument("planar_arm: probes_per_cell_axis must be >= 1");
    // Angle axes have no cell structure of their own; probe them at a density
    // proportional to the ordinate resolution.
    const std::size_t n = static_cast<std::size_t>(grid_.n_cells) *
                          static_cast<std::size_t>(probes_per_cell_axis);
    std::vector<double> probes(n);
    for (std::size_t i = 0; i < n; ++i)
        probes[i] = (i + 0.5) / static_cast<double>(n);
    return probes;
}

std::string PlanarArmDomain::description() const {
    std::ostringstream os;
    os << "planar_arm(n_situations=" << params_.n_situations << ", link1=" << params_.link1
       << ", link2=" << params_.link2 << ", wall_x=[" << params_.wall_x_min << ", "
       << params_.wall_x_max << "], cell_size=" << params_.cell_size
       << ", f_max=" << params_.f_max << ")";
    return os.str();
}

std::uint64_t PlanarArmDomain::spec_hash() const {
    using detail::hash_mix;
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    h = hash_mix(h, static_cast<std::uint64_t>(params_.n_situations));
    for (double v : {params_.link1, params_.link2, params_.wall_x_min, params_.wall_x_max,
                     params_.cell_size, params_.f_max})
        h = hash_mix(h, v);
    for (const WallSituation& s : situations_) {
        h = hash_mix(h, s.wall_x);
        h = hash_mix(h, s.segment_lo);
        h = hash_mix(h, s.segment_hi);
    }
    return h;
}

std::unique_ptr<PlanarArmDomain> planar_arm_build(PlanarArmParams params, std::uint64_t seed) {
    return std::make_unique<PlanarArmDomain>(std::move(params), seed);
}

} // namespace mtmb
