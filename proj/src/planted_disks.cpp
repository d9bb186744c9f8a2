#include "mtmb/planted_disks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mtmb/errors.hpp"

namespace mtmb {

namespace {

void validate(const PlantedDisksParams& p) {
    if (p.n_situations < 1)
        throw ConfigError("planted_disks: n_situations must be >= 1");
    if (p.disks_per_group < 1)
        throw ConfigError("planted_disks: disks_per_group must be >= 1");
    if (p.dispersion < 0.0)
        throw ConfigError("planted_disks: dispersion must be >= 0");
    if (!(p.radius > 0.0))
        throw ConfigError("planted_disks: radius must be > 0");
    if (!(p.decay_length > 0.0))
        throw ConfigError("planted_disks: decay_length must be > 0");
    if (!(p.exclusion > 0.0))
        throw ConfigError("planted_disks: exclusion must be > 0");
    if (!(p.cell_size > 0.0) || p.cell_size > 1.0)
        throw ConfigError("planted_disks: cell_size must be in (0, 1]");
    if (!(p.f_max > 0.0))
        throw ConfigError("planted_disks: f_max must be > 0");
    for (const auto* centers : {&p.shared_centers_g1, &p.shared_centers_g2}) {
        if (!centers->empty() && centers->size() != p.disks_per_group)
            throw ConfigError("planted_disks: explicit shared centers must list exactly "
                              "disks_per_group points");
        for (Point q : *centers)
            if (q.x < 0.0 || q.x > 1.0 || q.y < 0.0 || q.y > 1.0)
                throw ConfigError("planted_disks: shared centers must lie in the unit square");
    }
}

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

PlantedDisksParams validated(PlantedDisksParams p) {
    validate(p);
    return p;
}

} // namespace

PlantedDisksDomain::PlantedDisksDomain(PlantedDisksParams params, std::uint64_t seed)
    : params_(validated(std::move(params))),
      bounds_(4, Interval{0.0, 1.0}),
      grid_(0.0, 1.0, params_.cell_size) {
    RandomStream centers = derive_stream(seed, "disk-centers");
    auto draw_shared = [&](std::vector<Point>& gamma) {
        if (!gamma.empty())
            return;
        gamma.resize(params_.disks_per_group);
        for (Point& q : gamma)
            q = {centers.uniform01(), centers.uniform01()};
    };
    draw_shared(params_.shared_centers_g1);
    draw_shared(params_.shared_centers_g2);

    situations_.resize(params_.n_situations);
    for (DiskSituation& s : situations_) {
        auto jitter = [&](const std::vector<Point>& gamma) {
            std::vector<Point> out(gamma.size());
            for (std::size_t k = 0; k < gamma.size(); ++k) {
                const double ux = centers.uniform(-1.0, 1.0);
                const double uy = centers.uniform(-1.0, 1.0);
                out[k] = {clip01(gamma[k].x + params_.dispersion * ux),
                          clip01(gamma[k].y + params_.dispersion * uy)};
            }
            return out;
        };
        s.group1 = jitter(params_.shared_centers_g1);
        s.group2 = jitter(params_.shared_centers_g2);
    }
}

TaskMode PlantedDisksDomain::task_mode(TaskId task) const {
    if (task >= task_count())
        throw std::out_of_range("planted_disks: task index out of range");
    return task % 2 == 0 ? TaskMode::SingleGroup : TaskMode::DualGroup;
}

std::vector<std::size_t> PlantedDisksDomain::active_dims(TaskId task) const {
    return task_mode(task) == TaskMode::SingleGroup ? std::vector<std::size_t>{0, 1}
                                                    : std::vector<std::size_t>{0, 1, 2, 3};
}

double PlantedDisksDomain::distance_to_disks(Point p, std::span<const Point> centers,
                                             double radius) {
    double best = std::numeric_limits<double>::infinity();
    for (Point c : centers)
        best = std::min(best, point_dist(p, c));
    return std::max(0.0, best - radius);
}

double PlantedDisksDomain::decay_fitness(double d) const {
    if (d == 0.0)
        return params_.f_max;
    return params_.f_max * std::max(0.0, 1.0 - d / params_.decay_length);
}

Evaluation PlantedDisksDomain::evaluate(TaskId task, const Command& c) const {
    if (task >= task_count())
        throw std::out_of_range("planted_disks: task index out of range");
    if (c.size() != 4)
        throw std::invalid_argument("planted_disks: command must have dimension 4");
    for (double v : c)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("planted_disks: command component out of bounds");

    const DiskSituation& s = situations_[task / 2];
    const Point p1{c[0], c[1]};

    if (task_mode(task) == TaskMode::SingleGroup) {
        BehaviorKey key{grid_.index(c[0]), grid_.index(c[1])};
        const double d = distance_to_disks(p1, s.group1, params_.radius);
        return {std::move(key), decay_fitness(d)};
    }

    const Point p2{c[2], c[3]};
    BehaviorKey key{grid_.index(c[0]), grid_.index(c[1]), grid_.index(c[2]), grid_.index(c[3])};
    if (point_dist(p1, p2) < params_.exclusion)
        return {std::move(key), 0.0};
    const double d = std::max(distance_to_disks(p1, s.group1, params_.radius),
                              distance_to_disks(p2, s.group2, params_.radius));
    return {std::move(key), decay_fitness(d)};
}

std::vector<double> PlantedDisksDomain::oracle_axis_probes(TaskId task, std::size_t active_dim,
                                                           int probes_per_cell_axis) const {
    if (task >= task_count())
        throw std::out_of_range("planted_disks: task index out of range");
    (void)active_dim; // all axes share the unit-square grid
    if (probes_per_cell_axis < 1)
        throw std::invalid_argument("planted_disks: probes_per_cell_axis must be >= 1");
    std::vector<double> probes;
    probes.reserve(static_cast<std::size_t>(grid_.n_cells) * probes_per_cell_axis);
    for (int cell = 0; cell < grid_.n_cells; ++cell)
        for (int p = 0; p < probes_per_cell_axis; ++p) {
            const double frac = (p + 0.5) / probes_per_cell_axis;
            probes.push_back(std::min(1.0, grid_.cell_lo(cell) + frac * grid_.h));
        }
    return probes;
}

std::string PlantedDisksDomain::description() const {
    std::ostringstream os;
    os << "planted_disks(n_situations=" << params_.n_situations
       << ", disks_per_group=" << params_.disks_per_group
       << ", dispersion=" << params_.dispersion << ", radius=" << params_.radius
       << ", decay_length=" << params_.decay_length << ", exclusion=" << params_.exclusion
       << ", cell_size=" << params_.cell_size << ", f_max=" << params_.f_max << ")";
    return os.str();
}

std::uint64_t PlantedDisksDomain::spec_hash() const {
    using detail::hash_mix;
    std::uint64_t h = 0x517cc1b727220a95ULL;
    h = hash_mix(h, static_cast<std::uint64_t>(params_.n_situations));
    h = hash_mix(h, static_cast<std::uint64_t>(params_.disks_per_group));
    for (double v : {params_.dispersion, params_.radius, params_.decay_length, params_.exclusion,
                     params_.cell_size, params_.f_max})
        h = hash_mix(h, v);
    for (const DiskSituation& s : situations_)
        for (const auto* group : {&s.group1, &s.group2})
            for (Point q : *group) {
                h = hash_mix(h, q.x);
                h = hash_mix(h, q.y);
            }
    return h;
}

std::unique_ptr<PlantedDisksDomain> planted_disks_build(PlantedDisksParams params,
                                                        std::uint64_t seed) {
    return std::make_unique<PlantedDisksDomain>(std::move(params), seed);
}

} // namespace mtmb
