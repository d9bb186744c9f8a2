#include "mtmb/variation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mtmb {

void validate(const VariationConfig& cfg) {
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0)
        throw std::invalid_argument("variation: crossover_rate must be in [0, 1]");
    if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0)
        throw std::invalid_argument("variation: mutation_rate must be in [0, 1]");
    if (!(cfg.sigma_frac > 0.0) || cfg.sigma_frac > 1.0)
        throw std::invalid_argument("variation: sigma_frac must be in (0, 1]");
}

Command crossover_uniform(const Command& parent_a, const Command& parent_b,
                          const VariationConfig& cfg, RandomStream& rng) {
    if (parent_a.size() != parent_b.size())
        throw std::invalid_argument("crossover_uniform: parents must have equal dimension (" +
                                    std::to_string(parent_a.size()) + " vs " +
                                    std::to_string(parent_b.size()) + ")");
    Command child(parent_a.size());
    for (std::size_t d = 0; d < child.size(); ++d)
        child[d] = rng.bernoulli(cfg.crossover_rate) ? parent_b[d] : parent_a[d];
    return child;
}

Command mutate_gaussian(const Command& c, std::span<const Interval> bounds,
                        const VariationConfig& cfg, RandomStream& rng) {
    if (c.size() != bounds.size())
        throw std::invalid_argument("mutate_gaussian: command/bounds dimension mismatch");
    for (std::size_t d = 0; d < c.size(); ++d)
        if (c[d] < bounds[d].lo || c[d] > bounds[d].hi)
            throw std::invalid_argument("mutate_gaussian: input component " + std::to_string(d) +
                                        " is out of bounds");

    std::vector<bool> mask(c.size());
    auto draw_mask = [&] {
        bool any = false;
        for (std::size_t d = 0; d < c.size(); ++d) {
            mask[d] = rng.bernoulli(cfg.mutation_rate);
            any = any || mask[d];
        }
        return any;
    };
    if (!draw_mask() && !draw_mask())
        mask[rng.index(c.size())] = true; // children never equal their parent

    Command out = c;
    for (std::size_t d = 0; d < c.size(); ++d) {
        if (!mask[d])
            continue;
        const double sigma = cfg.sigma_frac * (bounds[d].hi - bounds[d].lo);
        out[d] = std::clamp(c[d] + sigma * rng.normal(), bounds[d].lo, bounds[d].hi);
    }
    return out;
}

} // namespace mtmb
