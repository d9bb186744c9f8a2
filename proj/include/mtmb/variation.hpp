// variation.hpp — crossover and mutation over bounded command vectors.
#pragma once

#include <span>

#include "mtmb/archive.hpp"
#include "mtmb/rng.hpp"

namespace mtmb {

/// Inclusive per-dimension bounds.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct VariationConfig {
    double crossover_rate = 0.5; // per-dimension probability of taking parent_b
    double mutation_rate = 1.0;  // per-dimension probability of perturbing
    double sigma_frac = 0.1;     // Gaussian sigma as a fraction of (hi - lo)
};

/// Throws on rates outside [0,1] or sigma_frac outside (0,1].
void validate(const VariationConfig& cfg);

/// Per dimension, the child takes parent_b's value with probability
/// crossover_rate, else parent_a's. Consumes exactly dim draws.
Command crossover_uniform(const Command& parent_a, const Command& parent_b,
                          const VariationConfig& cfg, RandomStream& rng);

/// Per dimension, with probability mutation_rate, add Gaussian noise with
/// sigma = sigma_frac * (hi - lo), then clip into bounds. If no dimension is
/// selected, the mask is redrawn once; if still empty, one uniformly chosen
/// dimension is forced. Draw order: mask, (re-mask, forced index,) noise.
Command mutate_gaussian(const Command& c, std::span<const Interval> bounds,
                        const VariationConfig& cfg, RandomStream& rng);

} // namespace mtmb
