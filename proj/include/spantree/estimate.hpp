#pragma once

#include <cstdint>
#include <optional>

#include "spantree/grid.hpp"
#include "spantree/stats.hpp"

namespace spantree {

enum class Model { Ust, Mst, Est, Bernoulli, Droplet, Vacant };

/* One Monte Carlo point estimate with its sampling context. p_hat is a
 * probability with a Wilson 95% interval, except for mean-type observables
 * where it is a sample mean with a normal-approximation interval. */
struct EstimateRecord {
    Model model = Model::Ust;
    std::optional<AnnulusSpec> annulus;
    std::optional<Rect> rect;
    int k = 0;
    double delta = 0.0;
    std::int64_t n_samples = 0;
    std::int64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;

    Interval ci() const { return {ci_low, ci_high}; }
};

} // namespace spantree
