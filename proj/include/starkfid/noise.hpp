#pragma once

#include <cstdint>
#include <vector>

#include "starkfid/dynamics.hpp"

namespace starkfid {

struct DetectionParams {
    double mean_total_photons = 50.0;  // expected detected photons per trace
    double bin_width_s = 0.0;
    std::uint64_t rng_seed = 0;
};

struct CountsTrace {
    std::vector<double> t_bin_center_s;
    std::vector<std::int64_t> counts;
};

/// Integrate the intensity per detection bin, normalize the total
/// expectation to mean_total_photons and Poisson-sample each bin.
/// Deterministic given the seed.
CountsTrace add_shot_noise(const Trace& trace, const DetectionParams& params);

}  // namespace starkfid
