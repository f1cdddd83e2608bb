#include "starkfid/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "starkfid/rng.hpp"

namespace starkfid {

namespace {

// Knuth's product method; large means are split so exp(-lambda) never
// underflows. Portable across standard libraries, unlike
// std::poisson_distribution.
std::int64_t poisson_sample(Rng& rng, double lambda) {
    std::int64_t total = 0;
    while (lambda > 500.0) {
        total += poisson_sample(rng, 500.0);
        lambda -= 500.0;
    }
    const double limit = std::exp(-lambda);
    double prod = rng.uniform_pos();
    std::int64_t k = 0;
    while (prod > limit) {
        prod *= rng.uniform_pos();
        ++k;
    }
    total += k;
    return total;
}

}  // namespace

CountsTrace add_shot_noise(const Trace& trace, const DetectionParams& params) {
    if (params.mean_total_photons < 0.0)
        throw std::invalid_argument("mean_total_photons must be >= 0");
    if (!(params.bin_width_s > 0.0))
        throw std::invalid_argument("bin_width_s must be > 0");

    const TimeGrid& grid = trace.grid;
    const double span = grid.t_end_s - grid.t_start_s;
    const int n_bins = std::max(1, static_cast<int>(span / params.bin_width_s + 0.5));

    // attribute each grid point's intensity*dt to its bin
    std::vector<double> bin_weight(n_bins, 0.0);
    const double dt = grid.dt();
    for (int m = 0; m < grid.n_points; ++m) {
        if (trace.intensity[m] < 0.0)
            throw std::invalid_argument("trace intensity must be non-negative");
        int b = static_cast<int>((grid.time(m) - grid.t_start_s) / params.bin_width_s);
        if (b >= n_bins) b = n_bins - 1;
        bin_weight[b] += trace.intensity[m] * dt;
    }

    double total = 0.0;
    for (double w : bin_weight) total += w;

    CountsTrace out;
    out.t_bin_center_s.resize(n_bins);
    out.counts.resize(n_bins);
    for (int b = 0; b < n_bins; ++b)
        out.t_bin_center_s[b] = grid.t_start_s + (b + 0.5) * params.bin_width_s;

    if (params.mean_total_photons == 0.0) {
        return out;  // all bins zero
    }
    if (!(total > 0.0)) throw std::runtime_error("cannot normalize");

    Rng rng(params.rng_seed);
    for (int b = 0; b < n_bins; ++b) {
        const double lambda = params.mean_total_photons * (bin_weight[b] / total);
        out.counts[b] = poisson_sample(rng, lambda);
    }
    return out;
}

}  // namespace starkfid
