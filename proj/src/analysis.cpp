#include "starkfid/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace starkfid {

namespace {

// FFTW plan creation is not thread-safe
std::mutex fftw_mutex;

void check_same_grid(const Trace& a, const Trace& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("traces must share one time grid");
}

}  // namespace

Spectrum spectrum_of_decay(const Trace& trace, SpectrumMode mode) {
    const std::size_t n = trace.amplitude.size();
    if (n < 2) throw std::invalid_argument("trace too short for a spectrum");
    const double dt = trace.grid.dt();

    const std::size_t n_fft = std::bit_ceil(8 * n);
    std::vector<std::complex<double>> in(n_fft, std::complex<double>(0.0));
    if (mode == SpectrumMode::field) {
        std::copy(trace.amplitude.begin(), trace.amplitude.end(), in.begin());
    } else {
        for (std::size_t m = 0; m < n; ++m) in[m] = trace.intensity[m];
    }
    std::vector<std::complex<double>> out(n_fft);

    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_plan plan = fftw_plan_dft_1d(
            static_cast<int>(n_fft), reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    // an emitter at detuning delta (exp(-i*delta*t)) lands at f = delta/2pi;
    // unwrap the DFT bins onto an ascending axis
    Spectrum spec;
    spec.freq_hz.resize(n_fft);
    spec.density.resize(n_fft);
    const double df = 1.0 / (static_cast<double>(n_fft) * dt);
    const std::size_t half = n_fft / 2;
    for (std::size_t k = 0; k < n_fft; ++k) {
        const std::size_t src = (k + half) % n_fft;
        const double f = (static_cast<double>(k) - static_cast<double>(half)) * df;
        spec.freq_hz[k] = f;
        spec.density[k] = std::norm(out[src] * dt);
    }

    const double i0 = trace.intensity.front();
    if (trace.intensity.back() > 0.01 * i0) spec.short_trace = true;
    return spec;
}

FwhmResult fwhm(const Spectrum& spectrum) {
    const std::size_t n = spectrum.density.size();
    if (n < 3) throw std::invalid_argument("spectrum too short");
    std::size_t i_max = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (spectrum.density[i] > spectrum.density[i_max]) i_max = i;
    const double half = 0.5 * spectrum.density[i_max];
    if (!(half > 0.0)) throw std::invalid_argument("spectrum has no positive maximum");

    // outermost crossings, scanning inwards from both ends
    auto interp = [&](std::size_t lo, std::size_t hi) {
        const double y0 = spectrum.density[lo];
        const double y1 = spectrum.density[hi];
        const double x0 = spectrum.freq_hz[lo];
        const double x1 = spectrum.freq_hz[hi];
        if (y1 == y0) return 0.5 * (x0 + x1);
        return x0 + (x1 - x0) * (half - y0) / (y1 - y0);
    };

    std::size_t left = i_max;
    for (std::size_t i = 0; i < i_max; ++i)
        if (spectrum.density[i] < half && spectrum.density[i + 1] >= half) {
            left = i;
            break;
        }
    std::size_t right = i_max;
    for (std::size_t i = n - 1; i > i_max; --i)
        if (spectrum.density[i] < half && spectrum.density[i - 1] >= half) {
            right = i;
            break;
        }
    if (left == i_max || right == i_max)
        throw std::invalid_argument("spectrum does not fall below half maximum");

    FwhmResult result;
    result.fwhm_hz = interp(right, right - 1) - interp(left, left + 1);

    // count all crossings of the half level to flag multimodal spectra
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool above0 = spectrum.density[i] >= half;
        const bool above1 = spectrum.density[i + 1] >= half;
        if (above0 != above1) ++crossings;
    }
    result.multimodal = crossings > 2;
    return result;
}

double visibility(const Trace& perturbed, const Trace& reference,
                  const TimeWindow& window) {
    check_same_grid(perturbed, reference);
    if (!(window.hi_s > window.lo_s))
        throw std::invalid_argument("search window must have hi > lo");

    const int n = perturbed.grid.n_points;
    int best = -1;
    for (int m = 0; m < n; ++m) {
        const double t = perturbed.grid.time(m);
        if (t < window.lo_s || t > window.hi_s) continue;
        if (best < 0 || perturbed.intensity[m] > perturbed.intensity[best]) best = m;
    }
    if (best < 0) throw std::invalid_argument("search window contains no grid points");

    const double ref_peak =
        *std::max_element(reference.intensity.begin(), reference.intensity.end());
    if (reference.intensity[best] < 1e-30 * ref_peak)
        throw std::runtime_error("reference too small for ratio");
    return perturbed.intensity[best] / reference.intensity[best];
}

std::vector<double> detect_revivals(const Trace& perturbed, const Trace& reference,
                                    double threshold) {
    check_same_grid(perturbed, reference);
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("threshold must be in (0, 1)");

    const int n = perturbed.grid.n_points;
    const double ref_peak =
        *std::max_element(reference.intensity.begin(), reference.intensity.end());
    const double floor = 1e-30 * ref_peak;
    std::vector<double> ratio(n);
    for (int m = 0; m < n; ++m)
        ratio[m] = reference.intensity[m] > floor
                       ? perturbed.intensity[m] / reference.intensity[m]
                       : 0.0;

    std::vector<double> times;
    // detection arms only after the ratio has collapsed below threshold/4, so
    // the t=0 region (ratio 1 before the field acts) is never reported
    bool armed = false;
    int candidate = -1;
    const double rearm = 0.25 * threshold;
    for (int m = 1; m + 1 < n; ++m) {
        if (ratio[m] < rearm) {
            if (candidate >= 0) {
                // quadratic peak refinement from the three points around the max
                const double y0 = ratio[candidate - 1];
                const double y1 = ratio[candidate];
                const double y2 = ratio[candidate + 1];
                const double denom = y0 - 2.0 * y1 + y2;
                double t = perturbed.grid.time(candidate);
                if (denom != 0.0)
                    t += 0.5 * perturbed.grid.dt() * (y0 - y2) / denom;
                times.push_back(t);
                candidate = -1;
            }
            armed = true;
            continue;
        }
        if (!armed) continue;
        if (ratio[m] > threshold && ratio[m] >= ratio[m - 1] && ratio[m] > ratio[m + 1])
            if (candidate < 0 || ratio[m] > ratio[candidate]) candidate = m;
    }
    if (candidate >= 0) {
        const double y0 = ratio[candidate - 1];
        const double y1 = ratio[candidate];
        const double y2 = ratio[candidate + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        double t = perturbed.grid.time(candidate);
        if (denom != 0.0) t += 0.5 * perturbed.grid.dt() * (y0 - y2) / denom;
        times.push_back(t);
    }
    return times;
}

LinearFit fit_revival_slope(const std::vector<std::pair<double, double>>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 3) throw std::invalid_argument("slope fit needs >= 3 pairs");

    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : pairs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("degenerate abscissae");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (const auto& [x, y] : pairs) {
        const double r = y - (fit.intercept + fit.slope * x);
        sse += r * r;
    }
    fit.slope_err =
        n > 2 ? std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
    fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

}  // namespace starkfid
