#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "starkfid/dynamics.hpp"

namespace starkfid {

enum class SpectrumMode {
    field,     // transform the complex amplitude (default)
    intensity  // transform |A|^2; provided for comparison
};

/// One-sided spectral density |A~(f)|^2 of a decay trace.
struct Spectrum {
    std::vector<double> freq_hz;  // ascending
    std::vector<double> density;
    bool short_trace = false;  // trace did not decay below 1% of I(0)
};

/// DFT of the trace (zero-padded at least 8x) on an ascending frequency
/// grid. Normalized so that sum(density)*df equals sum(|a|^2)*dt.
Spectrum spectrum_of_decay(const Trace& trace, SpectrumMode mode = SpectrumMode::field);

struct FwhmResult {
    double fwhm_hz = 0.0;
    bool multimodal = false;  // half maximum crossed more than twice
};

/// Width between the outermost half-maximum crossings, linearly
/// interpolated between bins.
FwhmResult fwhm(const Spectrum& spectrum);

struct TimeWindow {
    double lo_s = 0.0;
    double hi_s = 0.0;
};

/// I_pert(t*) / I_ref(t*) with t* the perturbed-intensity maximum inside the
/// window; the reference is read at the same time.
double visibility(const Trace& perturbed, const Trace& reference,
                  const TimeWindow& window);

/// Times of ratio maxima I_pert/I_ref above threshold, one per period
/// bounded by collapses below threshold/4, peak position refined by
/// quadratic interpolation.
std::vector<double> detect_revivals(const Trace& perturbed, const Trace& reference,
                                    double threshold = 0.2);

struct LinearFit {
    double slope = 0.0;
    double slope_err = 0.0;
    double r2 = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares through (tau, t_revival) pairs; needs >= 3 points.
LinearFit fit_revival_slope(const std::vector<std::pair<double, double>>& pairs);

/// Observables extracted from one perturbed/reference run.
struct AnalysisReport {
    double fwhm_hz = std::nan("");
    bool spectrum_multimodal = false;
    bool spectrum_short_trace = false;
    std::vector<double> revival_times_s;
    double visibility = std::nan("");
    double fit_slope = std::nan("");
    double fit_slope_err = std::nan("");
    double fit_r2 = std::nan("");
};

}  // namespace starkfid
