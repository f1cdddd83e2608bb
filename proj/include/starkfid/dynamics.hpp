#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "starkfid/ensemble.hpp"
#include "starkfid/sequence.hpp"
#include "starkfid/stark.hpp"

namespace starkfid {

struct TimeGrid {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    int n_points = 0;

    double dt() const { return (t_end_s - t_start_s) / (n_points - 1); }
    double time(int m) const { return t_start_s + m * dt(); }
    bool operator==(const TimeGrid&) const = default;
};

struct TraceMetadata {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string params_digest;
    std::string mode;
};

/// Collective forward-mode emission on a uniform time grid (arbitrary units).
struct Trace {
    TimeGrid grid;
    std::vector<std::complex<double>> amplitude;
    std::vector<double> intensity;  // |amplitude|^2 pointwise
    TraceMetadata metadata;
    std::vector<std::string> warnings;
};

struct DecoherenceParams {
    double t2_s = std::numeric_limits<double>::infinity();
    bool beer_lambert = false;
    double alpha_l = 2.0;  // total absorption depth, used only if beer_lambert
};

enum class ReductionMode {
    deterministic,  // fixed block-pairwise reduction: bit-reproducible across
                    // runs and thread counts
    relaxed         // per-thread chunks combined in thread order; may differ
                    // from deterministic by ~1e-10 relative
};

struct ComputeOptions {
    ReductionMode mode = ReductionMode::deterministic;
    int n_threads = 0;  // 0 = hardware concurrency
};

/// Stark phase of one atom at time t (t = 0 is the end of the optical
/// pulse): detuning-rate-per-volt times the exact voltage integral.
double stark_phase(const Atom& atom, const StarkGeometry& geom,
                   const VoltageTimeline& tl, double t_s);

/// Weighted phasor sum over the ensemble: A(t) = sum_j b_j w_j
/// exp(-i(delta_j t + phi_S,j(t))) exp(-t/T2), I = |A|^2. The reduction
/// order is fixed in deterministic mode, so results are bit-reproducible.
Trace fid_trace(const std::vector<Atom>& atoms, const StarkGeometry& geom,
                const VoltageTimeline& tl, const TimeGrid& grid,
                const DecoherenceParams& dec, const ComputeOptions& opts = {});

struct TracePair {
    Trace perturbed;
    Trace reference;
};

/// Perturbed + reference traces sharing one ensemble realization; the
/// reference run uses an identically zero timeline.
TracePair run_with_reference(const std::vector<Atom>& atoms,
                             const StarkGeometry& geom, const VoltageTimeline& tl,
                             const TimeGrid& grid, const DecoherenceParams& dec,
                             const ComputeOptions& opts = {});

}  // namespace starkfid
