#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace starkfid {

/// One emitter of the inhomogeneously broadened two-level ensemble.
struct Atom {
    double delta_nat = 0.0;            // rad/s, offset from the laser carrier
    double z = 0.0;                    // m, position along the beam axis in [0, L]
    double dipole_class = 1.0;         // +1 or -1 (pseudo-Stark ion class)
    std::complex<double> weight{0.0};  // coherence amplitude, |w| <= 1/2
};

enum class LineShape { lorentzian, gaussian, uniform };

struct EnsembleParams {
    std::int64_t n_atoms = 0;
    LineShape line_shape = LineShape::lorentzian;
    double gamma_inh_hz = 0.0;      // natural inhomogeneous FWHM
    double sample_window_hz = 0.0;  // detuning truncation half-width
    double l_crystal_m = 6e-3;
    bool class_pairing = true;  // emit (+1, -1) twins so polarity symmetry is exact
    std::uint64_t rng_seed = 0;
};

/// Rectangular resonant excitation pulse; t = 0 on the simulation clock is
/// the end of this pulse.
struct OpticalPulse {
    double t0_s = -3e-6;
    double tau_p_s = 3e-6;
    double rabi_rad_per_s = 0.0;             // on-resonance Rabi angular frequency
    double carrier_detuning_rad_per_s = 0.0;  // pulse carrier vs ensemble line center

    double area_rad() const { return rabi_rad_per_s * tau_p_s; }
};

/// Draw the ensemble: detunings i.i.d. from line_shape truncated to the
/// sample window, positions uniform along the crystal, classes paired or
/// Bernoulli. Deterministic given the seed; weights start at zero.
std::vector<Atom> sample_ensemble(const EnsembleParams& params);

/// Coherence ρ_eg of a ground-state two-level atom after a rectangular pulse
/// (exact generalized-Rabi solution). delta is the atom-minus-carrier
/// detuning in rad/s. The returned value subsequently free-evolves as
/// exp(-i*delta_nat*t).
std::complex<double> excitation_weight(double delta, double rabi, double tau_p);

/// Apply the pulse to every atom (single-excitation model; re-exciting an
/// already weighted ensemble is an error).
void excite(std::vector<Atom>& atoms, const OpticalPulse& pulse);

}  // namespace starkfid
