#include "starkfid/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "starkfid/rng.hpp"

namespace starkfid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const EnsembleParams& p) {
    if (p.n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
    if (!(p.gamma_inh_hz > 0.0))
        throw std::invalid_argument("gamma_inh_hz must be > 0");
    if (p.sample_window_hz < p.gamma_inh_hz)
        throw std::invalid_argument("sample_window_hz must be >= gamma_inh_hz");
    if (!(p.l_crystal_m > 0.0))
        throw std::invalid_argument("l_crystal_m must be > 0");
    if (p.class_pairing && p.n_atoms % 2 != 0)
        throw std::invalid_argument("pairing requires even count");
}

// one detuning draw in Hz, truncated to |f| <= window
double draw_detuning_hz(Rng& rng, const EnsembleParams& p) {
    const double w = p.sample_window_hz;
    switch (p.line_shape) {
        case LineShape::lorentzian: {
            // inverse CDF of the truncated Cauchy: exact, one uniform
            const double hwhm = 0.5 * p.gamma_inh_hz;
            const double theta_max = std::atan(w / hwhm);
            return hwhm * std::tan((2.0 * rng.uniform() - 1.0) * theta_max);
        }
        case LineShape::gaussian: {
            const double sigma =
                p.gamma_inh_hz / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
            for (;;) {
                const double f = sigma * rng.normal();
                if (std::abs(f) <= w) return f;
            }
        }
        case LineShape::uniform:
            return (2.0 * rng.uniform() - 1.0) * 0.5 * p.gamma_inh_hz;
    }
    throw std::logic_error("unknown line shape");
}

}  // namespace

std::vector<Atom> sample_ensemble(const EnsembleParams& p) {
    validate(p);
    Rng rng(p.rng_seed);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(p.n_atoms));

    if (p.class_pairing) {
        for (std::int64_t i = 0; i < p.n_atoms; i += 2) {
            Atom a;
            a.delta_nat = kTwoPi * draw_detuning_hz(rng, p);
            a.z = rng.uniform() * p.l_crystal_m;
            a.dipole_class = 1.0;
            Atom b = a;
            b.dipole_class = -1.0;
            atoms.push_back(a);
            atoms.push_back(b);
        }
    } else {
        for (std::int64_t i = 0; i < p.n_atoms; ++i) {
            Atom a;
            a.delta_nat = kTwoPi * draw_detuning_hz(rng, p);
            a.z = rng.uniform() * p.l_crystal_m;
            a.dipole_class = rng.uniform() < 0.5 ? 1.0 : -1.0;
            atoms.push_back(a);
        }
    }
    return atoms;
}

std::complex<double> excitation_weight(double delta, double rabi, double tau_p) {
    const double omega_g = std::hypot(rabi, delta);
    if (omega_g == 0.0) return {0.0, 0.0};
    const double half = 0.5 * omega_g * tau_p;
    const double sh = std::sin(half);
    const double ch = std::cos(half);
    const double s = (rabi / omega_g) * sh;   // excited-state amplitude modulus
    const double d = (delta / omega_g) * sh;
    // rho_eg = (-i s) * conj(c + i d); the common frame phase cancels
    return {-s * d, -s * ch};
}

void excite(std::vector<Atom>& atoms, const OpticalPulse& pulse) {
    if (!(pulse.tau_p_s > 0.0)) throw std::invalid_argument("tau_p_s must be > 0");
    for (const Atom& a : atoms)
        if (a.weight != std::complex<double>(0.0, 0.0))
            throw std::invalid_argument(
                "ensemble already excited; the model supports one pulse per trace");
    for (Atom& a : atoms)
        a.weight = excitation_weight(a.delta_nat - pulse.carrier_detuning_rad_per_s,
                                     pulse.rabi_rad_per_s, pulse.tau_p_s);
}

}  // namespace starkfid
