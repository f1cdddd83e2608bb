#pragma once

namespace starkfid {

struct Atom;

/// Linearized quadrupole-electrode model: the applied voltage produces a
/// field along the beam axis that is zero at the crystal center and grows
/// linearly towards the end faces, E(z, V) = V * gradient_norm * (z - L/2).
/// stark_coeff is the composite detuning-per-field coefficient (permanent
/// dipole-moment difference, Lorentz local-field factor (eps+2)/3 and
/// orientation already folded in); lorentz_eps is kept for documentation.
struct StarkGeometry {
    double stark_coeff = 50.0;     // rad/s per V/m
    double lorentz_eps = 10.0;     // dielectric constant used in (eps+2)/3
    double gradient_norm = 2.2e5;  // (V/m) per V per m of displacement
    double l_crystal = 6e-3;       // m

    /// Local field at position z for applied voltage v. Throws if z is
    /// outside [0, L].
    double field_at(double z, double v) const;

    /// Stark detuning of one atom at applied voltage v (rad/s). Linear in v,
    /// sign flips with the atom's dipole class.
    double stark_detuning(const Atom& atom, double v) const;

    /// Detuning per applied volt for one atom (rad/s per V); stark_detuning
    /// factors as detuning_rate_per_volt(atom) * v.
    double detuning_rate_per_volt(const Atom& atom) const;
};

}  // namespace starkfid
