#include "starkfid/stark.hpp"

#include <stdexcept>

#include "starkfid/ensemble.hpp"

namespace starkfid {

double StarkGeometry::field_at(double z, double v) const {
    if (z < 0.0 || z > l_crystal)
        throw std::invalid_argument("position outside the crystal");
    return v * gradient_norm * (z - 0.5 * l_crystal);
}

double StarkGeometry::detuning_rate_per_volt(const Atom& atom) const {
    if (atom.z < 0.0 || atom.z > l_crystal)
        throw std::invalid_argument("position outside the crystal");
    return atom.dipole_class * stark_coeff * gradient_norm *
           (atom.z - 0.5 * l_crystal);
}

double StarkGeometry::stark_detuning(const Atom& atom, double v) const {
    return detuning_rate_per_volt(atom) * v;
}

}  // namespace starkfid
