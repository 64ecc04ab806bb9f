#include "gouysim/physics.hpp"

#include <cmath>

namespace gouysim {

void AtomParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw GuardError("atom mass must be > 0");
  if (!(v_z > 0.0) || !std::isfinite(v_z)) throw GuardError("atom v_z must be > 0");
  if (!(omega_i < omega_g && omega_g < omega_e))
    throw GuardError("atom levels must satisfy omega_i < omega_g < omega_e");
}

}  // namespace gouysim
