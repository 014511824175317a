#pragma once

// Isotropic 3D harmonic trap. Temperatures are T/T0 or t = T/Tc.

#include <cmath>
#include <string>

#include "gbec/bose_special.hpp"
#include "gbec/errors.hpp"

namespace gbec::isotropic {

struct IsotropicConfig {
  double n_particles = 1e6;

  void validate() const {
    if (!(n_particles >= 1)) throw DomainError("isotropic trap needs N >= 1");
  }
};

/// Tc / T0 = zeta(3)^{-1/3}.
inline double critical_temperature() { return 1.0 / std::cbrt(zeta3()); }

/// N0 / N = 1 - t^3 below Tc, 0 above.
inline double condensate_fraction(double t) {
  if (!(t >= 0)) throw DomainError("temperature must be >= 0");
  if (t >= 1.0) return 0.0;
  return 1.0 - t * t * t;
}

/// Fugacity parameter above Tc, from t^3 F_3(alpha) = zeta(3) in units of Tc.
inline double alpha_above_tc(double t) {
  if (t == 1.0) return 0.0;
  if (!(t > 1.0)) {
    throw NoSolution("alpha is pinned at 0 below Tc (t = " + std::to_string(t) + ")");
  }
  return bose_fn_inverse(order::three, zeta3() / (t * t * t));
}

/// n_p / N for a low excited level with p = px + py + pz, t = T/Tc.
/// Scales as N^{-2/3}.
inline double excited_occupation(int p_sum, double n_particles, double t) {
  if (p_sum < 1) throw DomainError("excited level needs p_sum >= 1");
  if (!(t > 0 && t <= 1.0)) throw DomainError("excited occupation needs t in (0, 1]");
  if (!(n_particles >= 1)) throw DomainError("N must be >= 1");
  const double t_over_t0 = t * critical_temperature();
  return t_over_t0 / (p_sum * std::pow(n_particles, 2.0 / 3.0));
}

}  // namespace gbec::isotropic
