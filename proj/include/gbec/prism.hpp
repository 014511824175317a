#pragma once

// Casimir prism: a periodic box with cross-section D and length L >> D.
// Temperatures use T* = h^2 / (2 pi m k_B a^2) with a = rho^{-1/3}; in these
// units beta h^2 / (2 m a^2) = pi / tau where tau = T / T*.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "gbec/bose_special.hpp"
#include "gbec/errors.hpp"

namespace gbec::prism {

struct PrismConfig {
  double d_over_a = 10.0;
  double l_over_a = 1000.0;

  double n_particles() const { return l_over_a * d_over_a * d_over_a; }

  /// Geometry holding N particles with the given L/D ratio.
  static PrismConfig from_particles(double n_particles, double l_over_d) {
    if (!(n_particles > 0) || !(l_over_d > 0)) throw DomainError("prism needs N > 0 and L/D > 0");
    PrismConfig cfg;
    cfg.d_over_a = std::cbrt(n_particles / l_over_d);
    cfg.l_over_a = l_over_d * cfg.d_over_a;
    return cfg;
  }

  /// Throws when L/D < 10; returns a warning when L/D < 100.
  std::optional<std::string> validate() const {
    if (!(d_over_a > 0) || !(l_over_a > 0)) throw DomainError("prism lengths must be positive");
    const double ratio = l_over_a / d_over_a;
    if (ratio < 10.0) {
      throw DomainError("prism needs L/D >= 10, got " + std::to_string(ratio));
    }
    if (ratio < 100.0) {
      return "L/D = " + std::to_string(ratio) + " is below 100; the prism limit is marginal";
    }
    return std::nullopt;
  }
};

/// Tc / T* = zeta(3/2)^{-2/3}.
inline double critical_temperature() { return std::pow(zeta_three_halves(), -2.0 / 3.0); }

/// f0 = 1 - t^{3/2}.
inline double condensate_fraction(double t) {
  if (!(t >= 0)) throw DomainError("temperature must be >= 0");
  if (t >= 1.0) return 0.0;
  return 1.0 - std::pow(t, 1.5);
}

/// tau = T / T* for t = T / Tc.
inline double reduced_tau(double t) { return t * critical_temperature(); }

/// alpha = (2 pi^2 m / beta h^2) (L / N0)^2 = pi tau (L/a)^2 / N0^2.
inline double alpha_prism(double t, const PrismConfig& cfg) {
  if (!(t > 0 && t < 1)) throw DomainError("alpha_prism needs t in (0, 1)");
  const double n0 = cfg.n_particles() * condensate_fraction(t);
  return std::numbers::pi * reduced_tau(t) * cfg.l_over_a * cfg.l_over_a / (n0 * n0);
}

/// Occupation fraction of the band state (0, 0, s_z).
inline double band_state_fraction(int s_z, double t, const PrismConfig& cfg) {
  const double alpha = alpha_prism(t, cfg);
  const double sz = s_z;
  const double energy = std::numbers::pi / reduced_tau(t) * sz * sz / (cfg.l_over_a * cfg.l_over_a);
  return 1.0 / (cfg.n_particles() * (energy + alpha));
}

/// Sum of band_state_fraction over all signed s_z, in closed form.
inline double band_fraction(double t, const PrismConfig& cfg) {
  const double a = std::numbers::pi / (reduced_tau(t) * cfg.l_over_a * cfg.l_over_a);
  return coth_band_sum(a, alpha_prism(t, cfg)) / cfg.n_particles();
}

/// T_onset / Tc ~ (D/a)^2 / (L/a), below which the ground state is macroscopic.
inline double ground_state_onset(const PrismConfig& cfg) {
  return cfg.d_over_a * cfg.d_over_a / cfg.l_over_a;
}

}  // namespace gbec::prism
