#pragma once

// Channel potential: periodic in x, harmonic in z, T_x = T_z = T0.
// gamma = alpha L^2 / a^2 is the scaled chemical parameter; the band is p_z = 0.

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gbec/bose_special.hpp"
#include "gbec/errors.hpp"
#include "gbec/numerics.hpp"

namespace gbec::channel {

struct ChannelConfig {
  double n_particles = 1e6;

  void validate() const {
    if (!(n_particles >= 1)) throw DomainError("channel needs N >= 1");
  }
};

/// Tc / T0 = (sqrt(pi) zeta(3/2))^{-2/3}.
inline double critical_temperature() {
  return std::pow(std::sqrt(std::numbers::pi) * zeta_three_halves(), -2.0 / 3.0);
}

/// f0 = 1 - t^{3/2} below Tc.
inline double condensate_fraction(double t) {
  if (!(t >= 0)) throw DomainError("temperature must be >= 0");
  if (t >= 1.0) return 0.0;
  return 1.0 - std::pow(t, 1.5);
}

/// Coefficient of s^2 in the band denominators, T0 / T.
inline double band_stiffness(double t) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  return 1.0 / (t * critical_temperature());
}

/// Band fraction sum_s 1 / ((T0/T) s^2 + gamma) in closed form.
inline double band_fraction(double t, double gamma) {
  return coth_band_sum(band_stiffness(t), gamma);
}

/// gamma such that the p_z = 0 band holds the whole condensate f0(t).
/// The reduced equation carries no N dependence; the N argument is unused.
inline double solve_gamma(double t, double /*n_particles*/ = 1e6) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  if (t >= 1.0) throw NoSolution("no band condensate at t >= 1");
  const double a = band_stiffness(t);
  const double f0 = condensate_fraction(t);
  auto residual = [&](double log_gamma) { return coth_band_sum(a, std::exp(log_gamma)) - f0; };
  return std::exp(numerics::bisect(residual, -30.0, 30.0, 1e-16).root);
}

/// n_{s,0} / N = 1 / ((T0/T) s^2 + gamma).
inline double per_state_fraction(int s, double gamma, double t) {
  if (!(gamma > 0)) throw DomainError("gamma must be > 0");
  if (!(t > 0 && t < 1)) throw DomainError("per-state fraction needs t in (0, 1)");
  const double sd = s;
  return 1.0 / (band_stiffness(t) * sd * sd + gamma);
}

/// gamma from the finite-N band equation sum_s 1/(exp((a s^2 + gamma)/N) - 1) = N f0,
/// which keeps the Bose denominators exact instead of linearising them.
inline double solve_gamma_finite(double t, double n_particles) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  if (t >= 1.0) throw NoSolution("no band condensate at t >= 1");
  if (!(n_particles >= 1)) throw DomainError("N must be >= 1");
  const double a = band_stiffness(t);
  const double target = n_particles * condensate_fraction(t);
  const double s_max = std::ceil(std::sqrt(60.0 * n_particles / a)) + 1.0;
  auto residual = [&](double log_gamma) {
    const double gamma = std::exp(log_gamma);
    long double sum = 1.0L / std::expm1(gamma / n_particles);
    for (double s = 1.0; s <= s_max; s += 1.0) {
      double x = (a * s * s + gamma) / n_particles;
      if (x > 60.0) break;
      sum += 2.0L / std::expm1(x);
    }
    return static_cast<double>(sum) - target;
  };
  return std::exp(numerics::bisect(residual, -30.0, 30.0, 1e-15).root);
}

/// Ground-state contribution to the density at the origin,
/// rho_0(0) = |psi_0(0)|^2 n00 / L, in units where the oscillator length is a
/// and L/a = sqrt(N).
inline double central_density(double t, double n_particles) {
  const double gamma = solve_gamma_finite(t, n_particles);
  const double n00 = 1.0 / std::expm1(gamma / n_particles);
  return n00 / (std::sqrt(std::numbers::pi) * std::pow(n_particles, 0.75));
}

/// Fitted log-log exponent of the central density against N at fixed t.
inline double central_density_scaling(std::span<const double> n_ladder, double t) {
  if (n_ladder.size() < 3) {
    throw InsufficientData("central density fit needs at least 3 N values, got " +
                           std::to_string(n_ladder.size()));
  }
  std::vector<double> rho;
  rho.reserve(n_ladder.size());
  for (double n : n_ladder) rho.push_back(central_density(t, n));
  return numerics::log_log_fit(n_ladder, rho).slope;
}

}  // namespace gbec::channel
