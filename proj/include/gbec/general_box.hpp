#pragma once

// Periodic box with sides L_i = a H^{nu_i}, nu1 >= nu2 >= nu3 > 0, sum nu_i = 1.
// The condensation type depends only on nu1 relative to 1/2.

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gbec/bose_special.hpp"
#include "gbec/errors.hpp"
#include "gbec/numerics.hpp"
#include "gbec/prism.hpp"

namespace gbec::box {

enum class GbecType { TypeI, TypeII, TypeIII };

inline const char* to_string(GbecType type) {
  switch (type) {
    case GbecType::TypeI: return "TypeI";
    case GbecType::TypeII: return "TypeII";
    case GbecType::TypeIII: return "TypeIII";
  }
  return "unknown";
}

inline constexpr double kExponentTolerance = 1e-12;
inline constexpr double kProximityWarning = 1e-3;

struct BoxExponents {
  std::array<double, 3> nu{1.0 / 3, 1.0 / 3, 1.0 / 3};
  // Set when nu1 was given as an exact fraction equal to 1/2.
  bool nu1_exact_half = false;

  double nu1() const { return nu[0]; }

  void validate() const {
    for (double v : nu) {
      if (!(v > 0)) throw InvalidExponents("every exponent must be positive");
    }
    if (nu[0] < nu[1] || nu[1] < nu[2]) {
      throw InvalidExponents("exponents must be ordered nu1 >= nu2 >= nu3");
    }
    const double sum = nu[0] + nu[1] + nu[2];
    if (std::fabs(sum - 1.0) > kExponentTolerance) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.15g", sum);
      throw InvalidExponents(std::string("exponents must sum to 1, got ") + buf);
    }
  }

  /// Parses "nu1,nu2,nu3"; each entry may be a decimal or a fraction "p/q".
  static BoxExponents parse(const std::string& text) {
    BoxExponents out;
    std::stringstream ss(text);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 3) throw InvalidExponents("expected three comma-separated exponents");
    std::array<bool, 3> half{};
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string& p = parts[i];
      try {
        auto slash = p.find('/');
        if (slash == std::string::npos) {
          std::size_t used = 0;
          out.nu[i] = std::stod(p, &used);
          if (p.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(p);
        } else {
          long long num = std::stoll(p.substr(0, slash));
          long long den = std::stoll(p.substr(slash + 1));
          if (den == 0) throw InvalidExponents("zero denominator in '" + p + "'");
          out.nu[i] = static_cast<double>(num) / static_cast<double>(den);
          half[i] = (2 * num == den);
        }
      } catch (const std::logic_error&) {
        throw InvalidExponents("cannot parse exponent '" + p + "'");
      }
    }
    out.nu1_exact_half = half[0];
    out.validate();
    return out;
  }
};

/// Type I for nu1 < 1/2, Type II for nu1 = 1/2, Type III for nu1 > 1/2.
inline GbecType classify(const BoxExponents& nu) {
  nu.validate();
  if (nu.nu1_exact_half) return GbecType::TypeII;
  const double d = nu.nu1() - 0.5;
  if (std::fabs(d) <= kExponentTolerance) return GbecType::TypeII;
  return d < 0 ? GbecType::TypeI : GbecType::TypeIII;
}

/// Warning text when nu1 is close to 1/2 without being classified as equal.
inline std::optional<std::string> proximity_warning(const BoxExponents& nu) {
  if (nu.nu1_exact_half) return std::nullopt;
  const double d = std::fabs(nu.nu1() - 0.5);
  if (d > kExponentTolerance && d < kProximityWarning) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "nu1 = %.15g is within %.0e of 1/2; the type is sensitive to rounding",
                  nu.nu1(), kProximityWarning);
    return std::string(buf);
  }
  return std::nullopt;
}

/// h^2 beta / (2 m a^2) = pi / tau, with the same T* unit as the prism.
inline double energy_scale(double t) {
  if (!(t > 0 && t < 1)) throw DomainError("box temperature must lie in (0, 1)");
  return std::numbers::pi / prism::reduced_tau(t);
}

/// a^3 rho_s = 1 / [(pi/tau) sum_i H^{1-2 nu_i} s_i^2 + gamma], gamma = alpha V / a^3.
inline double state_density(const std::array<int, 3>& s, const BoxExponents& nu, double h,
                            double t, double gamma) {
  if (!(h > 1)) throw DomainError("H must be > 1");
  const double c = energy_scale(t);
  double kinetic = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double si = s[i];
    kinetic += std::pow(h, 1.0 - 2.0 * nu.nu[i]) * si * si;
  }
  return 1.0 / (c * kinetic + gamma);
}

/// Type I: the ground state alone holds rho0, so gamma = 1 / f0.
inline double solve_gamma_type1(double t) {
  if (t >= 1.0) throw NoSolution("no condensate at t >= 1");
  return 1.0 / prism::condensate_fraction(t);
}

/// Type II: the s1 band holds rho0; the band equation carries no H.
inline double solve_gamma_type2(double t, const BoxExponents& nu) {
  if (classify(nu) != GbecType::TypeII) throw DomainError("solve_gamma_type2 needs nu1 = 1/2");
  if (t >= 1.0) throw NoSolution("no condensate at t >= 1");
  return solve_coth_band(energy_scale(t), prism::condensate_fraction(t));
}

/// Type III: coth_band_sum((pi/tau) H^{1-2 nu1}, gamma) = f0, gamma = O(H^{2 nu1 - 1}).
inline double solve_gamma_type3(double t, const BoxExponents& nu, double h) {
  if (classify(nu) != GbecType::TypeIII) throw DomainError("solve_gamma_type3 needs nu1 > 1/2");
  if (t >= 1.0) throw NoSolution("no condensate at t >= 1");
  if (!(h > 1)) throw DomainError("H must be > 1");
  const double a = energy_scale(t) * std::pow(h, 1.0 - 2.0 * nu.nu1());
  return solve_coth_band(a, prism::condensate_fraction(t));
}

/// Closed form of the Type III root when the coth factor is 1.
inline double gamma_type3_asymptotic(double t, const BoxExponents& nu, double h) {
  const double f0 = prism::condensate_fraction(t);
  return std::numbers::pi * std::numbers::pi * std::pow(h, 2.0 * nu.nu1() - 1.0) /
         (energy_scale(t) * f0 * f0);
}

/// gamma for whichever type nu describes.
inline double solve_gamma(double t, const BoxExponents& nu, double h) {
  switch (classify(nu)) {
    case GbecType::TypeI: return solve_gamma_type1(t);
    case GbecType::TypeII: return solve_gamma_type2(t, nu);
    case GbecType::TypeIII: return solve_gamma_type3(t, nu, h);
  }
  throw DomainError("unreachable");
}

struct CutoffPoint {
  double h;
  double gamma;
  double max_state_density;  // ground state, 1 / gamma
  double k0;                 // k0 a
  double s0;
};

/// Band states with index below s0 have density within a factor C of the
/// ground state: (pi/tau) H^{1-2 nu1} s0^2 = (C - 1) gamma.
inline CutoffPoint cutoff_point(const BoxExponents& nu, double t, double h, double c_drop) {
  if (!(c_drop > 1)) throw DomainError("occupation-drop threshold C must exceed 1");
  CutoffPoint p{};
  p.h = h;
  p.gamma = solve_gamma(t, nu, h);
  p.max_state_density = 1.0 / p.gamma;
  const double stiffness = energy_scale(t) * std::pow(h, 1.0 - 2.0 * nu.nu1());
  p.s0 = std::sqrt((c_drop - 1.0) * p.gamma / stiffness);
  p.k0 = 2.0 * std::numbers::pi * p.s0 / std::pow(h, nu.nu1());
  return p;
}

struct CutoffSlopes {
  double k0_slope;
  double s0_slope;
};

/// Log-log slopes of k0(H) and s0(H); expected (nu1 - 1, 2 nu1 - 1).
inline CutoffSlopes cutoff_diagnostics(const BoxExponents& nu, double t,
                                       const std::vector<double>& h_ladder, double c_drop) {
  if (h_ladder.size() < 3) {
    throw InsufficientData("cutoff fit needs at least 3 H values, got " + std::to_string(h_ladder.size()));
  }
  if (classify(nu) != GbecType::TypeIII) throw DomainError("cutoff diagnostics need nu1 > 1/2");
  std::vector<double> k0, s0;
  for (double h : h_ladder) {
    auto p = cutoff_point(nu, t, h, c_drop);
    k0.push_back(p.k0);
    s0.push_back(p.s0);
  }
  return {numerics::log_log_fit(h_ladder, k0).slope, numerics::log_log_fit(h_ladder, s0).slope};
}

/// Default ladder H = 10^4 ... 10^10.
inline std::vector<double> default_h_ladder() { return numerics::geomspace(1e4, 1e10, 7); }

}  // namespace gbec::box
