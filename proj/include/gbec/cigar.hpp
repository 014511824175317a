#pragma once

// Anisotropic (cigar) harmonic trap with a lower transition into the ground
// state of the lowest band. Temperatures are t = T/Tc with Tc/T0 = zeta(3)^{-1/3}.

#include <algorithm>
#include <cmath>
#include <string>

#include "gbec/bose_special.hpp"
#include "gbec/errors.hpp"
#include "gbec/isotropic.hpp"
#include "gbec/numerics.hpp"

namespace gbec::cigar {

enum class LimitMode { Standard, BZ };

/// f0 = 1 - t^3, the fraction in the lowest transverse band.
inline double condensate_fraction(double t) { return isotropic::condensate_fraction(t); }

/// K = (N / Delta)^{2/3}.
inline double k_parameter(double n_particles, double delta) {
  if (!(n_particles > 0) || !(delta > 0)) throw DomainError("K needs N > 0 and Delta > 0");
  return std::pow(n_particles / delta, 2.0 / 3.0);
}

/// T0 K / T expressed with t = T/Tc.
inline double band_stiffness(double t, double k) { return k * std::cbrt(zeta3()) / t; }

/// ln(alpha) = -f0 (T0/T) K. Use this when alpha itself underflows.
inline double log_alpha_band(double t, double f0, double k) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  if (!(f0 >= 0 && f0 <= 1)) throw DomainError("f0 must lie in [0, 1]");
  if (!(k > 0)) throw DomainError("K must be > 0");
  return -f0 * band_stiffness(t, k);
}

/// alpha = exp(-f0 (T0/T) K) when the band holds the whole condensate.
inline double alpha_band(double t, double f0, double k) {
  return std::exp(log_alpha_band(t, f0, k));
}

struct T1Result {
  double t1;             // converged T1/Tc
  double first_iterate;  // value with f0 set to 1
  int iterations;
  bool merged;           // the f0 = 1 estimate already reaches Tc
};

/// Solves t = f0(t) K zeta(3)^{1/3} / ln(cN). The residual t - R (1 - t^3) is
/// increasing on [0, 1], so the root is unique and bracketed.
inline T1Result t1_standard(double n_particles, double k, double c = 1.0) {
  if (!(n_particles >= 2)) throw DomainError("T1 needs N >= 2");
  if (!(k > 0)) throw DomainError("K must be > 0");
  if (!(c > 0 && c <= 1)) throw DomainError("c must lie in (0, 1]");
  const double log_cn = std::log(c * n_particles);
  if (!(log_cn > 0)) throw DomainError("cN must exceed 1");
  const double r = k * std::cbrt(zeta3()) / log_cn;
  auto residual = [&](double t) { return t - r * (1.0 - t * t * t); };
  auto root = numerics::bisect(residual, 0.0, 1.0, 1e-15, 10000);
  if (std::fabs(residual(root.root)) > 1e-10 * std::max(1.0, r)) {
    throw NonConvergence("T1 iteration did not settle", root.root);
  }
  return {root.root, std::min(r, 1.0), root.iterations, r >= 1.0};
}

struct FgResult {
  double fg;
  bool microscopic;  // fixed point below 1/sqrt(N)
};

/// Ground-state fraction from
///   f_g = f0 + (1/b) ln[1 - e^{-b/N} / (1 + 1/(N f_g))],  b = T0 K / T.
/// The residual is increasing in f_g, so the fixed point in (0, f0] is unique.
inline FgResult fg_self_consistent(double t, double n_particles, double k) {
  if (!(t >= 0)) throw DomainError("temperature must be >= 0");
  if (!(n_particles >= 2)) throw DomainError("f_g needs N >= 2");
  if (!(k > 0)) throw DomainError("K must be > 0");
  if (t == 0.0) return {1.0, false};
  const double f0 = condensate_fraction(t);
  if (f0 <= 0.0) return {0.0, true};

  const double b = band_stiffness(t, k);
  const double one_minus_e = -std::expm1(-b / n_particles);
  auto residual = [&](double f) {
    const double nf = n_particles * f;
    const double arg = 1.0 / (nf + 1.0) + (nf / (nf + 1.0)) * one_minus_e;
    return f - f0 - std::log(arg) / b;
  };
  const double lo = 1.0 / (n_particles * n_particles);
  if (residual(lo) >= 0.0) return {lo, true};
  if (residual(f0) <= 0.0) return {f0, false};
  const double fg = numerics::bisect_log(residual, lo, f0, 1e-14).root;
  return {fg, fg < 1.0 / std::sqrt(n_particles)};
}

/// Expanded form f_g = f0 + (1/b) ln[b/N + 1/(N f_g)], solved the same way.
inline double fg_expanded(double t, double n_particles, double k) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  const double f0 = condensate_fraction(t);
  if (f0 <= 0.0) return 0.0;
  const double b = band_stiffness(t, k);
  auto residual = [&](double f) {
    return f - f0 - std::log(b / n_particles + 1.0 / (n_particles * f)) / b;
  };
  const double lo = 1.0 / (n_particles * n_particles);
  if (residual(lo) >= 0.0) return lo;
  if (residual(f0) <= 0.0) return f0;
  return numerics::bisect_log(residual, lo, f0, 1e-14).root;
}

/// Leading large-N form f_g = f0 - (T / T0 K) ln N, clamped at 0.
inline double fg_large_n(double t, double n_particles, double k) {
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  const double f0 = condensate_fraction(t);
  return std::max(0.0, f0 - std::log(n_particles) / band_stiffness(t, k));
}

/// alpha implied by a ground-state fraction, from f_g = 1 / (N (e^alpha - 1)).
inline double alpha_from_fg(double fg, double n_particles) {
  if (!(fg > 0)) throw DomainError("f_g must be > 0");
  return std::log1p(1.0 / (n_particles * fg));
}

struct BzGeometry {
  double ell_perp;
  double k;      // ell_perp^2
  double delta;  // exp(gamma ell_perp^2)
};

/// Solves N = ell^3 exp(gamma ell^2) for the reduced transverse length.
inline BzGeometry bz_geometry(double n_particles, double bz_gamma) {
  if (!(n_particles >= 2) || !(bz_gamma > 0)) {
    throw NoSolution("BZ geometry needs N >= 2 and gamma > 0");
  }
  const double log_n = std::log(n_particles);
  auto residual = [&](double ell) { return 3.0 * std::log(ell) + bz_gamma * ell * ell - log_n; };
  const double hi = std::max(1.0, std::sqrt(log_n / bz_gamma)) * 2.0;
  const double ell = numerics::bisect_log(residual, 1e-100, hi, 1e-15).root;
  return {ell, ell * ell, std::exp(bz_gamma * ell * ell)};
}

struct BzParameters {
  double ell_perp;
  double gamma;
};

/// Reads a fixed (N, Delta) pair as one member of a BZ family:
/// ell = (N/Delta)^{1/3}, gamma = ln(Delta) / ell^2.
inline BzParameters bz_from_delta(double n_particles, double delta) {
  if (!(n_particles > 0) || !(delta > 1)) throw DomainError("BZ parameters need N > 0 and Delta > 1");
  const double ell = std::cbrt(n_particles / delta);
  return {ell, std::log(delta) / (ell * ell)};
}

/// Thermodynamic-limit ground-state fraction in the BZ limit.
inline double fg_tl_limit(double t, double bz_gamma) {
  if (!(t >= 0)) throw DomainError("temperature must be >= 0");
  if (t >= 1.0) return 0.0;
  return std::max(0.0, 1.0 - t * t * t - t * bz_gamma / std::cbrt(zeta3()));
}

/// Root of t = f0(t) zeta(3)^{1/3} / gamma.
inline double t1_bz(double bz_gamma) {
  if (!(bz_gamma > 0)) throw DomainError("gamma must be > 0");
  const double r = std::cbrt(zeta3()) / bz_gamma;
  auto residual = [&](double t) { return t - r * (1.0 - t * t * t); };
  auto root = numerics::bisect(residual, 0.0, 1.0, 1e-15, 10000);
  if (std::fabs(residual(root.root)) > 1e-10 * std::max(1.0, r)) {
    throw NonConvergence("BZ T1 iteration did not settle", root.root);
  }
  return root.root;
}

/// n_{00 p_z} / N = 1 / (b p_z + N alpha), b = T0 K / T.
inline double band_occupation(int p_z, double t, double n_particles, double k, double alpha) {
  if (p_z < 0) throw DomainError("p_z must be >= 0");
  if (!(t > 0)) throw DomainError("temperature must be > 0");
  if (!(alpha >= 0)) throw DomainError("alpha must be >= 0");
  const double denom = band_stiffness(t, k) * p_z + n_particles * alpha;
  if (!(denom > 0)) throw DomainError("band occupation diverges at p_z = 0, alpha = 0");
  return 1.0 / denom;
}

struct CigarConfig {
  double n_particles = 1e6;
  double delta = 5.6e4;
  LimitMode mode = LimitMode::Standard;
  double bz_gamma = 1.6;
  double c_const = 1.0;

  void validate() const {
    if (!(n_particles >= 2)) throw DomainError("cigar needs N >= 2");
    if (mode == LimitMode::Standard && !(delta >= 1)) throw DomainError("Delta must be >= 1");
    if (mode == LimitMode::BZ && !(bz_gamma > 0)) throw DomainError("BZ gamma must be > 0");
    if (!(c_const > 0 && c_const <= 1)) throw DomainError("c must lie in (0, 1]");
  }

  double k() const {
    return mode == LimitMode::Standard ? k_parameter(n_particles, delta)
                                       : bz_geometry(n_particles, bz_gamma).k;
  }
};

struct TwoStepReport {
  double tc_over_t0;
  double t1_over_tc;
  double f0;
  double fg;
  double alpha;
};

/// Both condensate fractions and alpha at one temperature.
inline TwoStepReport two_step_report(const CigarConfig& cfg, double t) {
  cfg.validate();
  const double k = cfg.k();
  TwoStepReport r{};
  r.tc_over_t0 = isotropic::critical_temperature();
  r.t1_over_tc = cfg.mode == LimitMode::Standard ? t1_standard(cfg.n_particles, k, cfg.c_const).t1
                                                 : t1_bz(cfg.bz_gamma);
  r.f0 = condensate_fraction(t);
  r.fg = fg_self_consistent(t, cfg.n_particles, k).fg;
  if (t > 1.0) {
    r.alpha = isotropic::alpha_above_tc(t);
  } else {
    r.alpha = r.fg > 0 ? alpha_from_fg(r.fg, cfg.n_particles) : 0.0;
  }
  return r;
}

}  // namespace gbec::cigar
