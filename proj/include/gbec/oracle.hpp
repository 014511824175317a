#pragma once

// Exact grand-canonical summation over the discrete single-particle spectrum
// of each geometry. Energies are beta * (epsilon - epsilon_ground), so alpha
// is measured from the ground state.
//
// Levels below an energy cut are enumerated; everything above the cut is
// added as a Boltzmann tail using the closed-form partition function. The cut
// is raised until that tail is below eps_tail * N.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "gbec/bose_special.hpp"
#include "gbec/channel.hpp"
#include "gbec/errors.hpp"
#include "gbec/isotropic.hpp"
#include "gbec/numerics.hpp"
#include "gbec/prism.hpp"

namespace gbec::oracle {

struct IsotropicSpectrum {};
struct ChannelSpectrum {};
struct CigarSpectrum {
  double delta = 100.0;
};
/// Cross-section D/a; the length follows from N = (L/a)(D/a)^2.
struct PrismSpectrum {
  double d_over_a = 10.0;
};

using SpectrumGeometry = std::variant<IsotropicSpectrum, ChannelSpectrum, CigarSpectrum, PrismSpectrum>;

struct SpectrumSpec {
  SpectrumGeometry geometry = IsotropicSpectrum{};
  double eps_tail = 1e-6;
  std::size_t max_levels = 40'000'000;
};

using QuantumNumbers = std::array<std::int32_t, 3>;

/// Isotropic: (p, 0, 0), p = px + py + pz.
/// Channel: (s, p_z, 0), s >= 0 standing for +-s.
/// Cigar: (p_perp, p_z, 0).
/// Prism: (sx^2 + sy^2, s_z, 0), s_z >= 0 standing for +-s_z.
struct Level {
  double energy;
  double degeneracy;
  QuantumNumbers qn;
};

struct Occupation {
  QuantumNumbers qn;
  double degeneracy;
  double per_state;  // mean occupation of one state in the level
  double fraction;   // degeneracy * per_state / N
};

struct OracleSolution {
  double alpha = 0.0;
  std::vector<Occupation> occupations;  // sorted by energy
  double f_g = 0.0;
  double f_band = 0.0;
  double f0 = 0.0;  // the condensed fraction: ground state (isotropic) or band
  double tail_fraction = 0.0;
  double energy_cut = 0.0;
  double n_particles = 0.0;

  double max_state_fraction() const {
    double m = 0.0;
    for (const auto& o : occupations) m = std::max(m, o.per_state / n_particles);
    return m;
  }
};

namespace detail {

// theta(y) = sum_{s in Z} exp(-y s^2).
inline long double theta(double y) {
  if (y >= 1.0) {
    long double sum = 1.0L;
    for (int s = 1; s < 100; ++s) {
      long double term = 2.0L * std::exp(-static_cast<long double>(y) * s * s);
      sum += term;
      if (term < 1e-22L) break;
    }
    return sum;
  }
  const long double pi = std::numbers::pi_v<long double>;
  long double sum = 1.0L;
  for (int k = 1; k < 100; ++k) {
    long double term = 2.0L * std::exp(-pi * pi * k * k / static_cast<long double>(y));
    sum += term;
    if (term < 1e-22L) break;
  }
  return std::sqrt(pi / static_cast<long double>(y)) * sum;
}

// sum_{p >= 0} exp(-x p).
inline long double geometric(double x) { return -1.0L / std::expm1(-static_cast<long double>(x)); }

struct Spectrum {
  long double z_total = 0.0L;  // sum over every state of exp(-E)
  // Calls visit(E, g, qn) for every level with E <= cut.
  std::function<void(double, const std::function<void(double, double, const QuantumNumbers&)>&)> enumerate;
  std::function<bool(const QuantumNumbers&)> in_band;
  bool band_is_ground = false;
};

inline Spectrum make_spectrum(const SpectrumGeometry& geom, double n, double t) {
  Spectrum sp;
  const double c3 = std::cbrt(zeta3());
  if (std::holds_alternative<IsotropicSpectrum>(geom)) {
    const double x = c3 / (t * std::cbrt(n));
    sp.z_total = std::pow(geometric(x), 3);
    sp.enumerate = [x](double cut, const auto& visit) {
      for (std::int32_t p = 0; x * p <= cut; ++p) {
        const double pd = p;
        visit(x * pd, 0.5 * (pd + 1) * (pd + 2), QuantumNumbers{p, 0, 0});
      }
    };
    sp.in_band = [](const QuantumNumbers& q) { return q[0] == 0; };
    sp.band_is_ground = true;
  } else if (std::holds_alternative<ChannelSpectrum>(geom)) {
    const double t0_over_t = 1.0 / (t * channel::critical_temperature());
    const double y = t0_over_t / n;              // coefficient of s^2
    const double xz = t0_over_t / std::sqrt(n);  // oscillator quantum
    sp.z_total = theta(y) * geometric(xz);
    sp.enumerate = [y, xz](double cut, const auto& visit) {
      for (std::int32_t s = 0; y * s * s <= cut; ++s) {
        const double es = y * static_cast<double>(s) * s;
        const double g = s == 0 ? 1.0 : 2.0;
        for (std::int32_t p = 0; es + xz * p <= cut; ++p) {
          visit(es + xz * p, g, QuantumNumbers{s, p, 0});
        }
      }
    };
    sp.in_band = [](const QuantumNumbers& q) { return q[1] == 0; };
  } else if (const auto* cg = std::get_if<CigarSpectrum>(&geom)) {
    const double delta = cg->delta;
    const double x_perp = c3 / (t * std::cbrt(n / delta));
    const double x_par = c3 / (t * std::pow(delta, 2.0 / 3.0) * std::cbrt(n));
    sp.z_total = geometric(x_perp) * geometric(x_perp) * geometric(x_par);
    sp.enumerate = [x_perp, x_par](double cut, const auto& visit) {
      for (std::int32_t p = 0; x_perp * p <= cut; ++p) {
        const double ep = x_perp * p;
        for (std::int32_t pz = 0; ep + x_par * pz <= cut; ++pz) {
          visit(ep + x_par * pz, static_cast<double>(p) + 1.0, QuantumNumbers{p, pz, 0});
        }
      }
    };
    sp.in_band = [](const QuantumNumbers& q) { return q[0] == 0; };
  } else {
    const double d = std::get<PrismSpectrum>(geom).d_over_a;
    const double l = n / (d * d);
    const double c = std::numbers::pi / prism::reduced_tau(t);
    const double y_perp = c / (d * d);
    const double y_par = c / (l * l);
    sp.z_total = theta(y_perp) * theta(y_perp) * theta(y_par);
    sp.enumerate = [y_perp, y_par](double cut, const auto& visit) {
      const auto m_max = static_cast<std::int32_t>(cut / y_perp);
      const auto side = static_cast<std::int32_t>(std::sqrt(static_cast<double>(m_max))) + 1;
      // r2[m] = number of (sx, sy) with sx^2 + sy^2 = m.
      std::vector<std::int32_t> r2(static_cast<std::size_t>(m_max) + 1, 0);
      for (std::int32_t sx = -side; sx <= side; ++sx) {
        for (std::int32_t sy = -side; sy <= side; ++sy) {
          const std::int64_t m = static_cast<std::int64_t>(sx) * sx + static_cast<std::int64_t>(sy) * sy;
          if (m <= m_max) ++r2[static_cast<std::size_t>(m)];
        }
      }
      for (std::int32_t m = 0; m <= m_max; ++m) {
        const double mult = r2[static_cast<std::size_t>(m)];
        if (mult == 0) continue;
        const double em = y_perp * m;
        for (std::int32_t sz = 0; em + y_par * static_cast<double>(sz) * sz <= cut; ++sz) {
          const double g = mult * (sz == 0 ? 1.0 : 2.0);
          visit(em + y_par * static_cast<double>(sz) * sz, g, QuantumNumbers{m, sz, 0});
        }
      }
    };
    sp.in_band = [](const QuantumNumbers& q) { return q[0] == 0; };
  }
  return sp;
}

}  // namespace detail

/// Solves sum_i g_i / (exp(E_i + alpha) - 1) = N for alpha and fills the
/// occupations of every enumerated level.
inline OracleSolution solve_alpha_exact(const SpectrumSpec& spec, double n_particles, double t) {
  if (!(t > 0)) throw DomainError("oracle temperature must be > 0");
  if (!(n_particles >= 1)) throw DomainError("oracle needs N >= 1");
  if (!(spec.eps_tail > 0)) throw DomainError("eps_tail must be > 0");
  if (const auto* p = std::get_if<PrismSpectrum>(&spec.geometry); p && !(p->d_over_a > 0)) {
    throw DomainError("prism D/a must be > 0");
  }
  if (const auto* c = std::get_if<CigarSpectrum>(&spec.geometry); c && !(c->delta > 0)) {
    throw DomainError("cigar Delta must be > 0");
  }

  const auto sp = detail::make_spectrum(spec.geometry, n_particles, t);
  const long double tail_budget = 0.1L * spec.eps_tail * n_particles;

  // Raise the cut until the Boltzmann weight left above it fits the budget.
  double cut = 16.0;
  long double z_tail = 0.0L;
  for (;; cut += 4.0) {
    long double z_enum = 0.0L;
    std::size_t count = 0;
    sp.enumerate(cut, [&](double e, double g, const QuantumNumbers&) {
      z_enum += g * std::exp(-static_cast<long double>(e));
      ++count;
    });
    if (count > spec.max_levels) {
      throw CutoffTooTight("reaching eps_tail needs more than " + std::to_string(spec.max_levels) +
                           " levels");
    }
    z_tail = std::max(0.0L, sp.z_total - z_enum);
    if (z_tail <= tail_budget) break;
    if (cut > 200.0) throw CutoffTooTight("tail weight does not fall below eps_tail * N");
  }

  std::vector<Level> levels;
  sp.enumerate(cut, [&](double e, double g, const QuantumNumbers& q) { levels.push_back({e, g, q}); });
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.qn < b.qn);
  });

  auto total = [&](double alpha) {
    long double sum = 0.0L;
    for (const auto& lv : levels) sum += lv.degeneracy / std::expm1(lv.energy + alpha);
    return sum + std::exp(-static_cast<long double>(alpha)) * z_tail;
  };
  auto residual = [&](double alpha) { return static_cast<double>(total(alpha) - n_particles); };

  // The ground state alone holds N at alpha = log1p(1/N).
  const double lo = std::log1p(1.0 / n_particles);
  const double hi = 100.0;
  double alpha;
  if (residual(lo) <= 0.0) {
    alpha = lo;
  } else {
    alpha = numerics::bisect_log(residual, lo, hi, 1e-15, 200).root;
  }
  const double resid = std::fabs(residual(alpha));
  if (resid > 1e-10 * n_particles) {
    throw NonConvergence("oracle alpha residual " + std::to_string(resid), alpha);
  }

  OracleSolution sol;
  sol.alpha = alpha;
  sol.n_particles = n_particles;
  sol.energy_cut = cut;
  sol.tail_fraction = static_cast<double>(std::exp(-static_cast<long double>(alpha)) * z_tail) / n_particles;
  if (sol.tail_fraction > spec.eps_tail) {
    throw CutoffTooTight("tail fraction " + std::to_string(sol.tail_fraction) + " exceeds eps_tail");
  }
  sol.occupations.reserve(levels.size());
  long double band = 0.0L;
  for (const auto& lv : levels) {
    const double n = 1.0 / std::expm1(lv.energy + alpha);
    const double frac = lv.degeneracy * n / n_particles;
    sol.occupations.push_back({lv.qn, lv.degeneracy, n, frac});
    if (sp.in_band(lv.qn)) band += frac;
  }
  sol.f_g = sol.occupations.front().per_state / n_particles;
  sol.f_band = static_cast<double>(band);
  sol.f0 = sp.band_is_ground ? sol.f_g : sol.f_band;
  return sol;
}

/// Fraction of N in levels whose quantum numbers satisfy the predicate.
template <class Pred>
double band_fraction_exact(const OracleSolution& sol, Pred&& selector) {
  long double sum = 0.0L;
  for (const auto& o : sol.occupations) {
    if (selector(o.qn)) sum += o.fraction;
  }
  return static_cast<double>(sum);
}

inline const char* geometry_name(const SpectrumGeometry& g) {
  switch (g.index()) {
    case 0: return "isotropic";
    case 1: return "channel";
    case 2: return "cigar";
    default: return "prism";
  }
}

}  // namespace gbec::oracle
