#pragma once

// Bose functions F_n(alpha) = sum_{l>=1} exp(-l alpha) / l^n and the closed-form
// band sum used by the channel and box geometries.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gbec/errors.hpp"
#include "gbec/numerics.hpp"

namespace gbec {

/// Orders of F_n used by the geometries. Any n > 0 is accepted by bose_fn.
namespace order {
inline constexpr double half = 0.5;
inline constexpr double three_halves = 1.5;
inline constexpr double three = 3.0;
}  // namespace order

namespace detail {

// Above this alpha the series is summed directly; below it the first
// kEulerMaclaurinStart - 1 terms are summed and the rest is handled by
// Euler-Maclaurin.
inline constexpr double kDirectAlpha = 1.0;
inline constexpr int kEulerMaclaurinStart = 32;

// B_{2k} / (2k)! for k = 1..6.
inline constexpr std::array<double, 6> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
};

// Generalized exponential integral E_p(x) = int_1^inf e^{-xu} u^{-p} du by
// Lentz's continued fraction; accurate for x >= 1 and real p > 0.
inline double expint_cf(double p, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double b = x + p;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (p - 1.0 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h * std::exp(-x);
}

// I(n, alpha, m) = int_m^inf exp(-alpha l) l^{-n} dl.
inline double tail_integral(double n, double alpha, double m) {
  if (alpha == 0.0) return std::pow(m, 1.0 - n) / (n - 1.0);
  const double x = alpha * m;
  if (x >= 2.0) return std::pow(m, 1.0 - n) * expint_cf(n, x);

  // Start from the fractional part r in (0, 1] and raise the order with
  // I_{p+1} = (e^{-x} m^{-p} - alpha I_p) / p.
  double r = n - std::ceil(n) + 1.0;
  double value;
  if (r >= 1.0) {
    r = 1.0;
    value = boost::math::expint(1, x);
  } else {
    value = std::pow(alpha, r - 1.0) * boost::math::tgamma(1.0 - r, x);
  }
  const double ex = std::exp(-x);
  for (double p = r; p < n - 0.5; p += 1.0) {
    value = (ex * std::pow(m, -p) - alpha * value) / p;
  }
  return value;
}

// d^k/dl^k [exp(-alpha l) l^{-n}] at l.
inline double term_derivative(double n, double alpha, double l, int k) {
  double sum = 0.0;
  double binom = 1.0;
  double rising = 1.0;  // n (n+1) ... (n+j-1)
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      binom = binom * (k - j + 1) / j;
      rising *= n + j - 1;
    }
    double alpha_part = (k - j == 0) ? 1.0 : std::pow(-alpha, k - j);
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += binom * alpha_part * sign * rising * std::pow(l, -n - j);
  }
  return std::exp(-alpha * l) * sum;
}

}  // namespace detail

/// F_n(alpha) to ~1e-14 relative accuracy. F_n(0) = zeta(n) for n > 1.
inline double bose_fn(double n, double alpha) {
  if (!(n > 0)) throw DomainError("Bose function order must be positive");
  if (!(alpha >= 0)) throw DomainError("alpha must be >= 0, got " + std::to_string(alpha));
  if (alpha == 0.0 && n <= 1.0) {
    throw DivergentSeries("F_n(0) diverges for n <= 1 (n = " + std::to_string(n) + ")");
  }
  if (std::isinf(alpha)) return 0.0;

  if (alpha >= detail::kDirectAlpha) {
    long double sum = 0.0L;
    for (int l = 1;; ++l) {
      long double term = std::exp(-static_cast<long double>(l) * alpha) *
                         std::pow(static_cast<long double>(l), -static_cast<long double>(n));
      sum += term;
      if (term <= 1e-18L * sum || term == 0.0L) break;
    }
    return static_cast<double>(sum);
  }

  const int m = detail::kEulerMaclaurinStart;
  long double head = 0.0L;
  for (int l = m - 1; l >= 1; --l) {
    head += std::exp(-static_cast<long double>(l) * alpha) *
            std::pow(static_cast<long double>(l), -static_cast<long double>(n));
  }
  const double md = m;
  double tail = detail::tail_integral(n, alpha, md) + 0.5 * std::exp(-alpha * md) * std::pow(md, -n);
  for (std::size_t k = 0; k < detail::kBernoulliOverFactorial.size(); ++k) {
    int order = 2 * static_cast<int>(k) + 1;
    tail -= detail::kBernoulliOverFactorial[k] * detail::term_derivative(n, alpha, md, order);
  }
  return static_cast<double>(head + tail);
}

/// Riemann zeta for n > 1, from the same series at alpha = 0.
inline double zeta(double n) {
  if (!(n > 1)) throw DomainError("zeta(n) is evaluated only for n > 1");
  return bose_fn(n, 0.0);
}

inline double zeta3() {
  static const double value = zeta(3.0);
  return value;
}

inline double zeta_three_halves() {
  static const double value = zeta(1.5);
  return value;
}

/// Leading small-alpha behaviour F_{1/2}(alpha) ~ sqrt(pi / alpha).
inline double f_half_asymptotic(double alpha) {
  if (!(alpha > 0)) throw DomainError("f_half_asymptotic needs alpha > 0");
  return std::sqrt(std::numbers::pi / alpha);
}

/// Solves F_n(alpha) = target for alpha >= 0 by bisection on ln(alpha).
/// Returns 0 when target equals zeta(n).
inline double bose_fn_inverse(double n, double target) {
  if (!(n > 0)) throw DomainError("Bose function order must be positive");
  if (!(target > 0)) throw NoSolution("target must be positive");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double lo = 1e-30;
  double hi = 50.0;
  if (n > 1.0) {
    const double z = zeta(n);
    if (target > z) {
      if (target - z > 4 * eps * z) {
        throw NoSolution("target " + std::to_string(target) + " exceeds zeta(" +
                         std::to_string(n) + ") = " + std::to_string(z));
      }
      return 0.0;
    }
    if (target >= bose_fn(n, lo)) return 0.0;
  } else {
    while (bose_fn(n, lo) < target) {
      lo *= 1e-10;
      if (lo < 1e-290) throw NoSolution("target too large to invert");
    }
  }
  while (bose_fn(n, hi) > target) {
    hi *= 2.0;
    if (hi > 740.0) throw NoSolution("target below the smallest representable F_n");
  }
  auto residual = [&](double alpha) { return bose_fn(n, alpha) - target; };
  auto result = numerics::bisect_log(residual, lo, hi, 4 * eps, 400);
  double alpha = result.root;
  if (std::fabs(residual(alpha)) > 1e-10 * target) {
    throw NonConvergence("bose_fn_inverse residual above tolerance", alpha);
  }
  return alpha;
}

/// Exact sum over all integers s of 1 / (a s^2 + gamma):
/// (pi / sqrt(a gamma)) coth(pi sqrt(gamma / a)).
inline double coth_band_sum(double a, double gamma) {
  if (!(a > 0)) throw DomainError("coth_band_sum needs a > 0");
  if (!(gamma > 0)) throw DomainError("coth_band_sum needs gamma > 0");
  const double arg = std::numbers::pi * std::sqrt(gamma / a);
  const double coth = arg > 30.0 ? 1.0 : 1.0 / std::tanh(arg);
  return std::numbers::pi / std::sqrt(a * gamma) * coth;
}

/// Solves coth_band_sum(a, gamma) = target for gamma. The sum is strictly
/// decreasing in gamma, so the bracket is widened until it changes sign.
inline double solve_coth_band(double a, double target) {
  if (!(a > 0)) throw DomainError("band equation needs a > 0");
  if (!(target > 0)) throw NoSolution("band fraction target must be positive");
  auto residual = [&](double gamma) { return coth_band_sum(a, gamma) - target; };
  // Leading behaviour of the sum is pi / sqrt(a gamma) + 1 / gamma.
  double guess = std::max(std::numbers::pi * std::numbers::pi / (a * target * target), 1.0 / target);
  double lo = guess * 1e-3;
  double hi = guess * 1e3;
  while (residual(lo) < 0) {
    lo *= 1e-3;
    if (lo < 1e-300) throw NoSolution("band equation has no root");
  }
  while (residual(hi) > 0) {
    hi *= 1e3;
    if (hi > 1e300) throw NoSolution("band equation has no root");
  }
  return numerics::bisect_log(residual, lo, hi, 1e-15).root;
}

}  // namespace gbec
