#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gbec/errors.hpp"

namespace gbec::numerics {

struct RootResult {
  double root;
  int iterations;
};

/// Bisection on [lo, hi] for a function whose sign differs at the endpoints.
/// Stops when the bracket is narrower than `rel_tol * max(|lo|, |hi|, 1e-300)`
/// or when the midpoint no longer moves.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double rel_tol = 1e-15,
                  int max_iter = 400) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0};
  if (f_hi == 0.0) return {hi, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketFailure("residual has the same sign at " + std::to_string(lo) +
                         " and " + std::to_string(hi));
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double scale = std::max({std::fabs(lo), std::fabs(hi), 1e-300});
    if (hi - lo <= rel_tol * scale) break;
    double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, it + 1};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it};
}

/// Bisection in log space for positive roots spanning many decades.
template <class F>
RootResult bisect_log(F&& f, double lo, double hi, double rel_tol = 1e-15,
                      int max_iter = 400) {
  auto g = [&](double u) { return f(std::exp(u)); };
  // Bracket in u = ln x; a relative tolerance on x is an absolute one on u.
  double u_lo = std::log(lo);
  double u_hi = std::log(hi);
  double g_lo = g(u_lo);
  double g_hi = g(u_hi);
  if (g_lo == 0.0) return {lo, 0};
  if (g_hi == 0.0) return {hi, 0};
  if (std::signbit(g_lo) == std::signbit(g_hi)) {
    throw BracketFailure("residual has the same sign at " + std::to_string(lo) +
                         " and " + std::to_string(hi));
  }
  int it = 0;
  for (; it < max_iter && (u_hi - u_lo) > rel_tol; ++it) {
    double mid = 0.5 * (u_lo + u_hi);
    if (mid <= u_lo || mid >= u_hi) break;
    double g_mid = g(mid);
    if (g_mid == 0.0) return {std::exp(mid), it + 1};
    if (std::signbit(g_mid) == std::signbit(g_lo)) {
      u_lo = mid;
      g_lo = g_mid;
    } else {
      u_hi = mid;
    }
  }
  return {std::exp(0.5 * (u_lo + u_hi)), it};
}

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = slope * x + intercept.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit abscissa and ordinate differ in length");
  if (x.size() < 3) {
    throw InsufficientData("need at least 3 points, got " + std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("abscissae are all equal");
  LinearFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

/// Fits ln y = slope * ln x + c. All values must be positive.
inline LinearFit log_log_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw DomainError("log-log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (x.size() != y.size()) throw DomainError("fit abscissa and ordinate differ in length");
  return linear_fit(lx, ly);
}

/// `steps` evenly spaced points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  }
  out.back() = hi;
  return out;
}

/// `steps` geometrically spaced points from lo to hi inclusive.
inline std::vector<double> geomspace(double lo, double hi, int steps) {
  if (!(lo > 0) || !(hi > 0)) throw DomainError("geometric grid needs positive ends");
  std::vector<double> out = linspace(std::log(lo), std::log(hi), steps);
  for (double& v : out) v = std::exp(v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace gbec::numerics
