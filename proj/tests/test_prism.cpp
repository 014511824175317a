#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gbec/numerics.hpp"
#include "gbec/oracle.hpp"
#include "gbec/prism.hpp"

using namespace gbec;

TEST(Prism, CriticalTemperature) {
  const double tc = prism::critical_temperature();
  EXPECT_NEAR(tc, 0.5272, 1e-4);
  EXPECT_NEAR(std::pow(tc, -1.5), zeta_three_halves(), 1e-13);
}

TEST(Prism, CondensateFraction) {
  EXPECT_EQ(prism::condensate_fraction(0.0), 1.0);
  EXPECT_EQ(prism::condensate_fraction(1.2), 0.0);
  EXPECT_DOUBLE_EQ(prism::condensate_fraction(0.25), 0.875);
  EXPECT_THROW(prism::condensate_fraction(-0.5), DomainError);
}

TEST(Prism, ConfigValidation) {
  EXPECT_FALSE((prism::PrismConfig{10, 1000}.validate().has_value()));
  EXPECT_TRUE((prism::PrismConfig{10, 500}.validate().has_value()));
  EXPECT_THROW((prism::PrismConfig{10, 50}.validate()), DomainError);
  EXPECT_THROW((prism::PrismConfig{-1, 50}.validate()), DomainError);
  const auto cfg = prism::PrismConfig::from_particles(1e5, 100);
  EXPECT_NEAR(cfg.d_over_a, 10.0, 1e-12);
  EXPECT_NEAR(cfg.l_over_a, 1000.0, 1e-9);
  EXPECT_NEAR(cfg.n_particles(), 1e5, 1e-6);
}

TEST(Prism, AlphaClosedForm) {
  const prism::PrismConfig cfg{10, 1000};
  const double t = 0.5;
  const double n0 = cfg.n_particles() * prism::condensate_fraction(t);
  const double expected = std::numbers::pi * t * prism::critical_temperature() * 1e6 / (n0 * n0);
  EXPECT_NEAR(prism::alpha_prism(t, cfg) / expected, 1.0, 1e-14);
  // With D fixed, L^2 / N0^2 does not depend on L.
  EXPECT_NEAR((prism::alpha_prism(t, {10, 8000}) / prism::alpha_prism(t, cfg)), 1.0, 1e-12);
  EXPECT_NEAR((prism::alpha_prism(t, {20, 1000}) / prism::alpha_prism(t, cfg)), 1.0 / 16.0, 1e-12);
  EXPECT_THROW(prism::alpha_prism(1.0, cfg), DomainError);
  EXPECT_THROW(prism::alpha_prism(0.0, cfg), DomainError);
}

TEST(Prism, BandFractionSumsStates) {
  const prism::PrismConfig cfg{10, 1000};
  const double t = 0.4;
  long double direct = 0.0L;
  const int s_max = 2'000'000;
  for (int s = -s_max; s <= s_max; ++s) direct += prism::band_state_fraction(s, t, cfg);
  const double stiffness = std::numbers::pi / (prism::reduced_tau(t) * 1e6);
  direct += 2.0L / (cfg.n_particles() * stiffness * (s_max + 0.5L));
  EXPECT_NEAR(static_cast<double>(direct) / prism::band_fraction(t, cfg), 1.0, 1e-9);
}

// The band sum is f0 coth(pi L tau / (D^2 f0)); the coth factor is 1 once
// L >> D^2 / tau.
TEST(Prism, BandHoldsTheCondensate) {
  for (double t : {0.2, 0.5, 0.8}) {
    const double f0 = prism::condensate_fraction(t);
    const prism::PrismConfig shorter{10, 1000};
    const double x = std::numbers::pi * 1000 * prism::reduced_tau(t) / (100 * f0);
    EXPECT_NEAR(prism::band_fraction(t, shorter), f0 / std::tanh(x), 1e-12) << t;
    EXPECT_NEAR(prism::band_fraction(t, {10, 1e4}), f0, 1e-6) << t;
  }
}

TEST(Prism, EveryBandStateIsMicroscopic) {
  const double t = 0.5;
  std::vector<double> ls{1e3, 2e3, 4e3, 8e3}, top;
  for (double l : ls) top.push_back(prism::band_state_fraction(0, t, {10, l}));
  EXPECT_NEAR(numerics::log_log_fit(ls, top).slope, -1.0, 1e-12);
}

TEST(Prism, GroundStateOnset) {
  EXPECT_DOUBLE_EQ((prism::ground_state_onset({10, 1000})), 0.1);
  EXPECT_LT((prism::ground_state_onset({10, 1e4})), (prism::ground_state_onset({10, 1e3})));
}

TEST(Prism, OracleMaxStateFallsAsInverseLength) {
  const double t = 0.5;
  std::vector<double> ls{1e3, 2e3, 4e3, 8e3}, top;
  for (double l : ls) {
    oracle::SpectrumSpec spec{oracle::PrismSpectrum{10}};
    const auto sol = oracle::solve_alpha_exact(spec, l * 100, t);
    top.push_back(sol.max_state_fraction());
    EXPECT_GE(sol.f_band, prism::condensate_fraction(t) - 1e-6);
  }
  EXPECT_NEAR(numerics::log_log_fit(ls, top).slope, -1.0, 0.05);
}

// Finite D adds band weight beyond 1 - t^{3/2}, which lowers alpha; the gap
// closes as the cross-section grows.
TEST(Prism, OracleAlphaApproachesClosedFormWithCrossSection) {
  const double t = 0.5;
  double prev = 0.0;
  for (double d : {5.0, 10.0, 20.0}) {
    const prism::PrismConfig cfg{d, 100 * d};
    oracle::SpectrumSpec spec{oracle::PrismSpectrum{d}};
    const auto sol = oracle::solve_alpha_exact(spec, cfg.n_particles(), t);
    const double ratio = sol.alpha / prism::alpha_prism(t, cfg);
    EXPECT_GT(ratio, prev);
    EXPECT_LT(ratio, 1.0);
    prev = ratio;
    // Inserting the exact band fraction in place of f0 removes most of the gap.
    const double from_band = std::numbers::pi * prism::reduced_tau(t) / (std::pow(d, 4) * sol.f_band * sol.f_band);
    EXPECT_LT(std::fabs(sol.alpha / from_band - 1.0), 0.5 * std::fabs(ratio - 1.0)) << d;
  }
}
