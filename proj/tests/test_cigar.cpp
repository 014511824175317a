#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gbec/cigar.hpp"
#include "gbec/oracle.hpp"
#include "support/brute_force.hpp"

using namespace gbec;

namespace {
const double kC3 = std::cbrt(1.2020569031595942);
}

TEST(Cigar, KParameter) {
  EXPECT_NEAR(cigar::k_parameter(1e6, 5.6e4), 6.8, 0.05);
  EXPECT_NEAR(cigar::k_parameter(1e8, 5.6e4), 147.0, 1.0);
  EXPECT_DOUBLE_EQ(cigar::k_parameter(3e5, 3e5), 1.0);
  EXPECT_THROW(cigar::k_parameter(0.0, 1.0), DomainError);
  EXPECT_THROW(cigar::k_parameter(1e6, -1.0), DomainError);
}

TEST(Cigar, AlphaBand) {
  EXPECT_EQ(cigar::alpha_band(0.5, 0.0, 6.8), 1.0);
  EXPECT_DOUBLE_EQ(cigar::alpha_band(0.5, 0.875, 6.8), std::exp(-0.875 * 6.8 * kC3 / 0.5));
  // Underflow: the log form stays finite.
  EXPECT_EQ(cigar::alpha_band(0.5, 0.875, 1e5), 0.0);
  EXPECT_NEAR(cigar::log_alpha_band(0.5, 0.875, 1e5), -0.875 * 1e5 * kC3 / 0.5, 1e-6);
  // Standard limit: ln(alpha) grows like K ~ N^{2/3}.
  const double r = cigar::log_alpha_band(0.5, 0.875, cigar::k_parameter(8e6, 5.6e4)) /
                   cigar::log_alpha_band(0.5, 0.875, cigar::k_parameter(1e6, 5.6e4));
  EXPECT_NEAR(r, 4.0, 1e-12);
}

// Where the ground state is microscopic the band holds all of f0 and the
// rigorous alpha reduces to the band value.
TEST(Cigar, AlphaBandMatchesRigorousSolutionWhenGroundIsMicroscopic) {
  const double t = 0.7, n = 1e6, k = 6.8;
  const auto fg = cigar::fg_self_consistent(t, n, k);
  ASSERT_TRUE(fg.microscopic);
  const double rigorous = cigar::alpha_from_fg(fg.fg, n);
  EXPECT_NEAR(rigorous / cigar::alpha_band(t, cigar::condensate_fraction(t), k), 1.0, 0.01);
}

TEST(Cigar, T1Standard) {
  const auto r = cigar::t1_standard(1e6, 6.8, 1.0);
  EXPECT_NEAR(r.t1, 0.47, 0.01);
  EXPECT_NEAR(r.first_iterate, 0.52, 0.005);
  EXPECT_FALSE(r.merged);
  EXPECT_NEAR(r.t1, gbec::testing::cubic_root(6.8 * kC3 / std::log(1e6)), 1e-12);
  const auto big = cigar::t1_standard(1e8, 147.0, 1.0);
  EXPECT_NEAR(big.t1, 0.961, 0.005);
  EXPECT_TRUE(big.merged);
  EXPECT_THROW(cigar::t1_standard(1e6, 6.8, 1.5), DomainError);
  EXPECT_THROW(cigar::t1_standard(1.0, 6.8, 1.0), DomainError);
}

TEST(Cigar, T1StandardCollapsesTowardTc) {
  double prev = 0.0;
  for (double n : {1e6, 1e8, 1e10, 1e12}) {
    const double t1 = cigar::t1_standard(n, cigar::k_parameter(n, 5.6e4)).t1;
    EXPECT_GE(t1, prev);
    EXPECT_LE(t1, 1.0);
    prev = t1;
  }
  EXPECT_GT(prev, 0.999);
}

TEST(Cigar, SmallerCLowersT1) {
  EXPECT_GT(cigar::t1_standard(1e6, 6.8, 0.1).t1, cigar::t1_standard(1e6, 6.8, 1.0).t1);
}

TEST(Cigar, FgSelfConsistentSatisfiesEquation) {
  const double n = 1e6, k = cigar::k_parameter(1e6, 5.6e4);
  for (double t : {0.1, 0.3, 0.45, 0.6}) {
    const auto r = cigar::fg_self_consistent(t, n, k);
    const double f0 = cigar::condensate_fraction(t);
    const double b = k * kC3 / t;
    const double rhs = f0 + std::log(1.0 - std::exp(-b / n) / (1.0 + 1.0 / (n * r.fg))) / b;
    EXPECT_NEAR(r.fg, rhs, 1e-12 + 1e-10 * r.fg) << t;
  }
}

TEST(Cigar, FgBoundsAndMonotonicity) {
  for (double n : {1e4, 1e6, 1e8}) {
    const double k = cigar::k_parameter(n, n >= 1e6 ? 5.6e4 : 1e2);
    double prev = 1.0;
    for (int i = 0; i < 220; ++i) {
      const double t = 0.01 + 1.09 * i / 219.0;
      const double f0 = cigar::condensate_fraction(t);
      const double fg = cigar::fg_self_consistent(t, n, k).fg;
      EXPECT_GE(fg, 0.0);
      EXPECT_LE(fg, f0 + 1e-15);
      EXPECT_LE(fg, prev + 1e-15) << "N=" << n << " t=" << t;
      prev = fg;
    }
  }
  EXPECT_EQ(cigar::fg_self_consistent(0.0, 1e6, 6.8).fg, 1.0);
  EXPECT_NEAR(cigar::fg_self_consistent(1e-3, 1e6, 6.8).fg, 1.0, 1e-3);
}

TEST(Cigar, FgMicroscopicFlag) {
  const double k = cigar::k_parameter(1e6, 5.6e4);
  EXPECT_FALSE(cigar::fg_self_consistent(0.2, 1e6, k).microscopic);
  EXPECT_TRUE(cigar::fg_self_consistent(0.9, 1e6, k).microscopic);
  EXPECT_EQ(cigar::fg_self_consistent(1.05, 1e6, k).fg, 0.0);
}

TEST(Cigar, ExpandedLogFormTracksFullEquation) {
  for (double n : {1e6, 1e8, 1e10}) {
    const double k = cigar::k_parameter(n, 5.6e4);
    for (int i = 0; i < 100; ++i) {
      const double t = 0.01 + 0.98 * i / 99.0;
      EXPECT_NEAR(cigar::fg_expanded(t, n, k), cigar::fg_self_consistent(t, n, k).fg, 1e-5) << n << " " << t;
    }
  }
}

// Dropping everything but ln N inside the logarithm costs 0.03 at N = 1e8;
// the agreement reaches 0.01 from N = 1e10.
TEST(Cigar, LeadingLargeNFormAtVeryLargeN) {
  for (double n : {1e10, 1e12}) {
    const double k = cigar::k_parameter(n, 5.6e4);
    for (int i = 0; i < 100; ++i) {
      const double t = 0.01 + 0.98 * i / 99.0;
      EXPECT_NEAR(cigar::fg_large_n(t, n, k), cigar::fg_self_consistent(t, n, k).fg, 0.01) << n << " " << t;
    }
  }
}

TEST(Cigar, BzGeometry) {
  const auto p = cigar::bz_from_delta(1e6, 5.6e4);
  EXPECT_NEAR(p.ell_perp, 2.61, 0.01);
  EXPECT_NEAR(p.gamma, 1.60, 0.01);
  const auto g = cigar::bz_geometry(1e6, p.gamma);
  EXPECT_NEAR(g.ell_perp, p.ell_perp, 1e-12);
  EXPECT_NEAR(g.delta, 5.6e4, 1e-6);
  for (double n : {1e8, 1e16, 1e30}) {
    const auto q = cigar::bz_geometry(n, 1.6);
    EXPECT_NEAR(std::pow(q.ell_perp, 3) * std::exp(1.6 * q.k) / n, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(q.k, q.ell_perp * q.ell_perp);
  }
  EXPECT_NEAR(cigar::bz_geometry(1e16, 1.6).k / (std::log(1e16) / 1.6), 1.0, 0.15);
  const double r30 = cigar::bz_geometry(1e30, 1.6).k / (std::log(1e30) / 1.6);
  EXPECT_GT(r30, cigar::bz_geometry(1e16, 1.6).k / (std::log(1e16) / 1.6));
  EXPECT_THROW(cigar::bz_geometry(1e6, 0.0), NoSolution);
}

TEST(Cigar, TlLimitAndT1Bz) {
  EXPECT_EQ(cigar::fg_tl_limit(0.0, 1.6), 1.0);
  const double t1 = cigar::t1_bz(1.6);
  EXPECT_NEAR(t1, 0.552, 0.005);
  EXPECT_NEAR(cigar::fg_tl_limit(t1, 1.6), 0.0, 1e-12);
  EXPECT_GT(cigar::fg_tl_limit(t1 - 0.01, 1.6), 0.0);
  EXPECT_EQ(cigar::fg_tl_limit(t1 + 0.01, 1.6), 0.0);
  EXPECT_NEAR(cigar::t1_bz(kC3), 0.6823278038, 1e-9);
  EXPECT_NEAR(cigar::t1_bz(kC3), gbec::testing::cubic_root(1.0), 1e-12);
  EXPECT_GT(cigar::t1_bz(1e-6), 0.999);
}

TEST(Cigar, BandOccupation) {
  const double n = 1e6, k = 6.8, t = 0.5, alpha = 1e-3;
  EXPECT_DOUBLE_EQ(cigar::band_occupation(0, t, n, k, alpha) * n, 1.0 / alpha);
  const double a = cigar::band_occupation(3, t, 1e6, cigar::k_parameter(1e6, 5.6e4), 0.0);
  const double b = cigar::band_occupation(3, t, 2e6, cigar::k_parameter(2e6, 5.6e4), 0.0);
  EXPECT_NEAR(b / a, std::pow(2.0, -2.0 / 3.0), 1e-12);
  EXPECT_THROW(cigar::band_occupation(-1, t, n, k, alpha), DomainError);
}

// Low band levels against the exact spectrum at the oracle's alpha. The
// closed form linearises e^{x p_z} - 1 with x = b/N, so it overshoots by about
// x p_z / 2.
TEST(Cigar, BandOccupationMatchesOracleLevels) {
  const double n = 1e4, delta = 1e2, k = cigar::k_parameter(n, delta);
  oracle::SpectrumSpec spec{oracle::CigarSpectrum{delta}};
  for (double t : {0.2, 0.5, 0.8}) {
    const auto sol = oracle::solve_alpha_exact(spec, n, t);
    const double x = cigar::band_stiffness(t, k) / n;
    int seen = 0;
    for (const auto& o : sol.occupations) {
      if (o.qn[0] != 0 || o.qn[1] < 1 || o.qn[1] > 5) continue;
      ++seen;
      const double ratio = cigar::band_occupation(o.qn[1], t, n, k, sol.alpha) / (o.per_state / n);
      EXPECT_GE(ratio, 1.0) << "t=" << t << " p_z=" << o.qn[1];
      EXPECT_LE(ratio - 1.0, x * o.qn[1]) << "t=" << t << " p_z=" << o.qn[1];
    }
    EXPECT_EQ(seen, 5);
  }
}

// The band sum with the full Bose factor, summed directly at the oracle's
// alpha, against the oracle's own band total.
TEST(Cigar, BandSumMatchesOracleBand) {
  const double n = 1e5, delta = 1e2, k = cigar::k_parameter(n, delta);
  oracle::SpectrumSpec spec{oracle::CigarSpectrum{delta}};
  for (double t : {0.3, 0.6}) {
    const auto sol = oracle::solve_alpha_exact(spec, n, t);
    const double x = cigar::band_stiffness(t, k) / n;
    long double sum = 0.0L;
    for (long p = 0; x * p + sol.alpha < 60.0; ++p) sum += 1.0L / std::expm1(x * p + sol.alpha);
    EXPECT_NEAR(static_cast<double>(sum) / n / sol.f_band, 1.0, 0.01) << t;
  }
}

// At N = 1e4 the exact ground fraction agrees with the self-consistent one only
// deep in the condensed phase; both fall with t.
TEST(Cigar, OracleGroundFractionAtModestSize) {
  const double n = 1e4, delta = 1e2, k = cigar::k_parameter(n, delta);
  oracle::SpectrumSpec spec{oracle::CigarSpectrum{delta}};
  const auto low = oracle::solve_alpha_exact(spec, n, 0.2);
  EXPECT_NEAR(low.f_g, cigar::fg_self_consistent(0.2, n, k).fg, 0.05);
  double prev_exact = 1.0, prev_sc = 1.0;
  for (double t : {0.2, 0.5, 0.8}) {
    const double exact = oracle::solve_alpha_exact(spec, n, t).f_g;
    const double sc = cigar::fg_self_consistent(t, n, k).fg;
    EXPECT_LT(exact, prev_exact);
    EXPECT_LT(sc, prev_sc);
    EXPECT_LE(exact, sc);
    prev_exact = exact;
    prev_sc = sc;
  }
}

TEST(Cigar, ReportCombinesSolvers) {
  cigar::CigarConfig cfg;
  const auto r = cigar::two_step_report(cfg, 0.3);
  EXPECT_NEAR(r.t1_over_tc, 0.4709, 1e-3);
  EXPECT_LE(r.fg, r.f0);
  EXPECT_GT(r.alpha, 0.0);
  cfg.mode = cigar::LimitMode::BZ;
  cfg.n_particles = 1e16;
  EXPECT_NEAR(cigar::two_step_report(cfg, 0.3).t1_over_tc, 0.5525, 1e-3);
}
