#pragma once

// Sweep drivers and transition reports shared by the command-line tool.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gbec/channel.hpp"
#include "gbec/cigar.hpp"
#include "gbec/general_box.hpp"
#include "gbec/isotropic.hpp"
#include "gbec/oracle.hpp"
#include "gbec/prism.hpp"
#include "gbec/sweep.hpp"

namespace gbec::run {

struct BoxConfig {
  box::BoxExponents nu;
  double h = 1e6;
  double c_drop = 1e4;
};

using GeometryConfig = std::variant<isotropic::IsotropicConfig, channel::ChannelConfig,
                                    cigar::CigarConfig, prism::PrismConfig, BoxConfig>;

enum class Format { Csv, Json };

struct RunConfig {
  GeometryConfig geometry = isotropic::IsotropicConfig{};
  sweep::Grid grid{0.05, 0.95, 19};
  std::string out;  // empty: stdout
  Format format = Format::Csv;
  bool oracle = false;
  int jobs = 1;

  void validate() const {
    grid.validate();
    if (jobs < 1) throw DomainError("jobs must be >= 1");
    std::visit(
        [](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, BoxConfig>) {
            g.nu.validate();
            if (!(g.h > 1)) throw DomainError("H must be > 1");
          } else {
            (void)g.validate();
          }
        },
        geometry);
  }
};

inline const char* geometry_name(const GeometryConfig& g) {
  switch (g.index()) {
    case 0: return "isotropic";
    case 1: return "channel";
    case 2: return "cigar";
    case 3: return "prism";
    default: return "box";
  }
}

inline nlohmann::json geometry_json(const GeometryConfig& g) {
  nlohmann::json j;
  j["geometry"] = geometry_name(g);
  if (auto* c = std::get_if<isotropic::IsotropicConfig>(&g)) j["n"] = c->n_particles;
  if (auto* c = std::get_if<channel::ChannelConfig>(&g)) j["n"] = c->n_particles;
  if (auto* c = std::get_if<cigar::CigarConfig>(&g)) {
    j["n"] = c->n_particles;
    j["mode"] = c->mode == cigar::LimitMode::BZ ? "bz" : "standard";
    if (c->mode == cigar::LimitMode::BZ) {
      j["gamma"] = c->bz_gamma;
    } else {
      j["delta"] = c->delta;
    }
    j["c"] = c->c_const;
  }
  if (auto* c = std::get_if<prism::PrismConfig>(&g)) {
    j["d_over_a"] = c->d_over_a;
    j["l_over_a"] = c->l_over_a;
    j["n"] = c->n_particles();
  }
  if (auto* c = std::get_if<BoxConfig>(&g)) {
    j["nu"] = {c->nu.nu[0], c->nu.nu[1], c->nu.nu[2]};
    j["h"] = c->h;
    j["c_drop"] = c->c_drop;
  }
  return j;
}

inline nlohmann::json meta_json(const RunConfig& cfg) {
  nlohmann::json j = geometry_json(cfg.geometry);
  j["t"] = cfg.grid.str();
  j["oracle"] = cfg.oracle;
  return j;
}

namespace detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline std::vector<std::string> header_for(const RunConfig& cfg) {
  std::vector<std::string> h;
  switch (cfg.geometry.index()) {
    case 0: h = {"t", "f0", "alpha", "n1_fraction"}; break;
    case 1: h = {"t", "f0", "f_s0", "f_s1", "f_s2"}; break;
    case 2: {
      const auto& c = std::get<cigar::CigarConfig>(cfg.geometry);
      h = {"t", "f0", "fg"};
      if (c.mode == cigar::LimitMode::BZ) h.push_back("fg_tl");
      break;
    }
    case 3: h = {"t", "f0", "alpha", "band_fraction", "max_state_fraction"}; break;
    default: h = {"t", "gamma", "max_state_density", "k0", "s0"}; break;
  }
  if (cfg.oracle && cfg.geometry.index() != 4) {
    h.push_back("f0_exact");
    h.push_back("fg_exact");
  }
  return h;
}

inline std::optional<oracle::SpectrumSpec> oracle_spec(const GeometryConfig& g) {
  oracle::SpectrumSpec spec;
  switch (g.index()) {
    case 0: spec.geometry = oracle::IsotropicSpectrum{}; break;
    case 1: spec.geometry = oracle::ChannelSpectrum{}; break;
    case 2: {
      const auto& c = std::get<cigar::CigarConfig>(g);
      double delta = c.mode == cigar::LimitMode::BZ ? cigar::bz_geometry(c.n_particles, c.bz_gamma).delta
                                                    : c.delta;
      spec.geometry = oracle::CigarSpectrum{delta};
      break;
    }
    case 3: spec.geometry = oracle::PrismSpectrum{std::get<prism::PrismConfig>(g).d_over_a}; break;
    default: return std::nullopt;
  }
  return spec;
}

inline double particles(const GeometryConfig& g) {
  switch (g.index()) {
    case 0: return std::get<isotropic::IsotropicConfig>(g).n_particles;
    case 1: return std::get<channel::ChannelConfig>(g).n_particles;
    case 2: return std::get<cigar::CigarConfig>(g).n_particles;
    case 3: return std::get<prism::PrismConfig>(g).n_particles();
    default: return kNaN;
  }
}

inline std::vector<double> analytic_row(const GeometryConfig& g, double t) {
  if (auto* c = std::get_if<isotropic::IsotropicConfig>(&g)) {
    const double f0 = isotropic::condensate_fraction(t);
    if (t <= 1.0) return {f0, 0.0, isotropic::excited_occupation(1, c->n_particles, t)};
    const double alpha = isotropic::alpha_above_tc(t);
    const double x = std::cbrt(zeta3()) / (t * std::cbrt(c->n_particles));
    return {f0, alpha, 1.0 / (c->n_particles * std::expm1(x + alpha))};
  }
  if (std::holds_alternative<channel::ChannelConfig>(g)) {
    const double f0 = channel::condensate_fraction(t);
    if (t >= 1.0) return {f0, 0.0, 0.0, 0.0};
    const double gamma = channel::solve_gamma(t);
    return {f0, channel::per_state_fraction(0, gamma, t), channel::per_state_fraction(1, gamma, t),
            channel::per_state_fraction(2, gamma, t)};
  }
  if (auto* c = std::get_if<cigar::CigarConfig>(&g)) {
    const double f0 = cigar::condensate_fraction(t);
    const double fg = cigar::fg_self_consistent(t, c->n_particles, c->k()).fg;
    if (c->mode == cigar::LimitMode::BZ) return {f0, fg, cigar::fg_tl_limit(t, c->bz_gamma)};
    return {f0, fg};
  }
  if (auto* c = std::get_if<prism::PrismConfig>(&g)) {
    const double f0 = prism::condensate_fraction(t);
    if (t >= 1.0) {
      const double alpha = bose_fn_inverse(order::three_halves, zeta_three_halves() / std::pow(t, 1.5));
      return {f0, alpha, 0.0, 1.0 / (c->n_particles() * std::expm1(alpha))};
    }
    return {f0, prism::alpha_prism(t, *c), prism::band_fraction(t, *c),
            prism::band_state_fraction(0, t, *c)};
  }
  const auto& b = std::get<BoxConfig>(g);
  const auto p = box::cutoff_point(b.nu, t, b.h, b.c_drop);
  return {p.gamma, p.max_state_density, p.k0, p.s0};
}

}  // namespace detail

/// One row per grid temperature, evaluated on cfg.jobs threads.
inline sweep::SweepTable run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto spec = cfg.oracle ? detail::oracle_spec(cfg.geometry) : std::nullopt;
  const double n = detail::particles(cfg.geometry);
  auto row = [&](double t) {
    std::vector<double> values = detail::analytic_row(cfg.geometry, t);
    if (spec) {
      const auto sol = oracle::solve_alpha_exact(*spec, n, t);
      values.push_back(sol.f0);
      values.push_back(sol.f_g);
    }
    return values;
  };
  return sweep::run_rows(detail::header_for(cfg), cfg.grid.points(), row, cfg.jobs);
}

struct CondensateReport {
  std::string geometry;
  std::string temperature_unit;  // "T0" or "T*"
  double tc = 0.0;
  std::optional<double> t1;
  std::optional<double> t1_first_iterate;
  std::optional<bool> merged;
  std::optional<double> k;
  std::optional<double> ell_perp;
  std::optional<double> gamma;
  std::optional<std::string> gbec_type;
  std::optional<double> onset;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["geometry"] = geometry;
    j["Tc/" + temperature_unit] = tc;
    if (t1) j["T1/Tc"] = *t1;
    if (t1_first_iterate) j["T1/Tc first iterate"] = *t1_first_iterate;
    if (merged) j["merged"] = *merged;
    if (k) j["K"] = *k;
    if (ell_perp) j["ell_perp"] = *ell_perp;
    if (gamma) j["gamma"] = *gamma;
    if (gbec_type) j["type"] = *gbec_type;
    if (onset) j["T_onset/Tc"] = *onset;
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
  }
};

/// Transition temperatures and shape parameters for the configured geometry.
inline CondensateReport report_transitions(const RunConfig& cfg) {
  cfg.validate();
  CondensateReport r;
  r.geometry = geometry_name(cfg.geometry);
  r.temperature_unit = "T0";
  const auto& g = cfg.geometry;
  if (std::holds_alternative<isotropic::IsotropicConfig>(g)) {
    r.tc = isotropic::critical_temperature();
  } else if (std::holds_alternative<channel::ChannelConfig>(g)) {
    r.tc = channel::critical_temperature();
  } else if (auto* c = std::get_if<cigar::CigarConfig>(&g)) {
    r.tc = isotropic::critical_temperature();
    if (c->mode == cigar::LimitMode::Standard) {
      r.k = c->k();
      auto t1 = cigar::t1_standard(c->n_particles, *r.k, c->c_const);
      r.t1 = t1.t1;
      r.t1_first_iterate = t1.first_iterate;
      r.merged = t1.merged;
      auto bz = cigar::bz_from_delta(c->n_particles, c->delta);
      r.ell_perp = bz.ell_perp;
      r.gamma = bz.gamma;
    } else {
      auto geo = cigar::bz_geometry(c->n_particles, c->bz_gamma);
      r.k = geo.k;
      r.ell_perp = geo.ell_perp;
      r.gamma = c->bz_gamma;
      r.t1 = cigar::t1_bz(c->bz_gamma);
    }
  } else if (auto* c = std::get_if<prism::PrismConfig>(&g)) {
    r.temperature_unit = "T*";
    r.tc = prism::critical_temperature();
    r.onset = prism::ground_state_onset(*c);
    if (auto w = c->validate()) r.warnings.push_back(*w);
  } else {
    const auto& b = std::get<BoxConfig>(g);
    r.temperature_unit = "T*";
    r.tc = prism::critical_temperature();
    r.gbec_type = box::to_string(box::classify(b.nu));
    if (auto w = box::proximity_warning(b.nu)) r.warnings.push_back(*w);
  }
  return r;
}

/// L/a ladder at fixed D/a and t, solved with the exact oracle.
inline sweep::SweepTable prism_scaling(double d_over_a, const std::vector<double>& l_ladder, double t,
                                       int jobs = 1) {
  auto row = [&](double l) {
    oracle::SpectrumSpec spec{oracle::PrismSpectrum{d_over_a}};
    const auto sol = oracle::solve_alpha_exact(spec, l * d_over_a * d_over_a, t);
    return std::vector<double>{sol.max_state_fraction(), sol.f_band, sol.alpha};
  };
  return sweep::run_rows({"L_over_a", "max_state_fraction", "band_fraction", "alpha"}, l_ladder, row, jobs);
}

/// H ladder for a box at fixed t.
inline sweep::SweepTable box_scaling(const BoxConfig& b, const std::vector<double>& h_ladder, double t,
                                     int jobs = 1) {
  auto row = [&](double h) {
    auto p = box::cutoff_point(b.nu, t, h, b.c_drop);
    return std::vector<double>{p.gamma, p.max_state_density, p.k0, p.s0};
  };
  return sweep::run_rows({"H", "gamma", "max_state_density", "k0", "s0"}, h_ladder, row, jobs);
}

/// Analytic-versus-exact rows for one geometry.
inline sweep::SweepTable oracle_compare(const GeometryConfig& g, const std::vector<double>& temps, int jobs = 1) {
  const auto spec = detail::oracle_spec(g);
  if (!spec) throw DomainError("no oracle spectrum for this geometry");
  const double n = detail::particles(g);
  auto row = [&](double t) {
    double f0 = 0.0;
    double fg = 0.0;
    if (auto* c = std::get_if<cigar::CigarConfig>(&g)) {
      f0 = cigar::condensate_fraction(t);
      fg = cigar::fg_self_consistent(t, n, c->k()).fg;
    } else if (std::holds_alternative<isotropic::IsotropicConfig>(g)) {
      f0 = isotropic::condensate_fraction(t);
      fg = f0;
    } else if (std::holds_alternative<channel::ChannelConfig>(g)) {
      f0 = channel::condensate_fraction(t);
      fg = t < 1.0 ? channel::per_state_fraction(0, channel::solve_gamma(t), t) : 0.0;
    } else {
      const auto& p = std::get<prism::PrismConfig>(g);
      f0 = prism::condensate_fraction(t);
      fg = t < 1.0 ? prism::band_state_fraction(0, t, p) : 0.0;
    }
    const auto sol = oracle::solve_alpha_exact(*spec, n, t);
    return std::vector<double>{f0, sol.f0, fg, sol.f_g};
  };
  return sweep::run_rows({"t", "f0_analytic", "f0_exact", "fg_analytic", "fg_exact"}, temps, row, jobs);
}

struct FigureSpec {
  std::string file;
  RunConfig config;
  std::vector<std::string> columns;  // subset of the sweep header, in order
};

/// The five figure datasets.
inline std::vector<FigureSpec> figure_specs() {
  std::vector<FigureSpec> out;
  const sweep::Grid cigar_grid{0.01, 1.1, 220};

  RunConfig fig1;
  fig1.geometry = channel::ChannelConfig{1e6};
  fig1.grid = {0.005, 1.0, 200};
  out.push_back({"fig1.csv", fig1, {"t", "f0", "f_s0", "f_s1", "f_s2"}});

  RunConfig fig2;
  fig2.geometry = cigar::CigarConfig{1e6, 5.6e4, cigar::LimitMode::Standard, 1.6, 1.0};
  fig2.grid = cigar_grid;
  out.push_back({"fig2.csv", fig2, {"t", "f0", "fg"}});

  RunConfig fig3 = fig2;
  std::get<cigar::CigarConfig>(fig3.geometry).n_particles = 1e8;
  out.push_back({"fig3.csv", fig3, {"t", "f0", "fg"}});

  RunConfig fig4;
  fig4.geometry = cigar::CigarConfig{1e16, 5.6e4, cigar::LimitMode::BZ, 1.6, 1.0};
  fig4.grid = cigar_grid;
  out.push_back({"fig4.csv", fig4, {"t", "f0", "fg"}});

  RunConfig fig5 = fig4;
  out.push_back({"fig5.csv", fig5, {"t", "f0", "fg", "fg_tl"}});
  return out;
}

/// Keeps only the named columns of a table.
inline sweep::SweepTable select_columns(const sweep::SweepTable& table, const std::vector<std::string>& cols) {
  std::vector<std::size_t> idx;
  for (const auto& c : cols) {
    auto it = std::find(table.header.begin(), table.header.end(), c);
    if (it == table.header.end()) throw DomainError("no column named " + c);
    idx.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }
  sweep::SweepTable out;
  out.header = cols;
  out.failures = table.failures;
  for (const auto& row : table.rows) {
    std::vector<double> r;
    for (auto i : idx) r.push_back(row[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace gbec::run
