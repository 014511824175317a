// gbec: sweeps, reports, figure data and oracle comparisons for the GBEC geometries.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbec/gbec.hpp"

namespace {

using nlohmann::json;
using namespace gbec;

// Reads a JSON object as CLI11 config. Nested objects name subcommands; flat
// keys attach to the innermost selected subcommand that owns the option.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, true, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  // Names of the selected subcommands, outermost first.
  std::vector<const CLI::App*> active_chain() const {
    std::vector<const CLI::App*> chain{root_};
    for (;;) {
      auto subs = chain.back()->get_subcommands();
      if (subs.empty()) break;
      chain.push_back(subs.front());
    }
    return chain;
  }

  std::vector<std::string> owner_path(const std::string& key) const {
    auto chain = active_chain();
    for (std::size_t depth = chain.size(); depth-- > 0;) {
      if (chain[depth]->get_option_no_throw("--" + key) != nullptr) {
        std::vector<std::string> path;
        for (std::size_t i = 1; i <= depth; ++i) path.push_back(chain[i]->get_name());
        return path;
      }
    }
    std::vector<std::string> path;
    for (std::size_t i = 1; i < chain.size(); ++i) path.push_back(chain[i]->get_name());
    return path;
  }

  void collect(const json& obj, const std::vector<std::string>& parents, bool top,
               std::vector<CLI::ConfigItem>& items) const {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, false, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = top ? owner_path(key) : parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else if (!value.is_null()) {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  const CLI::App* root_;
};

struct SweepOptions {
  std::string t;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  bool oracle = false;
};

void add_sweep_options(CLI::App* sub, SweepOptions& o, bool with_oracle = true) {
  sub->add_option("--t", o.t, "temperature grid min:max:steps (t = T/Tc); omit for a report");
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--jobs", o.jobs, "rows evaluated in parallel")->check(CLI::PositiveNumber);
  if (with_oracle) sub->add_flag("--oracle", o.oracle, "append exact-spectrum columns f0_exact, fg_exact");
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path);
}

// Writes the table and reports row failures. Returns the exit code.
int emit(const sweep::SweepTable& table, const std::string& format, const json& meta, const std::string& path) {
  write_text(format == "json" ? sweep::to_json(table, meta).dump(2) + "\n" : sweep::to_csv(table), path);
  if (table.ok()) return 0;
  json summary = {{"failed_rows", table.failures.size()}, {"failures", sweep::failures_json(table)}};
  std::cerr << summary.dump() << "\n";
  return 2;
}

void print_report(const run::CondensateReport& r, const std::string& format) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  const json j = r.to_json();
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "warnings") continue;
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

int sweep_or_report(const run::GeometryConfig& geometry, const SweepOptions& o) {
  run::RunConfig cfg;
  cfg.geometry = geometry;
  cfg.out = o.out;
  cfg.format = o.format == "json" ? run::Format::Json : run::Format::Csv;
  cfg.oracle = o.oracle;
  cfg.jobs = o.jobs;
  if (o.t.empty()) {
    print_report(run::report_transitions(cfg), o.format);
    return 0;
  }
  cfg.grid = sweep::Grid::parse(o.t);
  return emit(run::run_sweep(cfg), o.format, run::meta_json(cfg), o.out);
}

// "0.2,0.5,0.8" or a grid "min:max:steps".
std::vector<double> parse_temperatures(const std::string& text) {
  if (text.find(':') != std::string::npos) return sweep::Grid::parse(text).points();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(sweep::parse_number(item));
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse temperature '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError("no temperatures given");
  return out;
}

void print_compare_table(const sweep::SweepTable& table) {
  std::printf("%8s %14s %14s %14s %14s\n", "t", "f0_analytic", "f0_exact", "fg_analytic", "fg_exact");
  for (const auto& r : table.rows) {
    std::printf("%8.4g %14.6g %14.6g %14.6g %14.6g\n", r[0], r[1], r[2], r[3], r[4]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Bose-Einstein condensation: condensate fractions, transition temperatures and "
               "exact-spectrum checks for isotropic, channel, cigar, prism and general box geometries."};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON file holding option values; command-line flags take precedence");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer(
      "Sweep columns:\n"
      "  isotropic  t, f0, alpha, n1_fraction\n"
      "  channel    t, f0, f_s0, f_s1, f_s2\n"
      "  cigar      t, f0, fg [, fg_tl with --bz]\n"
      "  prism      t, f0, alpha, band_fraction, max_state_fraction\n"
      "  box sweep  t, gamma, max_state_density, k0, s0\n"
      "  --oracle appends f0_exact, fg_exact. See FORMATS.md.");

  std::function<int()> action;

  // bose-fn
  auto* bose = app.add_subcommand("bose-fn", "Bose function F_n(alpha) or its inverse");
  double order = 1.5;
  std::vector<double> alphas;
  std::vector<double> inverse_targets;
  bose->add_option("--order", order, "order n > 0")->required();
  auto* alpha_opt = bose->add_option("--alpha", alphas, "alpha values (>= 0)")->delimiter(',');
  auto* inverse_opt = bose->add_option("--inverse", inverse_targets, "solve F_n(alpha) = value")->delimiter(',');
  alpha_opt->excludes(inverse_opt);
  bose->callback([&] {
    action = [&] {
      if (alphas.empty() && inverse_targets.empty()) throw DomainError("give --alpha or --inverse");
      std::string out = alphas.empty() ? "value,alpha\n" : "alpha,value\n";
      for (double a : alphas) out += sweep::format_number(a) + "," + sweep::format_number(bose_fn(order, a)) + "\n";
      for (double v : inverse_targets) {
        out += sweep::format_number(v) + "," + sweep::format_number(bose_fn_inverse(order, v)) + "\n";
      }
      write_text(out, "");
      return 0;
    };
  });

  // isotropic
  auto* iso = app.add_subcommand("isotropic", "Isotropic harmonic trap (Type I)");
  isotropic::IsotropicConfig iso_cfg;
  SweepOptions iso_opts;
  iso->add_option("--n", iso_cfg.n_particles, "particle number")->capture_default_str();
  add_sweep_options(iso, iso_opts);
  iso->callback([&] { action = [&] { return sweep_or_report(iso_cfg, iso_opts); }; });

  // channel
  auto* chan = app.add_subcommand("channel", "Channel potential: periodic in x, harmonic in z (Type II)");
  channel::ChannelConfig chan_cfg;
  SweepOptions chan_opts;
  chan->add_option("--n", chan_cfg.n_particles, "particle number")->capture_default_str();
  add_sweep_options(chan, chan_opts);
  chan->callback([&] { action = [&] { return sweep_or_report(chan_cfg, chan_opts); }; });

  // cigar
  auto* cig = app.add_subcommand("cigar", "Cigar-shaped harmonic trap with two-step condensation (Type III)");
  cigar::CigarConfig cig_cfg;
  SweepOptions cig_opts;
  bool bz = false;
  cig->add_option("--n", cig_cfg.n_particles, "particle number")->capture_default_str();
  cig->add_option("--delta", cig_cfg.delta, "aspect ratio omega_perp / omega_z")->capture_default_str();
  cig->add_flag("--bz", bz, "exponential limit N = ell^3 exp(gamma ell^2)");
  cig->add_option("--gamma", cig_cfg.bz_gamma, "gamma of the exponential limit")->capture_default_str();
  cig->add_option("--c", cig_cfg.c_const, "constant c in ln(cN), 0 < c <= 1")->capture_default_str();
  add_sweep_options(cig, cig_opts);
  cig->callback([&] {
    action = [&] {
      cig_cfg.mode = bz ? cigar::LimitMode::BZ : cigar::LimitMode::Standard;
      return sweep_or_report(cig_cfg, cig_opts);
    };
  });

  // prism
  auto* pri = app.add_subcommand("prism", "Casimir prism: periodic box with L >> D (Type III)");
  prism::PrismConfig pri_cfg;
  SweepOptions pri_opts;
  bool pri_scan = false;
  std::vector<double> l_ladder{1e3, 2e3, 4e3, 8e3};
  double pri_at = 0.5;
  pri->add_option("--d", pri_cfg.d_over_a, "cross-section D/a")->capture_default_str();
  pri->add_option("--l", pri_cfg.l_over_a, "length L/a")->capture_default_str();
  pri->add_flag("--scan", pri_scan, "exact L/a ladder at fixed t, written to prism_scaling.csv by default");
  pri->add_option("--ladder", l_ladder, "L/a values for --scan")->delimiter(',')->capture_default_str();
  pri->add_option("--at", pri_at, "temperature t for --scan")->capture_default_str();
  add_sweep_options(pri, pri_opts);
  pri->callback([&] {
    action = [&] {
      if (!pri_scan) return sweep_or_report(pri_cfg, pri_opts);
      for (double l : l_ladder) {
        if (auto w = prism::PrismConfig{pri_cfg.d_over_a, l}.validate()) std::cerr << "warning: " << *w << "\n";
      }
      const auto table = run::prism_scaling(pri_cfg.d_over_a, l_ladder, pri_at, pri_opts.jobs);
      json meta = {{"geometry", "prism"}, {"d_over_a", pri_cfg.d_over_a}, {"t", pri_at}};
      const std::string path = pri_opts.out.empty() ? "prism_scaling.csv" : pri_opts.out;
      const int rc = emit(table, pri_opts.format, meta, path);
      std::cerr << "wrote " << path << "\n";
      return rc;
    };
  });

  // box
  auto* bx = app.add_subcommand("box", "Periodic box with sides a H^nu_i");
  bx->require_subcommand(1);
  std::string nu_text;
  run::BoxConfig box_cfg;
  SweepOptions box_opts;
  bool box_scan = false;
  std::vector<double> h_ladder = box::default_h_ladder();
  double box_at = 0.5;

  auto* classify = bx->add_subcommand("classify", "GBEC type of the exponents, optionally an H ladder");
  classify->add_option("--nu", nu_text, "exponents nu1,nu2,nu3 (decimals or p/q)")->required();
  classify->add_option("--H", box_cfg.h, "H used for the report")->capture_default_str();
  classify->add_option("--c-drop", box_cfg.c_drop, "occupation drop C defining k0 and s0")->capture_default_str();
  classify->add_flag("--scan", box_scan, "H ladder at fixed t, written to box_scaling.csv by default");
  classify->add_option("--ladder", h_ladder, "H values for --scan")->delimiter(',');
  classify->add_option("--at", box_at, "temperature t for --scan")->capture_default_str();
  classify->add_option("--out", box_opts.out, "output file for --scan");
  classify->add_option("--format", box_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  classify->add_option("--jobs", box_opts.jobs, "rows evaluated in parallel")->check(CLI::PositiveNumber);
  classify->callback([&] {
    action = [&] {
      box_cfg.nu = box::BoxExponents::parse(nu_text);
      run::RunConfig cfg;
      cfg.geometry = box_cfg;
      const auto report = run::report_transitions(cfg);
      if (!box_scan) {
        print_report(report, box_opts.format);
        return 0;
      }
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << "type: " << *report.gbec_type << "\n";
      const auto table = run::box_scaling(box_cfg, h_ladder, box_at, box_opts.jobs);
      json meta = run::geometry_json(box_cfg);
      meta["t"] = box_at;
      const std::string path = box_opts.out.empty() ? "box_scaling.csv" : box_opts.out;
      const int rc = emit(table, box_opts.format, meta, path);
      std::cerr << "wrote " << path << "\n";
      return rc;
    };
  });

  auto* box_sweep = bx->add_subcommand("sweep", "Temperature sweep of gamma, k0 and s0 at fixed H");
  SweepOptions box_sweep_opts;
  box_sweep_opts.t = "0.05:0.95:19";
  box_sweep->add_option("--nu", nu_text, "exponents nu1,nu2,nu3 (decimals or p/q)")->required();
  box_sweep->add_option("--H", box_cfg.h, "H")->capture_default_str();
  box_sweep->add_option("--c-drop", box_cfg.c_drop, "occupation drop C")->capture_default_str();
  add_sweep_options(box_sweep, box_sweep_opts, false);
  box_sweep->callback([&] {
    action = [&] {
      box_cfg.nu = box::BoxExponents::parse(nu_text);
      if (auto w = box::proximity_warning(box_cfg.nu)) std::cerr << "warning: " << *w << "\n";
      return sweep_or_report(box_cfg, box_sweep_opts);
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact grand-canonical summation over the discrete spectrum");
  orc->require_subcommand(1);
  auto* compare = orc->add_subcommand("compare", "Analytic versus exact condensate fractions");
  std::string geometry = "cigar";
  double orc_n = 1e4, orc_delta = 100.0, orc_d = 10.0;
  std::string orc_t = "0.2,0.5,0.8";
  bool orc_csv = false;
  int orc_jobs = 1;
  std::string orc_out;
  compare->add_option("--geometry", geometry, "isotropic, channel, cigar or prism")
      ->check(CLI::IsMember({"isotropic", "iso", "channel", "cigar", "prism"}))
      ->capture_default_str();
  compare->add_option("--n", orc_n, "particle number")->capture_default_str();
  compare->add_option("--delta", orc_delta, "cigar aspect ratio")->capture_default_str();
  compare->add_option("--d", orc_d, "prism cross-section D/a; L/a = N / (D/a)^2")->capture_default_str();
  compare->add_option("--t", orc_t, "temperatures: comma list or min:max:steps")->capture_default_str();
  compare->add_flag("--csv", orc_csv, "emit CSV rows instead of a table");
  compare->add_option("--out", orc_out, "output file for --csv");
  compare->add_option("--jobs", orc_jobs, "rows evaluated in parallel")->check(CLI::PositiveNumber);
  compare->callback([&] {
    action = [&] {
      run::GeometryConfig g;
      if (geometry == "isotropic" || geometry == "iso") {
        g = isotropic::IsotropicConfig{orc_n};
      } else if (geometry == "channel") {
        g = channel::ChannelConfig{orc_n};
      } else if (geometry == "cigar") {
        g = cigar::CigarConfig{orc_n, orc_delta, cigar::LimitMode::Standard, 1.6, 1.0};
      } else {
        prism::PrismConfig p{orc_d, orc_n / (orc_d * orc_d)};
        if (auto w = p.validate()) std::cerr << "warning: " << *w << "\n";
        g = p;
      }
      const auto table = run::oracle_compare(g, parse_temperatures(orc_t), orc_jobs);
      if (orc_csv) return emit(table, "csv", {}, orc_out);
      print_compare_table(table);
      return emit(sweep::SweepTable{{}, {}, table.failures}, "csv", {}, "/dev/null");
    };
  });

  // figures
  auto* figs = app.add_subcommand("figures", "Write fig1.csv ... fig5.csv");
  std::string outdir;
  int fig_jobs = 1;
  figs->add_option("--outdir", outdir, "output directory")->required();
  figs->add_option("--jobs", fig_jobs, "rows evaluated in parallel")->check(CLI::PositiveNumber);
  figs->callback([&] {
    action = [&] {
      std::filesystem::create_directories(outdir);
      int rc = 0;
      for (auto& fig : run::figure_specs()) {
        fig.config.jobs = fig_jobs;
        const auto table = run::select_columns(run::run_sweep(fig.config), fig.columns);
        const auto path = (std::filesystem::path(outdir) / fig.file).string();
        rc = std::max(rc, emit(table, "csv", {}, path));
        std::cerr << "wrote " << path << "\n";
      }
      return rc;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    return action ? action() : 0;
  } catch (const gbec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
