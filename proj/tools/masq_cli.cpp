// Command-line front end: coupling calculator, flux integral, scenario and
// sweep runners, analytic overlay tables.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "masq/constants.hpp"
#include "masq/errors.hpp"
#include "masq/flux.hpp"
#include "masq/scenario.hpp"
#include "masq/sweep.hpp"
#include "masq/version.hpp"

namespace cst = masq::constants;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config;
  std::string out_dir = "out";
  unsigned threads = 0;
  long seed = 0;  // reserved; dynamics is deterministic
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
  auto* c = cmd->add_option("--config", o.config, "path to a JSON config file");
  if (config_required) c->required();
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  cmd->add_option("--seed", o.seed, "reserved, unused; dynamics is deterministic");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

masq::scenario::RunOptions run_options(const CommonOpts& o) {
  masq::scenario::RunOptions r;
  r.out_dir = o.out_dir;
  r.threads = o.threads;
  r.format = o.format;
  return r;
}

void print_couplings(const masq::circuit::CouplingSet& c) {
  auto line = [](const char* name, double w) {
    std::printf("  %-8s %+14.6f MHz   |%s| = %12.6f MHz\n", name,
                cst::angular_to_mhz(w), name, std::abs(cst::angular_to_mhz(w)));
  };
  std::printf("mode frequencies:\n");
  std::printf("  omega_m/2pi = %.6f GHz\n", cst::angular_to_ghz(c.omega_m));
  std::printf("  omega_a/2pi = %.6f GHz\n", cst::angular_to_ghz(c.omega_a));
  std::printf("  omega_s/2pi = %.6f GHz\n", cst::angular_to_ghz(c.omega_s));
  std::printf("couplings/2pi (signed as derived):\n");
  line("G", c.G);
  line("J", c.J);
  line("g1", c.g1);
  line("g2", c.g2);
  line("g2_bar", c.g2_bar);
  line("g3", c.g3);
  line("g3_bar", c.g3_bar);
}

int run_couplings(const CommonOpts& o) {
  auto cfg = masq::scenario::load_scenario(o.config);
  std::vector<std::string> warnings;
  std::optional<masq::flux::FluxResult> fr;
  auto c = masq::scenario::resolve_couplings(cfg, &fr, warnings);
  if (fr)
    std::printf("Phi_YIG = %.10e Wb  (|Phi|/Phi_0 = %.10e, quadrature error %.2e Wb)\n",
                fr->phi_yig, std::abs(fr->phi_yig) / cst::flux_quantum, fr->error_estimate);
  print_couplings(c);
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return 0;
}

int run_flux(double r_k_um, double l_um, double d_um, double rho_s, double rel_tol) {
  masq::flux::DeviceGeometry g;
  g.r_k = r_k_um * 1e-6;
  g.l = (l_um > 0 ? l_um : r_k_um) * 1e-6;
  g.d = d_um * 1e-6;
  if (rho_s > 0) g.rho_s = rho_s;
  auto res = masq::flux::phi_yig(g, rel_tol);
  std::printf("Phi_YIG            = %.16e Wb\n", res.phi_yig);
  std::printf("|Phi_YIG|/Phi_0    = %.16e\n", std::abs(res.phi_yig) / cst::flux_quantum);
  std::printf("error estimate     = %.3e Wb (%ld integrand evaluations)\n",
              res.error_estimate, res.evaluations);
  for (const auto& w : masq::flux::check_warnings(res.phi_yig))
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  return 0;
}

int run_scenario_cmd(const CommonOpts& o, const std::string& bundled,
                     bool list_bundled) {
  if (list_bundled) {
    for (const auto& [name, path] : masq::scenario::bundled_scenarios())
      std::printf("%s\t%s\n", name.c_str(), path.c_str());
    return 0;
  }
  fs::path cfg_path;
  if (!bundled.empty())
    cfg_path = masq::scenario::bundled_scenario_path(bundled);
  else if (!o.config.empty())
    cfg_path = o.config;
  else
    throw masq::ConfigError("scenario: give --config or --name");
  auto cfg = masq::scenario::load_scenario(cfg_path);
  auto res = masq::scenario::run_scenario(cfg, run_options(o));
  for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"masq: tripartite magnon / Andreev spin qubit / superconducting qubit "
               "dynamics and entanglement calculator"};
  app.set_version_flag("--version", masq::version);
  app.require_subcommand(1);

  CommonOpts o_couplings, o_evolve, o_ent, o_analytic, o_sweep, o_scenario;

  auto* c_couplings =
      app.add_subcommand("couplings", "mode frequencies and coupling strengths");
  add_common(c_couplings, o_couplings);

  double r_k_um = 30.0, l_um = -1.0, d_um = 0.0, rho_s = -1.0, rel_tol = 1e-10;
  auto* c_flux = app.add_subcommand("flux", "YIG stray-flux integral Phi_YIG");
  c_flux->add_option("--r-k-um", r_k_um, "sphere radius [um]")->required();
  c_flux->add_option("--l-um", l_um, "SQUID half side [um] (default R_K)");
  c_flux->add_option("--d-um", d_um, "vertical offset [um] (default 0)");
  c_flux->add_option("--rho-s", rho_s, "spin density [1/m^3]");
  c_flux->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");

  auto* c_evolve = app.add_subcommand("evolve", "integrate a scenario, write populations");
  add_common(c_evolve, o_evolve);
  auto* c_ent = app.add_subcommand("entanglement",
                                   "integrate a scenario, write the entanglement report");
  add_common(c_ent, o_ent);
  auto* c_analytic =
      app.add_subcommand("analytic", "closed-form collapse-revival series tables");
  add_common(c_analytic, o_analytic);
  auto* c_sweep = app.add_subcommand("sweep", "parameter sweep over derived couplings");
  add_common(c_sweep, o_sweep);

  std::string bundled_name;
  bool list_bundled = false;
  auto* c_scenario = app.add_subcommand("scenario", "run a bundled or custom scenario");
  add_common(c_scenario, o_scenario, /*config_required=*/false);
  c_scenario->add_option("--name", bundled_name, "bundled scenario name");
  c_scenario->add_flag("--list", list_bundled, "list bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  try {
    if (*c_couplings) return run_couplings(o_couplings);
    if (*c_flux) return run_flux(r_k_um, l_um, d_um, rho_s, rel_tol);
    if (*c_evolve) {
      auto cfg = masq::scenario::load_scenario(o_evolve.config);
      cfg.outputs.populations = true;
      auto res = masq::scenario::run_scenario(cfg, run_options(o_evolve));
      for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    if (*c_ent) {
      auto cfg = masq::scenario::load_scenario(o_ent.config);
      cfg.outputs.entanglement = true;
      auto res = masq::scenario::run_scenario(cfg, run_options(o_ent));
      for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    if (*c_analytic) {
      std::ifstream in(o_analytic.config);
      if (!in) throw masq::ConfigError("cannot read config file " + o_analytic.config);
      std::stringstream ss;
      ss << in.rdbuf();
      auto cfg = masq::scenario::parse_analytic(ss.str(), o_analytic.config);
      for (const auto& f : masq::scenario::run_analytic(cfg, run_options(o_analytic)))
        std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    if (*c_sweep) {
      auto spec = masq::sweep::load_sweep(o_sweep.config);
      auto res = masq::sweep::run_sweep(spec, run_options(o_sweep));
      long failed = 0;
      for (const auto& r : res.rows)
        if (!r.error.empty()) ++failed;
      if (failed)
        std::fprintf(stderr, "warning: %ld of %zu sweep points failed (see error column)\n",
                     failed, res.rows.size());
      for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    if (*c_scenario) return run_scenario_cmd(o_scenario, bundled_name, list_bundled);
  } catch (const masq::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const masq::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
