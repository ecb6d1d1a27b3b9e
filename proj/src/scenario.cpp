#include "masq/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "masq/constants.hpp"
#include "masq/errors.hpp"
#include "masq/parallel.hpp"
#include "masq/version.hpp"

namespace masq::scenario {

namespace {

using json = nlohmann::json;
namespace cst = masq::constants;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at '" + path + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing key");
  return *it;
}

double num_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double get_num(const json& j, const std::string& key, const std::string& path, double def) {
  if (!j.is_object() || !j.contains(key)) return def;
  return num_at(j.at(key), path + "." + key);
}

double req_num(const json& j, const std::string& key, const std::string& path) {
  return num_at(require(j, key, path), path + "." + key);
}

std::string get_str(const json& j, const std::string& key, const std::string& path,
                    const std::string& def) {
  if (!j.is_object() || !j.contains(key)) return def;
  if (!j.at(key).is_string()) fail(path + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

bool get_bool(const json& j, const std::string& key, const std::string& path, bool def) {
  if (!j.is_object() || !j.contains(key)) return def;
  if (!j.at(key).is_boolean()) fail(path + "." + key, "expected a boolean");
  return j.at(key).get<bool>();
}

QubitState qubit_state(const std::string& s, const std::string& path) {
  if (s == "g" || s == "down" || s == "dn") return QubitState::Ground;
  if (s == "e" || s == "up") return QubitState::Excited;
  if (s == "plus") return QubitState::Plus;
  fail(path, "expected one of g/down/e/up/plus, got '" + s + "'");
}

Eigen::Vector2cd qubit_vector(QubitState q) {
  Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
  switch (q) {
    case QubitState::Ground: v(0) = 1.0; break;
    case QubitState::Excited: v(1) = 1.0; break;
    case QubitState::Plus: v(0) = v(1) = 1.0 / std::sqrt(2.0); break;
  }
  return v;
}

circuit::CircuitParams parse_circuit(const json& j, const std::string& path) {
  circuit::CircuitParams p;
  p.e_so = cst::mhz_to_angular(req_num(j, "e_so_mhz", path));
  p.ej_sum = cst::ghz_to_angular(req_num(j, "ej_sum_ghz", path));
  p.e_c = cst::mhz_to_angular(req_num(j, "e_c_mhz", path));
  p.asymmetry = req_num(j, "asymmetry", path);
  p.phi_ext_ratio = req_num(j, "phi_ext_ratio", path);
  p.b_z = get_num(j, "b_z_mt", path, 0.0) * 1e-3;
  p.b_k = get_num(j, "b_k_mt", path, 0.0) * 1e-3;
  p.g_l = get_num(j, "g_lande", path, cst::g_lande_default);
  p.theta = get_num(j, "theta_rad", path, p.theta);
  p.exact_asq_frequency = get_bool(j, "exact_asq_frequency", path, false);
  p.phi1 = get_num(j, "phi1_rad", path, p.phi1);
  return p;
}

flux::DeviceGeometry parse_geometry(const json& j, const std::string& path) {
  flux::DeviceGeometry g;
  g.r_k = req_num(j, "r_k_um", path) * 1e-6;
  g.l = get_num(j, "l_um", path, g.r_k * 1e6) * 1e-6;  // default l = R_K
  g.d = get_num(j, "d_um", path, 0.0) * 1e-6;          // default d = 0
  g.rho_s = get_num(j, "rho_s_per_m3", path, cst::yig_spin_density);
  return g;
}

circuit::CouplingSet parse_direct(const json& j, const std::string& path) {
  circuit::CouplingSet c;
  c.omega_m = cst::ghz_to_angular(get_num(j, "omega_m_ghz", path, 0.0));
  c.omega_a = cst::ghz_to_angular(get_num(j, "omega_a_ghz", path, 0.0));
  c.omega_s = cst::ghz_to_angular(get_num(j, "omega_s_ghz", path, 0.0));
  c.G = cst::mhz_to_angular(get_num(j, "g_mhz", path, 0.0));
  c.J = cst::mhz_to_angular(get_num(j, "j_mhz", path, 0.0));
  c.g1 = cst::mhz_to_angular(get_num(j, "g1_mhz", path, 0.0));
  c.g2 = cst::mhz_to_angular(get_num(j, "g2_mhz", path, 0.0));
  c.g2_bar = cst::mhz_to_angular(get_num(j, "g2_bar_mhz", path, 0.0));
  c.g3 = cst::mhz_to_angular(get_num(j, "g3_mhz", path, 0.0));
  c.g3_bar = cst::mhz_to_angular(get_num(j, "g3_bar_mhz", path, 0.0));
  return c;
}

dynamics::BasisStateLabel parse_basis_label(const std::string& s, const std::string& path) {
  // "n,asq,scq" e.g. "1,dn,e"
  dynamics::BasisStateLabel b;
  std::istringstream in(s);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(in, tok, ',')) parts.push_back(tok);
  if (parts.size() != 3) fail(path, "basis state must be 'n,asq,scq', got '" + s + "'");
  try {
    b.n = std::stoi(parts[0]);
  } catch (...) {
    fail(path, "bad Fock level in '" + s + "'");
  }
  b.asq_up = (parts[1] == "up");
  if (!b.asq_up && parts[1] != "dn" && parts[1] != "down")
    fail(path, "ASQ label must be up/dn in '" + s + "'");
  b.scq_e = (parts[2] == "e");
  if (!b.scq_e && parts[2] != "g") fail(path, "SCQ label must be e/g in '" + s + "'");
  return b;
}

TimeGrid parse_grid(const json& j, const std::string& path) {
  TimeGrid g;
  if (j.contains("t_max_gt")) g.t_max_gt = num_at(j.at("t_max_gt"), path + ".t_max_gt");
  if (j.contains("t_max_us")) g.t_max_us = num_at(j.at("t_max_us"), path + ".t_max_us");
  if (bool(g.t_max_gt) == bool(g.t_max_us))
    fail(path, "exactly one of t_max_gt / t_max_us is required");
  g.samples = int(req_num(j, "samples", path));
  if (g.samples < 2) fail(path + ".samples", "need at least 2 samples");
  return g;
}

double rate_mhz(const json& j, const std::string& key, const std::string& path) {
  const double v = get_num(j, key, path, 0.0);
  if (v < 0) fail(path + "." + key, "dissipation rate must be >= 0");
  return cst::mhz_to_angular(v);
}

std::vector<double> make_grid(const TimeGrid& g, double g_ref) {
  double t_max = 0;
  if (g.t_max_gt) {
    if (!(g_ref > 0))
      throw ConfigError("time_grid.t_max_gt requires a nonzero reference coupling");
    t_max = *g.t_max_gt / g_ref;
  } else {
    t_max = *g.t_max_us * 1e-6;
  }
  if (!(t_max > 0)) throw ConfigError("time_grid: t_max must be > 0");
  std::vector<double> t(g.samples);
  for (int k = 0; k < g.samples; ++k) t[k] = t_max * double(k) / double(g.samples - 1);
  return t;
}

json coupling_json(const circuit::CouplingSet& c) {
  return json{{"omega_m_ghz", cst::angular_to_ghz(c.omega_m)},
              {"omega_a_ghz", cst::angular_to_ghz(c.omega_a)},
              {"omega_s_ghz", cst::angular_to_ghz(c.omega_s)},
              {"G_mhz", cst::angular_to_mhz(c.G)},
              {"J_mhz", cst::angular_to_mhz(c.J)},
              {"g1_mhz", cst::angular_to_mhz(c.g1)},
              {"g2_mhz", cst::angular_to_mhz(c.g2)},
              {"g2_bar_mhz", cst::angular_to_mhz(c.g2_bar)},
              {"g3_mhz", cst::angular_to_mhz(c.g3)},
              {"g3_bar_mhz", cst::angular_to_mhz(c.g3_bar)}};
}

void write_manifest(const ScenarioResult& res, const RunOptions& opts,
                    std::vector<std::filesystem::path>& files) {
  json m;
  m["schema_version"] = res.config.schema_version;
  m["software_version"] = masq::version;
  m["name"] = res.config.name;
  m["hamiltonian"] = {{"kind", hilbert::to_string(res.config.kind)},
                      {"interaction_frame", res.config.interaction_frame}};
  m["couplings"] = coupling_json(res.couplings);
  m["gt_reference_coupling_mhz"] = cst::angular_to_mhz(res.g_ref);
  m["frequency_scale"] = res.config.frequency_scale;
  m["fock_cutoff"] = res.config.fock_cutoff;
  m["integrator"] = {{"rtol", res.config.integrator.rtol},
                     {"atol", res.config.integrator.atol},
                     {"trace_tol", res.config.integrator.trace_tol},
                     {"herm_tol", res.config.integrator.herm_tol},
                     {"psd_tol", res.config.integrator.psd_tol}};
  m["dissipation"] = {
      {"kappa_m_mhz", cst::angular_to_mhz(res.config.rates.kappa_m)},
      {"kappa_a_mhz", cst::angular_to_mhz(res.config.rates.kappa_a)},
      {"kappa_s_mhz", cst::angular_to_mhz(res.config.rates.kappa_s)},
      {"gamma_a_mhz", cst::angular_to_mhz(res.config.rates.gamma_a)},
      {"gamma_s_mhz", cst::angular_to_mhz(res.config.rates.gamma_s)},
      {"dephasing_convention",
       res.config.rates.convention == DephasingConvention::Literal ? "literal" : "half"}};
  m["constants"] = {{"hbar_j_s", cst::hbar},
                    {"planck_h_j_s", cst::planck_h},
                    {"mu_0_n_per_a2", cst::mu_0},
                    {"mu_bohr_j_per_t", cst::mu_bohr},
                    {"elementary_charge_c", cst::elementary_charge},
                    {"flux_quantum_wb", cst::flux_quantum},
                    {"gyromagnetic_yig_rad_s_t", cst::gyromagnetic_yig},
                    {"g_lande_default", cst::g_lande_default},
                    {"yig_spin_density_per_m3", cst::yig_spin_density}};
  if (res.config.mode == CouplingMode::Circuit) {
    const auto& p = res.config.circuit_params;
    m["circuit"] = {{"e_so_mhz", cst::angular_to_mhz(p.e_so)},
                    {"ej_sum_ghz", cst::angular_to_ghz(p.ej_sum)},
                    {"e_c_mhz", cst::angular_to_mhz(p.e_c)},
                    {"asymmetry", p.asymmetry},
                    {"phi_ext_ratio", p.phi_ext_ratio},
                    {"b_z_mt", p.b_z * 1e3},
                    {"b_k_mt", p.b_k * 1e3},
                    {"g_lande", p.g_l},
                    {"theta_rad", p.theta},
                    {"exact_asq_frequency", p.exact_asq_frequency},
                    {"phi1_rad", p.phi1}};
    const auto& g = res.config.geometry;
    m["geometry"] = {{"r_k_um", g.r_k * 1e6},
                     {"l_um", g.l * 1e6},
                     {"d_um", g.d * 1e6},
                     {"rho_s_per_m3", g.rho_s}};
    if (res.flux_used) {
      m["flux"] = {{"phi_yig_wb", res.flux_used->phi_yig},
                   {"phi_yig_over_phi0", res.flux_used->phi_yig / cst::flux_quantum},
                   {"quadrature_error_wb", res.flux_used->error_estimate},
                   {"quadrature_evaluations", res.flux_used->evaluations}};
    }
  }
  m["trajectory"] = {{"steps", res.traj.steps},
                     {"rhs_evaluations", res.traj.rhs_evaluations},
                     {"max_trace_dev", res.traj.stats.max_trace_dev},
                     {"max_herm_dev", res.traj.stats.max_herm_dev},
                     {"min_eigenvalue", res.traj.stats.min_eigenvalue}};
  m["warnings"] = res.warnings;

  const auto file = opts.out_dir / (res.config.name + "_manifest.json");
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << m.dump(2) << "\n";
  files.push_back(file);
}

Table populations_table(const dynamics::PopulationSeries& pops, double g_ref) {
  Table t;
  t.columns = {"t_us", "Gt", "P_up", "P_e", "n_mag"};
  for (const auto& [name, _] : pops.basis) t.columns.push_back(name);
  for (std::size_t k = 0; k < pops.t.size(); ++k) {
    std::vector<std::string> row;
    row.push_back(format_float(pops.t[k] * 1e6));
    row.push_back(format_float(pops.t[k] * g_ref));
    row.push_back(format_float(pops.p_up[k]));
    row.push_back(format_float(pops.p_e[k]));
    row.push_back(format_float(pops.n_mag[k]));
    for (const auto& [_, col] : pops.basis) row.push_back(format_float(col[k]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table entanglement_table(const std::vector<entanglement::EntanglementReport>& reps,
                         double g_ref) {
  Table t;
  t.columns = {"t_us",   "Gt",     "E_M_AS", "E_A_MS", "E_S_MA", "E_M_A",  "E_M_S",
               "E_A_S",  "R_M_AS", "R_A_MS", "R_S_MA", "R_min",  "C_A_S",  "S_two_qubit"};
  for (const auto& r : reps) {
    t.rows.push_back({format_float(r.t * 1e6), format_float(r.t * g_ref),
                      format_float(r.e_m_as), format_float(r.e_a_ms), format_float(r.e_s_ma),
                      format_float(r.e_m_a), format_float(r.e_m_s), format_float(r.e_a_s),
                      format_float(r.r_m_as), format_float(r.r_a_ms), format_float(r.r_s_ma),
                      format_float(r.r_min), format_float(r.c_a_s), format_float(r.s_m_as)});
  }
  return t;
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void Table::write_csv(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
}

void Table::write_json(const std::filesystem::path& file) const {
  json j;
  j["columns"] = columns;
  j["rows"] = rows;
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

void Table::write(const std::filesystem::path& file_base, const std::string& format,
                  std::vector<std::filesystem::path>& files) const {
  if (format == "csv") {
    auto f = file_base;
    f += ".csv";
    write_csv(f);
    files.push_back(f);
  } else if (format == "json") {
    auto f = file_base;
    f += ".json";
    write_json(f);
    files.push_back(f);
  } else {
    throw ConfigError("unknown output format: " + format);
  }
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  ScenarioConfig cfg;
  cfg.schema_version = int(get_num(j, "schema_version", origin, 1));
  if (cfg.schema_version != 1) fail(origin + ".schema_version", "unsupported version");
  cfg.name = get_str(j, "name", origin, "scenario");

  const json& h = require(j, "hamiltonian", origin);
  cfg.kind = hilbert::hamiltonian_kind_from_string(
      get_str(h, "kind", origin + ".hamiltonian", "eff_sum"));
  cfg.interaction_frame = get_bool(h, "interaction_frame", origin + ".hamiltonian", true);

  const json& c = require(j, "couplings", origin);
  const std::string mode = get_str(c, "mode", origin + ".couplings", "");
  const bool has_circuit = c.contains("circuit");
  const bool has_direct = c.contains("direct");
  if (has_circuit == has_direct)
    fail(origin + ".couplings", "exactly one of circuit/direct must be provided");
  if (mode != "" && mode != (has_circuit ? "circuit" : "direct"))
    fail(origin + ".couplings.mode", "mode does not match the provided block");
  if (has_circuit) {
    cfg.mode = CouplingMode::Circuit;
    cfg.circuit_params = parse_circuit(c.at("circuit"), origin + ".couplings.circuit");
    cfg.geometry = parse_geometry(require(c, "geometry", origin + ".couplings"),
                                  origin + ".couplings.geometry");
    const std::string res = get_str(c, "resonance", origin + ".couplings", "none");
    if (res == "none") cfg.resonance = Resonance::None;
    else if (res == "sum") cfg.resonance = Resonance::Sum;
    else if (res == "diff") cfg.resonance = Resonance::Diff;
    else if (res == "switch") cfg.resonance = Resonance::Switch;
    else if (res == "jc") cfg.resonance = Resonance::Jc;
    else fail(origin + ".couplings.resonance", "expected none/sum/diff/switch/jc");
  } else {
    cfg.mode = CouplingMode::Direct;
    cfg.direct = parse_direct(c.at("direct"), origin + ".couplings.direct");
  }
  cfg.frequency_scale = get_num(j, "frequency_scale", origin, 1.0);
  if (!(cfg.frequency_scale > 0)) fail(origin + ".frequency_scale", "must be > 0");

  const json& ini = require(j, "initial_state", origin);
  const json& mg = require(ini, "magnon", origin + ".initial_state");
  const std::string mtype = get_str(mg, "type", origin + ".initial_state.magnon", "fock");
  if (mtype == "fock") {
    cfg.magnon.coherent = false;
    cfg.magnon.fock_n = int(get_num(mg, "n", origin + ".initial_state.magnon", 0));
  } else if (mtype == "coherent") {
    cfg.magnon.coherent = true;
    cfg.magnon.alpha = {req_num(mg, "alpha", origin + ".initial_state.magnon"),
                        get_num(mg, "alpha_imag", origin + ".initial_state.magnon", 0.0)};
  } else {
    fail(origin + ".initial_state.magnon.type", "expected fock/coherent");
  }
  cfg.asq = qubit_state(get_str(ini, "asq", origin + ".initial_state", "down"),
                        origin + ".initial_state.asq");
  cfg.scq = qubit_state(get_str(ini, "scq", origin + ".initial_state", "g"),
                        origin + ".initial_state.scq");

  cfg.fock_cutoff = int(req_num(j, "fock_cutoff", origin));
  cfg.grid = parse_grid(require(j, "time_grid", origin), origin + ".time_grid");

  if (j.contains("dissipation")) {
    const json& dd = j.at("dissipation");
    const std::string dpath = origin + ".dissipation";
    cfg.rates.kappa_m = rate_mhz(dd, "kappa_m_mhz", dpath);
    cfg.rates.kappa_a = rate_mhz(dd, "kappa_a_mhz", dpath);
    cfg.rates.kappa_s = rate_mhz(dd, "kappa_s_mhz", dpath);
    cfg.rates.gamma_a = rate_mhz(dd, "gamma_a_mhz", dpath);
    cfg.rates.gamma_s = rate_mhz(dd, "gamma_s_mhz", dpath);
    const std::string conv = get_str(dd, "dephasing_convention", dpath, "literal");
    if (conv == "literal") cfg.rates.convention = DephasingConvention::Literal;
    else if (conv == "half") cfg.rates.convention = DephasingConvention::Half;
    else fail(dpath + ".dephasing_convention", "expected literal/half");
  }
  if (j.contains("integrator")) {
    const json& it = j.at("integrator");
    cfg.integrator.rtol = get_num(it, "rtol", origin + ".integrator", cfg.integrator.rtol);
    cfg.integrator.atol = get_num(it, "atol", origin + ".integrator", cfg.integrator.atol);
    if (!(cfg.integrator.rtol > 0) || !(cfg.integrator.atol > 0))
      fail(origin + ".integrator", "tolerances must be > 0");
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    cfg.outputs.populations = get_bool(o, "populations", origin + ".outputs", true);
    cfg.outputs.entanglement = get_bool(o, "entanglement", origin + ".outputs", false);
    cfg.outputs.analytic_overlay = get_bool(o, "analytic_overlay", origin + ".outputs", false);
    if (o.contains("basis_states")) {
      if (!o.at("basis_states").is_array())
        fail(origin + ".outputs.basis_states", "expected an array");
      for (const auto& s : o.at("basis_states")) {
        if (!s.is_string()) fail(origin + ".outputs.basis_states", "expected strings");
        cfg.outputs.basis_states.push_back(
            parse_basis_label(s.get<std::string>(), origin + ".outputs.basis_states"));
      }
    }
  }
  cfg.compare_with_total = get_bool(j, "compare_with_total", origin, false);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), file.filename().string());
}

circuit::CouplingSet resolve_couplings(const ScenarioConfig& cfg,
                                       std::optional<flux::FluxResult>* flux_out,
                                       std::vector<std::string>& warnings) {
  circuit::CouplingSet c;
  if (cfg.mode == CouplingMode::Circuit) {
    circuit::CircuitParams p = cfg.circuit_params;
    flux::FluxResult fr = flux::phi_yig(cfg.geometry);
    if (flux_out) *flux_out = fr;
    for (auto& w : flux::check_warnings(fr.phi_yig)) warnings.push_back(w);
    c = circuit::coupling_strengths(p, fr.phi_yig);
    switch (cfg.resonance) {
      case Resonance::None: break;
      case Resonance::Sum: c.omega_m = c.omega_a - c.omega_s; break;
      case Resonance::Diff: c.omega_m = c.omega_a + c.omega_s; break;
      case Resonance::Switch: c.omega_m = c.omega_a; break;
      case Resonance::Jc: c.omega_m = c.omega_a = c.omega_s; break;
    }
    if (cfg.resonance == Resonance::Sum && c.omega_m <= 0)
      throw ConfigError("resonance 'sum' needs omega_a > omega_s");
    for (auto& w : circuit::check_warnings(p)) warnings.push_back(w);
  } else {
    c = cfg.direct;
  }
  c.omega_m /= cfg.frequency_scale;
  c.omega_a /= cfg.frequency_scale;
  c.omega_s /= cfg.frequency_scale;
  return c;
}

namespace {

double reference_coupling(const ScenarioConfig& cfg, const circuit::CouplingSet& c) {
  const double g = (cfg.kind == hilbert::HamiltonianKind::EffSwitch) ? c.J : c.G;
  return std::abs(g);
}

dynamics::LindbladModel build_model(const ScenarioConfig& cfg, const circuit::CouplingSet& c,
                                    hilbert::HamiltonianKind kind, bool interaction_frame,
                                    const hilbert::SpaceSpec& spec,
                                    std::vector<std::string>& warnings) {
  dynamics::LindbladModel model;
  model.hamiltonian = hilbert::build_hamiltonian(kind, c, spec, interaction_frame, &warnings);
  const auto ops = hilbert::build_operators(spec);
  const double fac = cfg.rates.convention == DephasingConvention::Half ? 0.5 : 1.0;
  auto add = [&](const hilbert::Matrix& op, double rate, const char* label) {
    if (rate > 0) model.channels.push_back({op, rate, label});
  };
  add(ops.m, cfg.rates.kappa_m, "kappa_m");
  add(ops.sa_minus, cfg.rates.kappa_a, "kappa_a");
  add(ops.ss_minus, cfg.rates.kappa_s, "kappa_s");
  add(ops.sa_z, cfg.rates.gamma_a * fac, "gamma_a");
  add(ops.ss_z, cfg.rates.gamma_s * fac, "gamma_s");
  return model;
}

hilbert::Vector initial_state(const ScenarioConfig& cfg, const hilbert::SpaceSpec& spec,
                              std::vector<std::string>& warnings) {
  Eigen::VectorXcd magnon;
  if (cfg.magnon.coherent) {
    magnon = hilbert::coherent_amplitudes(cfg.magnon.alpha, spec, &warnings);
  } else {
    if (cfg.magnon.fock_n >= spec.fock_cutoff)
      throw ConfigError("initial_state.magnon.n exceeds the Fock cutoff");
    magnon = Eigen::VectorXcd::Zero(spec.fock_cutoff);
    magnon(cfg.magnon.fock_n) = 1.0;
  }
  return hilbert::product_state(spec, magnon, qubit_vector(cfg.asq), qubit_vector(cfg.scq));
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  ScenarioResult res;
  res.config = cfg;
  std::optional<flux::FluxResult> fr;
  res.couplings = resolve_couplings(cfg, &fr, res.warnings);
  res.flux_used = fr;
  res.g_ref = reference_coupling(cfg, res.couplings);

  hilbert::SpaceSpec spec{cfg.fock_cutoff};
  const auto t_grid = make_grid(cfg.grid, res.g_ref);
  const hilbert::Vector psi0 = initial_state(cfg, spec, res.warnings);

  dynamics::LindbladModel model =
      build_model(cfg, res.couplings, cfg.kind, cfg.interaction_frame, spec, res.warnings);

  if (model.channels.empty()) {
    res.traj = dynamics::evolve_pure(psi0, model.hamiltonian, t_grid, cfg.integrator);
  } else {
    hilbert::Matrix rho0 = psi0 * psi0.adjoint();
    res.traj = dynamics::evolve(rho0, model, t_grid, cfg.integrator);
  }
  res.pops = dynamics::populations(res.traj, spec, cfg.outputs.basis_states);

  if (cfg.outputs.entanglement) {
    const auto dims = hilbert::subsystem_dims(spec);
    res.reports.resize(res.traj.size());
    parallel_for(
        res.traj.size(),
        [&](std::size_t k) {
          if (res.traj.pure)
            res.reports[k] =
                entanglement::analyze(res.traj.pure_states[k], dims, res.traj.times[k]);
          else
            res.reports[k] = entanglement::analyze(res.traj.states[k], dims, res.traj.times[k]);
        },
        opts.threads);
  }

  if (cfg.compare_with_total) {
    std::vector<std::string> total_warnings;
    dynamics::LindbladModel total = build_model(cfg, res.couplings,
                                                hilbert::HamiltonianKind::Total,
                                                /*interaction_frame=*/false, spec,
                                                total_warnings);
    dynamics::Trajectory ttraj;
    if (total.channels.empty()) {
      ttraj = dynamics::evolve_pure(psi0, total.hamiltonian, t_grid, cfg.integrator);
    } else {
      hilbert::Matrix rho0 = psi0 * psi0.adjoint();
      ttraj = dynamics::evolve(rho0, total, t_grid, cfg.integrator);
    }
    res.total_pops = dynamics::populations(ttraj, spec, cfg.outputs.basis_states);
  }

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    if (cfg.outputs.populations)
      populations_table(res.pops, res.g_ref)
          .write(opts.out_dir / (cfg.name + "_populations"), opts.format, res.files);
    if (res.total_pops)
      populations_table(*res.total_pops, res.g_ref)
          .write(opts.out_dir / (cfg.name + "_total_populations"), opts.format, res.files);
    if (cfg.outputs.entanglement)
      entanglement_table(res.reports, res.g_ref)
          .write(opts.out_dir / (cfg.name + "_entanglement"), opts.format, res.files);
    if (cfg.outputs.analytic_overlay) {
      AnalyticConfig ac;
      ac.name = cfg.name + "_analytic";
      ac.alpha = cfg.magnon.coherent ? cfg.magnon.alpha : std::complex<double>(0, 0);
      ac.coupling_g = res.g_ref;
      ac.match_cutoff = cfg.fock_cutoff;
      ac.grid = cfg.grid;
      for (auto& f : run_analytic(ac, opts)) res.files.push_back(f);
    }
    write_manifest(res, opts, res.files);
  }
  return res;
}

AnalyticConfig parse_analytic(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  AnalyticConfig cfg;
  cfg.name = get_str(j, "name", origin, "analytic");
  cfg.alpha = {req_num(j, "alpha", origin), get_num(j, "alpha_imag", origin, 0.0)};
  cfg.coupling_g = cst::mhz_to_angular(req_num(j, "g_mhz", origin));
  if (j.contains("n_terms")) cfg.n_terms = int(num_at(j.at("n_terms"), origin + ".n_terms"));
  if (j.contains("match_cutoff"))
    cfg.match_cutoff = int(num_at(j.at("match_cutoff"), origin + ".match_cutoff"));
  cfg.grid = parse_grid(require(j, "time_grid", origin), origin + ".time_grid");
  return cfg;
}

std::vector<std::filesystem::path> run_analytic(const AnalyticConfig& cfg,
                                                const RunOptions& opts) {
  analytic::CollapseRevivalParams p =
      cfg.match_cutoff
          ? analytic::make_params(cfg.alpha, cfg.coupling_g, cfg.match_cutoff, true)
          : analytic::make_params(cfg.alpha, cfg.coupling_g, cfg.n_terms, false);
  const auto t_grid = make_grid(cfg.grid, std::abs(cfg.coupling_g));
  const double nbar = analytic::mean_occupation(p);

  Table pop;
  pop.columns = {"t_us", "Gt", "P_up", "P_e", "n_mag"};
  Table ent;
  ent.columns = {"t_us",  "Gt",     "E_M_AS", "E_A_MS", "E_S_MA", "E_M_A", "E_M_S",
                 "E_A_S", "R_M_AS", "R_A_MS", "R_S_MA", "R_min",  "C_A_S", "S_two_qubit"};
  for (double t : t_grid) {
    const auto [p_up, p_e] = analytic::analytic_populations(t, p);
    pop.rows.push_back({format_float(t * 1e6), format_float(t * std::abs(cfg.coupling_g)),
                        format_float(p_up), format_float(p_e), format_float(nbar + p_e)});
    const auto e = analytic::analytic_entanglement(t, p);
    const double r_m_as = e.e_m_as * e.e_m_as;
    const double r_a_ms = e.e_a_ms * e.e_a_ms - e.e_a_s * e.e_a_s;
    const double r_min = std::min(r_m_as, r_a_ms);
    ent.rows.push_back({format_float(t * 1e6), format_float(t * std::abs(cfg.coupling_g)),
                        format_float(e.e_m_as), format_float(e.e_a_ms),
                        format_float(e.e_a_ms), format_float(0.0), format_float(0.0),
                        format_float(e.e_a_s), format_float(r_m_as), format_float(r_a_ms),
                        format_float(r_a_ms), format_float(r_min), format_float(e.c_a_s),
                        format_float(e.s_m_as)});
  }
  std::vector<std::filesystem::path> files;
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    pop.write(opts.out_dir / (cfg.name + "_populations"), opts.format, files);
    ent.write(opts.out_dir / (cfg.name + "_entanglement"), opts.format, files);
  }
  return files;
}

std::vector<std::pair<std::string, std::filesystem::path>> bundled_scenarios() {
  namespace fs = std::filesystem;
  const fs::path dir = MASQ_CONFIG_DIR;
  std::vector<std::pair<std::string, fs::path>> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json")
      out.emplace_back(e.path().stem().string(), e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path bundled_scenario_path(const std::string& name) {
  for (const auto& [n, p] : bundled_scenarios())
    if (n == name) return p;
  throw ConfigError("unknown bundled scenario: " + name);
}

}  // namespace masq::scenario
