#include "masq/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "masq/constants.hpp"
#include "masq/errors.hpp"
#include "masq/parallel.hpp"

namespace masq::sweep {

namespace {

using json = nlohmann::json;
namespace cst = masq::constants;

const std::vector<std::string> kKeys = {
    "phi_ext_ratio", "asymmetry", "e_so_mhz", "e_c_mhz",  "ej_sum_ghz", "ej_over_ec",
    "b_z_mt",        "b_k_mt",    "r_k_um",   "l_um",     "d_um",       "squeeze_r"};

bool geometry_key(const std::string& k) {
  return k == "r_k_um" || k == "l_um" || k == "d_um";
}

void apply_key(const std::string& key, double v, circuit::CircuitParams& p,
               flux::DeviceGeometry& g, double& squeeze_r) {
  if (key == "phi_ext_ratio") p.phi_ext_ratio = v;
  else if (key == "asymmetry") p.asymmetry = v;
  else if (key == "e_so_mhz") p.e_so = cst::mhz_to_angular(v);
  else if (key == "e_c_mhz") p.e_c = cst::mhz_to_angular(v);
  else if (key == "ej_sum_ghz") p.ej_sum = cst::ghz_to_angular(v);
  else if (key == "ej_over_ec") p.e_c = p.ej_sum / v;
  else if (key == "b_z_mt") p.b_z = v * 1e-3;
  else if (key == "b_k_mt") p.b_k = v * 1e-3;
  else if (key == "r_k_um") g.r_k = v * 1e-6;
  else if (key == "l_um") g.l = v * 1e-6;
  else if (key == "d_um") g.d = v * 1e-6;
  else if (key == "squeeze_r") squeeze_r = v;
  else throw ConfigError("unknown sweep key: " + key);
}

Axis parse_axis(const json& j, const std::string& path) {
  Axis a;
  if (!j.is_object()) throw ConfigError("config error at '" + path + "': expected an object");
  if (!j.contains("key") || !j.at("key").is_string())
    throw ConfigError("config error at '" + path + ".key': missing or not a string");
  a.key = j.at("key").get<std::string>();
  if (std::find(kKeys.begin(), kKeys.end(), a.key) == kKeys.end())
    throw ConfigError("config error at '" + path + ".key': unknown sweep key " + a.key);
  auto need = [&](const char* k) {
    if (!j.contains(k) || !j.at(k).is_number())
      throw ConfigError("config error at '" + path + "." + k + "': missing number");
    return j.at(k).get<double>();
  };
  a.start = need("start");
  a.stop = need("stop");
  a.step = need("step");
  if (!(a.step > 0)) throw ConfigError("config error at '" + path + ".step': must be > 0");
  if (a.stop < a.start)
    throw ConfigError("config error at '" + path + "': empty range (stop < start)");
  return a;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v;
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= n; ++k) v.push_back(start + double(k) * step);
  return v;
}

SweepSpec parse_sweep(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  SweepSpec s;
  if (j.contains("name") && j.at("name").is_string()) s.name = j.at("name").get<std::string>();
  if (!j.contains("sweep")) throw ConfigError("config error at '" + origin + ".sweep': missing key");
  s.axis = parse_axis(j.at("sweep"), origin + ".sweep");
  if (j.contains("outer")) s.outer = parse_axis(j.at("outer"), origin + ".outer");

  if (!j.contains("circuit"))
    throw ConfigError("config error at '" + origin + ".circuit': missing key");
  const json& c = j.at("circuit");
  auto num = [&](const char* k, double def) {
    return (c.contains(k) && c.at(k).is_number()) ? c.at(k).get<double>() : def;
  };
  s.base.e_so = cst::mhz_to_angular(num("e_so_mhz", 600.0));
  s.base.ej_sum = cst::ghz_to_angular(num("ej_sum_ghz", 10.0));
  s.base.e_c = cst::mhz_to_angular(num("e_c_mhz", 200.0));
  s.base.asymmetry = num("asymmetry", 0.1);
  s.base.phi_ext_ratio = num("phi_ext_ratio", 0.35);
  s.base.b_z = num("b_z_mt", 0.0) * 1e-3;
  s.base.b_k = num("b_k_mt", 0.0) * 1e-3;
  s.base.g_l = num("g_lande", cst::g_lande_default);

  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    auto gnum = [&](const char* k, double def) {
      return (g.contains(k) && g.at(k).is_number()) ? g.at(k).get<double>() : def;
    };
    s.geometry.r_k = gnum("r_k_um", 30.0) * 1e-6;
    s.geometry.l = gnum("l_um", s.geometry.r_k * 1e6) * 1e-6;
    s.geometry.d = gnum("d_um", 0.0) * 1e-6;
    s.geometry.rho_s = gnum("rho_s_per_m3", cst::yig_spin_density);
  } else {
    s.geometry.r_k = 30e-6;
    s.geometry.l = 30e-6;
    s.geometry.d = 0.0;
  }
  return s;
}

SweepSpec load_sweep(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep(ss.str(), file.filename().string());
}

SweepResult run_sweep(const SweepSpec& spec, const scenario::RunOptions& opts) {
  SweepResult res;
  res.spec = spec;

  std::vector<std::pair<std::optional<double>, double>> points;
  const auto inner = spec.axis.values();
  if (spec.outer) {
    for (double o : spec.outer->values())
      for (double v : inner) points.emplace_back(o, v);
  } else {
    for (double v : inner) points.emplace_back(std::nullopt, v);
  }
  res.rows.resize(points.size());

  // flux depends only on geometry; reuse it when geometry is not swept
  const bool sweeps_geometry = geometry_key(spec.axis.key) ||
                               (spec.outer && geometry_key(spec.outer->key));
  std::optional<double> fixed_flux;
  if (!sweeps_geometry) fixed_flux = flux::phi_yig(spec.geometry).phi_yig;

  parallel_for(
      points.size(),
      [&](std::size_t i) {
        SweepRow& row = res.rows[i];
        row.outer = points[i].first;
        row.value = points[i].second;
        try {
          circuit::CircuitParams p = spec.base;
          flux::DeviceGeometry g = spec.geometry;
          double squeeze_r = 0.0;
          if (row.outer) apply_key(spec.outer->key, *row.outer, p, g, squeeze_r);
          apply_key(spec.axis.key, row.value, p, g, squeeze_r);
          row.phi_yig = fixed_flux ? *fixed_flux : flux::phi_yig(g).phi_yig;
          row.couplings = circuit::coupling_strengths(p, row.phi_yig);
          row.g_eff = row.couplings.G * std::cosh(squeeze_r);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      },
      opts.threads);

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    scenario::Table t;
    if (spec.outer) t.columns.push_back(spec.outer->key);
    t.columns.push_back(spec.axis.key);
    for (const char* c : {"omega_m_ghz", "omega_a_ghz", "omega_s_ghz", "G_mhz", "J_mhz",
                          "g1_mhz", "g2_mhz", "g2_bar_mhz", "g3_mhz", "g3_bar_mhz",
                          "phi_yig_wb", "phi_yig_over_phi0", "g_eff_mhz", "error"})
      t.columns.push_back(c);
    for (const auto& r : res.rows) {
      std::vector<std::string> row;
      if (spec.outer) row.push_back(scenario::format_float(r.outer.value_or(0.0)));
      row.push_back(scenario::format_float(r.value));
      if (r.error.empty()) {
        const auto& c = r.couplings;
        for (double v : {cst::angular_to_ghz(c.omega_m), cst::angular_to_ghz(c.omega_a),
                         cst::angular_to_ghz(c.omega_s), cst::angular_to_mhz(c.G),
                         cst::angular_to_mhz(c.J), cst::angular_to_mhz(c.g1),
                         cst::angular_to_mhz(c.g2), cst::angular_to_mhz(c.g2_bar),
                         cst::angular_to_mhz(c.g3), cst::angular_to_mhz(c.g3_bar), r.phi_yig,
                         r.phi_yig / cst::flux_quantum, cst::angular_to_mhz(r.g_eff)})
          row.push_back(scenario::format_float(v));
        row.push_back("");
      } else {
        for (int k = 0; k < 13; ++k) row.push_back("nan");
        std::string msg = r.error;
        for (auto& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        row.push_back(msg);
      }
      t.rows.push_back(std::move(row));
    }
    t.write(opts.out_dir / (spec.name + "_sweep"), opts.format, res.files);
  }
  return res;
}

}  // namespace masq::sweep
