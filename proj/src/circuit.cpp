#include "masq/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "masq/constants.hpp"
#include "masq/errors.hpp"

namespace masq::circuit {

namespace {
constexpr double pi = std::numbers::pi;

std::string fmt_mhz(double w) {
  std::ostringstream os;
  os << constants::angular_to_mhz(w) << " MHz";
  return os.str();
}
}  // namespace

CircuitParams::CircuitParams()
    : g_l(constants::g_lande_default), theta(pi / 2.0), phi1(pi / 2.0) {}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  // r in [0, 2); exact zeros at integers
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r > 1.0) return -std::sin(pi * (r - 1.0));
  return std::sin(pi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double squid_factor(double phi_ext_ratio, double a) {
  if (std::abs(a) >= 1.0)
    throw ConfigError("squid_factor: |asymmetry| must be < 1, got " + std::to_string(a));
  const double c = cos_pi(phi_ext_ratio);
  const double s = sin_pi(phi_ext_ratio);
  return std::sqrt(c * c + a * a * s * s);
}

void validate(const CircuitParams& p) {
  if (!(p.e_so > 0)) throw ConfigError("CircuitParams.e_so must be > 0");
  if (!(p.ej_sum > 0)) throw ConfigError("CircuitParams.ej_sum must be > 0");
  if (!(p.e_c > 0)) throw ConfigError("CircuitParams.e_c must be > 0");
  if (!(std::abs(p.asymmetry) < 1.0))
    throw ConfigError("CircuitParams.asymmetry must satisfy |a| < 1");
  const double s = squid_factor(p.phi_ext_ratio, p.asymmetry);
  const double transmon = p.ej_sum * s / p.e_c;
  if (transmon < 5.0) {
    std::ostringstream os;
    os << "CircuitParams: E_J^sum S(phi_ext)/E_C = " << transmon
       << " < 5; the two-level transmon reduction is invalid here";
    throw ConfigError(os.str());
  }
}

std::vector<std::string> check_warnings(const CircuitParams& p) {
  std::vector<std::string> w;
  const double s = squid_factor(p.phi_ext_ratio, p.asymmetry);
  const double transmon = p.ej_sum * s / p.e_c;
  if (transmon < 20.0) {
    std::ostringstream os;
    os << "transmon ratio E_J^sum S/E_C = " << transmon << " < 20; anharmonic corrections grow";
    w.push_back(os.str());
  }
  const ModeFrequencies f = mode_frequencies(p);
  if (p.e_so > 0 && f.omega_a / p.e_so < 10.0) {
    std::ostringstream os;
    os << "Zeeman dominance weak: omega_a/(E_SO/hbar) = " << f.omega_a / p.e_so
       << " < 10; two-level ASQ reduction degrades";
    w.push_back(os.str());
  }
  return w;
}

ModeFrequencies mode_frequencies(const CircuitParams& p) {
  ModeFrequencies f{};
  f.omega_m = constants::gyromagnetic_yig * p.b_k;

  const double e_z = p.g_l * constants::mu_bohr * p.b_z / constants::hbar;  // rad/s
  if (p.exact_asq_frequency) {
    const double s1 = std::sin(p.phi1);
    const double rad = e_z * e_z - 4.0 * e_z * p.e_so * s1 * std::cos(p.theta) +
                       4.0 * p.e_so * p.e_so * s1 * s1;
    if (rad < 0)
      throw NumericalError("mode_frequencies: negative radicand in the exact ASQ splitting");
    f.omega_a = std::sqrt(rad);
  } else {
    f.omega_a = e_z;
  }

  const double s = squid_factor(p.phi_ext_ratio, p.asymmetry);
  const double rad = 8.0 * p.e_c * p.ej_sum * s;
  if (rad < 0) throw NumericalError("mode_frequencies: negative radicand in omega_s");
  f.omega_s = std::sqrt(rad) - p.e_c;
  if (f.omega_s <= 0)
    throw NumericalError("mode_frequencies: omega_s <= 0 (non-physical parameters)");
  return f;
}

CouplingSet coupling_strengths(const CircuitParams& p, double phi_yig_wb) {
  if (!std::isfinite(phi_yig_wb))
    throw ConfigError("coupling_strengths: phi_yig must be finite");
  validate(p);

  CouplingSet c{};
  const ModeFrequencies f = mode_frequencies(p);
  c.omega_m = f.omega_m;
  c.omega_a = f.omega_a;
  c.omega_s = f.omega_s;

  const double a = p.asymmetry;
  const double s = squid_factor(p.phi_ext_ratio, a);
  const double s2phi = sin_pi(2.0 * p.phi_ext_ratio);
  const double cphi = cos_pi(p.phi_ext_ratio);
  const double sphi = sin_pi(p.phi_ext_ratio);
  const double q = a * sphi * sphi - cphi * cphi;  // a sin^2 - cos^2
  const double pf = pi * phi_yig_wb / constants::flux_quantum;
  const double zr = 2.0 * p.e_c / p.ej_sum;
  const double zr14 = std::pow(zr, 0.25);
  const double zr12 = std::sqrt(zr);
  const double s54 = std::pow(s, 1.25);
  const double s32 = std::pow(s, 1.5);

  c.G = p.e_so * s2phi * (1.0 + a) * pf / (2.0 * s54) * zr14;
  c.J = p.e_so * q * pf * zr12 / s32;
  c.g1 = -p.e_so * q * pf * (1.0 - 0.5 * std::sqrt(zr / s)) / s;
  c.g2 = p.e_so * q * zr14 / s54;
  c.g2_bar = p.e_so * (1.0 + a) * s2phi * zr12 / (2.0 * s32);
  c.g3 = -a * p.ej_sum * zr14 * pf / s54;
  c.g3_bar = -(1.0 - a * a) * s2phi * p.ej_sum * zr12 * pf / (2.0 * s32);
  return c;
}

double kerr_coefficient(const EnhancementParams& e) {
  if (!(e.m_s > 0) || !(e.v_k > 0))
    throw ConfigError("EnhancementParams: m_s and v_k must be > 0");
  const double g0 = constants::gyromagnetic_yig;
  return constants::mu_0 * g0 * g0 * e.k_an / (e.m_s * e.m_s * e.v_k);
}

double enhancement_factor(double x) {
  if (!(std::abs(x) < 1.0))
    throw NumericalError("enhancement diverges: |K_d/Delta_m_tilde| >= 1");
  return std::cosh(0.5 * std::atanh(x));
}

EnhancedCouplings enhanced_coupling(const CouplingSet& c, const EnhancementParams& e) {
  EnhancedCouplings out{};
  out.kerr = kerr_coefficient(e);
  out.kerr_driven = 2.0 * out.kerr * e.mean_field * e.mean_field;
  const double delta_m = c.omega_m - e.drive_frequency;
  out.delta_m_tilde = delta_m - out.kerr - 4.0 * out.kerr * e.mean_field * e.mean_field;
  const double x = out.kerr_driven / out.delta_m_tilde;
  if (!(std::abs(x) < 1.0)) {
    std::ostringstream os;
    os << "enhancement diverges: K_d/Delta_m_tilde = " << x << " (K_d = " << fmt_mhz(out.kerr_driven)
       << ", Delta_m_tilde = " << fmt_mhz(out.delta_m_tilde) << ")";
    throw NumericalError(os.str());
  }
  out.squeeze_r = 0.5 * std::atanh(x);
  const double ch = std::cosh(out.squeeze_r);
  out.g_eff = c.G * ch;
  out.j_eff = c.J * ch;
  out.delta_m_eff = out.delta_m_tilde / std::cosh(2.0 * out.squeeze_r);
  return out;
}

}  // namespace masq::circuit
