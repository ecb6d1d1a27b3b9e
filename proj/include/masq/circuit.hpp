#pragma once

#include <string>
#include <vector>

namespace masq::circuit {

/// Physical circuit parameters. All energies are stored as angular
/// frequencies E/hbar in rad/s; fields in tesla.
struct CircuitParams {
  double e_so = 0.0;          ///< spin-orbit energy E_SO/hbar [rad/s]
  double ej_sum = 0.0;        ///< E_J + E_0 [rad/s]
  double asymmetry = 0.0;     ///< a = (E_J - E_0)/E_J^sum, |a| < 1
  double e_c = 0.0;           ///< charging energy [rad/s]
  double phi_ext_ratio = 0.0; ///< Phi_ext/Phi_0
  double b_z = 0.0;           ///< Zeeman field on the junction [T]
  double b_k = 0.0;           ///< bias field on the YIG sphere [T]
  double g_l;                 ///< Lande factor (defaults in ctor)
  double theta;               ///< spin-polarization angle [rad], pi/2 for the three-body scheme
  bool exact_asq_frequency = false;  ///< use the exact two-level splitting instead of E_Z/hbar
  double phi1;                ///< junction phase entering the exact splitting [rad]

  CircuitParams();
};

/// Hard parameter validation. Throws masq::ConfigError on violations
/// (non-positive energies, |a| >= 1, deep non-transmon regime).
void validate(const CircuitParams& p);

/// Soft checks: transmon window, Zeeman dominance. Returns warning strings.
std::vector<std::string> check_warnings(const CircuitParams& p);

/// sin(pi x) and cos(pi x) with exact zeros at (half-)integer x.
double sin_pi(double x);
double cos_pi(double x);

/// SQUID factor S(pi * phi_ext_ratio) = sqrt(cos^2 + a^2 sin^2), in [|a|, 1].
double squid_factor(double phi_ext_ratio, double a);

struct ModeFrequencies {
  double omega_m;  ///< Kittel mode, gamma_0 * B_K [rad/s]
  double omega_a;  ///< ASQ splitting [rad/s]
  double omega_s;  ///< SCQ transition [rad/s]
};

ModeFrequencies mode_frequencies(const CircuitParams& p);

/// The three mode frequencies and all seven coupling strengths, signed
/// as in the closed-form expressions. Angular frequencies, rad/s.
struct CouplingSet {
  double omega_m = 0, omega_a = 0, omega_s = 0;
  double G = 0;       ///< three-body, linear-in-phase term
  double J = 0;       ///< three-body, quadratic-in-phase term
  double g1 = 0;      ///< magnon-ASQ exchange
  double g2 = 0;      ///< ASQ-SCQ exchange
  double g2_bar = 0;  ///< radiation-pressure ASQ drive gated by SCQ occupancy
  double g3 = 0;      ///< magnon-SCQ exchange
  double g3_bar = 0;  ///< radiation-pressure magnon drive gated by SCQ occupancy
};

CouplingSet coupling_strengths(const CircuitParams& p, double phi_yig_wb);

/// Parametric (Kerr + drive) enhancement inputs.
struct EnhancementParams {
  double k_an = 0;             ///< first-order anisotropy constant [J/m^3]
  double m_s = 0;              ///< saturation magnetization [A/m]
  double v_k = 0;              ///< sphere volume [m^3]
  double drive_amplitude = 0;  ///< Omega_d [rad/s]
  double drive_frequency = 0;  ///< omega_d [rad/s]
  double mean_field = 0;       ///< <m>, real
};

struct EnhancedCouplings {
  double g_eff;         ///< G cosh r
  double j_eff;         ///< J cosh r
  double delta_m_eff;   ///< effective magnon detuning [rad/s]
  double squeeze_r;     ///< r = artanh(K_d/Delta_m_tilde)/2
  double kerr;          ///< bare Kerr coefficient K [rad/s]
  double kerr_driven;   ///< K_d = 2 K <m>^2 [rad/s]
  double delta_m_tilde; ///< Delta_m - K - 4 K <m>^2 [rad/s]
};

double kerr_coefficient(const EnhancementParams& e);

/// Bogoliubov-enhanced couplings. Throws masq::NumericalError when
/// |K_d/Delta_m_tilde| >= 1 (no real squeeze parameter).
EnhancedCouplings enhanced_coupling(const CouplingSet& c, const EnhancementParams& e);

/// cosh(artanh(x)/2) for |x| < 1; the G_eff/G ratio at squeeze ratio x.
double enhancement_factor(double kd_over_delta);

}  // namespace masq::circuit
