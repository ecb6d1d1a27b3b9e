#pragma once

#include <numbers>

namespace masq::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double planck_h = 6.62607015e-34;     // J s
inline constexpr double mu_0 = 1.25663706212e-6;       // N/A^2
inline constexpr double mu_bohr = 9.2740100783e-24;    // J/T
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double flux_quantum = planck_h / (2.0 * elementary_charge);  // Wb, Phi_0 = h/2e

// YIG Kittel-mode gyromagnetic ratio, gamma_0/2pi = 28.0 GHz/T.
inline constexpr double gyromagnetic_yig = 2.0 * std::numbers::pi * 28.0e9;  // rad/s/T

// Lande factor of the quantum-dot junction spin.
inline constexpr double g_lande_default = 12.7;

// YIG spin density.
inline constexpr double yig_spin_density = 2.14e28;  // 1/m^3

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Unit helpers: everything internal is an angular frequency in rad/s;
// configs and the CLI speak ordinary frequency (value/2pi) in MHz/GHz.
inline constexpr double mhz_to_angular(double f_mhz) { return two_pi * f_mhz * 1e6; }
inline constexpr double ghz_to_angular(double f_ghz) { return two_pi * f_ghz * 1e9; }
inline constexpr double angular_to_mhz(double w) { return w / (two_pi * 1e6); }
inline constexpr double angular_to_ghz(double w) { return w / (two_pi * 1e9); }

}  // namespace masq::constants
