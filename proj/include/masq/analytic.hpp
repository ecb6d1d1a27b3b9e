#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace masq::analytic {

/// Closed-form series for the resonant three-body scenario from
/// |alpha, up, g>: populations, the X/Y sums, reduced-state eigenvalues,
/// entropies and concurrence. Only |alpha| enters any reported quantity,
/// so complex alpha is accepted.
struct CollapseRevivalParams {
  std::complex<double> alpha{0.0, 0.0};
  double coupling_g = 0.0;  ///< G [rad/s]
  int n_terms = 0;          ///< number of Fock levels carried by the series
  /// Mirror a numerical run at the same Fock cutoff: renormalized Poisson
  /// weights and a dark top level (its pair partner is truncated away).
  bool truncated_pair_model = false;
};

/// n_terms from the Poisson tail rule (tail mass < 1e-12) unless given.
CollapseRevivalParams make_params(std::complex<double> alpha, double coupling_g,
                                  std::optional<int> n_terms = std::nullopt,
                                  bool truncated_pair_model = false);

/// X(t) = sum_n w_n cos(2 Omega_n t), Omega_n = G sqrt(n+1).
double series_X(double t, const CollapseRevivalParams& p);

/// Y(t) = sum_{n>=1} cos(Omega_n t) sin(Omega_{n-1} t) e^{-|a|^2}|a|^{2n-1}/((n-1)! sqrt(n)).
/// Signed as written; the concurrence is 2|Y|.
double series_Y(double t, const CollapseRevivalParams& p);

struct Populations {
  double p_up, p_e;
};
Populations analytic_populations(double t, const CollapseRevivalParams& p);

/// Mean magnon occupation of the (possibly truncated) initial coherent state.
double mean_occupation(const CollapseRevivalParams& p);

struct AnalyticEntanglement {
  double s_m_as;   ///< entropy of the two-qubit reduction, bits
  double s_a_ms;   ///< single-qubit entropy, bits
  double c_a_s;    ///< concurrence 2|Y|
  double e_m_as;   ///< log-negativity of the M|AS cut (pure state)
  double e_a_ms;   ///< log-negativity of the A|MS cut (pure state)
  double e_a_s;    ///< log-negativity of the two-qubit reduction
  double delta;    ///< sqrt(X^2 + 4Y^2), reduced-state eigenvalues (1 +/- delta)/2
};
AnalyticEntanglement analytic_entanglement(double t, const CollapseRevivalParams& p);

}  // namespace masq::analytic
