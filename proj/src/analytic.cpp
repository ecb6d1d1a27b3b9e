#include "masq/analytic.hpp"

#include <cmath>

#include "masq/errors.hpp"

namespace masq::analytic {

namespace {

// Renormalized coherent amplitudes |c_n| for n < n_terms (real, alpha -> |alpha|).
std::vector<double> amplitudes(const CollapseRevivalParams& p) {
  if (p.n_terms < 2) throw ConfigError("CollapseRevivalParams.n_terms must be >= 2");
  const double a = std::abs(p.alpha);
  std::vector<double> c(p.n_terms);
  c[0] = 1.0;
  for (int k = 1; k < p.n_terms; ++k) c[k] = c[k - 1] * a / std::sqrt(double(k));
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  if (p.truncated_pair_model) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : c) v *= inv;
  } else {
    // untruncated series: e^{-|a|^2/2} prefactor; n_terms is assumed to
    // carry the whole Poisson mass (tail < 1e-12 by construction)
    const double pref = std::exp(-0.5 * a * a);
    for (double& v : c) v *= pref;
  }
  return c;
}

double binary_entropy_bits(double p) {
  double s = 0.0;
  if (p > 1e-12) s -= p * std::log2(p);
  if (1.0 - p > 1e-12) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

}  // namespace

CollapseRevivalParams make_params(std::complex<double> alpha, double coupling_g,
                                  std::optional<int> n_terms, bool truncated_pair_model) {
  CollapseRevivalParams p;
  p.alpha = alpha;
  p.coupling_g = coupling_g;
  p.truncated_pair_model = truncated_pair_model;
  if (n_terms) {
    p.n_terms = *n_terms;
  } else {
    const double nbar = std::norm(alpha);
    p.n_terms = std::max(16, int(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 10.0)));
  }
  return p;
}

double series_X(double t, const CollapseRevivalParams& p) {
  const auto c = amplitudes(p);
  const int top = p.n_terms - 1;
  double x = 0.0;
  for (int n = 0; n < top; ++n) {
    const double w = c[n] * c[n];
    x += w * std::cos(2.0 * p.coupling_g * std::sqrt(double(n + 1)) * t);
  }
  // in the pair-truncated model the top level has no partner and is static
  x += c[top] * c[top] * (p.truncated_pair_model
                              ? 1.0
                              : std::cos(2.0 * p.coupling_g * std::sqrt(double(top + 1)) * t));
  return x;
}

double series_Y(double t, const CollapseRevivalParams& p) {
  const auto c = amplitudes(p);
  double y = 0.0;
  for (int n = 1; n < p.n_terms; ++n) {
    const double on = p.coupling_g * std::sqrt(double(n + 1));
    const double onm1 = p.coupling_g * std::sqrt(double(n));
    double cos_term = std::cos(on * t);
    if (p.truncated_pair_model && n == p.n_terms - 1) cos_term = 1.0;  // dark top level
    y += cos_term * std::sin(onm1 * t) * c[n - 1] * c[n];
  }
  return y;
}

Populations analytic_populations(double t, const CollapseRevivalParams& p) {
  const double x = series_X(t, p);
  return {0.5 + 0.5 * x, 0.5 - 0.5 * x};
}

double mean_occupation(const CollapseRevivalParams& p) {
  const auto c = amplitudes(p);
  double nbar = 0.0, norm = 0.0;
  for (int n = 0; n < p.n_terms; ++n) {
    nbar += n * c[n] * c[n];
    norm += c[n] * c[n];
  }
  return nbar / norm;
}

AnalyticEntanglement analytic_entanglement(double t, const CollapseRevivalParams& p) {
  const double x = series_X(t, p);
  const double y = series_Y(t, p);
  double delta = std::hypot(x, 2.0 * y);
  if (delta > 1.0) {
    if (delta > 1.0 + 1e-9)
      throw NumericalError("analytic_entanglement: delta > 1, series truncation too coarse");
    delta = 1.0;
  }
  AnalyticEntanglement out{};
  out.delta = delta;
  out.s_m_as = binary_entropy_bits(0.5 * (1.0 + delta));
  const double p_up = 0.5 + 0.5 * x;
  out.s_a_ms = binary_entropy_bits(std::min(1.0, std::max(0.0, p_up)));
  out.c_a_s = std::min(1.0, 2.0 * std::abs(y));
  out.e_m_as = std::log2(1.0 + std::sqrt(std::max(0.0, 1.0 - delta * delta)));
  const double xc = std::min(1.0, std::abs(x));
  out.e_a_ms = std::log2(1.0 + std::sqrt(1.0 - xc * xc));
  out.e_a_s = std::log2(1.0 + 2.0 * std::abs(y));
  return out;
}

}  // namespace masq::analytic
