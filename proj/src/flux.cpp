#include "masq/flux.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "masq/constants.hpp"
#include "masq/errors.hpp"
#include "masq/quadrature.hpp"

namespace masq::flux {

namespace {
constexpr double pi = std::numbers::pi;
}

DeviceGeometry::DeviceGeometry() : rho_s(constants::yig_spin_density) {}

void validate(const DeviceGeometry& g) {
  if (!(g.r_k > 0)) throw ConfigError("DeviceGeometry.r_k must be > 0");
  if (!(g.l > 0)) throw ConfigError("DeviceGeometry.l must be > 0");
  if (g.d < 0) throw ConfigError("DeviceGeometry.d must be >= 0");
  if (!(g.rho_s > 0)) throw ConfigError("DeviceGeometry.rho_s must be > 0");
}

double spin_count(const DeviceGeometry& g) {
  return g.rho_s * (4.0 * pi / 3.0) * g.r_k * g.r_k * g.r_k;
}

Eigen::Vector3d dipole_field(const Eigen::Vector3d& moment, const Eigen::Vector3d& r_vec) {
  const double r = r_vec.norm();
  if (!(r > 0)) throw ConfigError("dipole_field: zero position vector");
  const double r2 = r * r;
  return constants::mu_0 / (4.0 * pi * r2 * r) *
         (3.0 * r_vec * moment.dot(r_vec) / r2 - moment);
}

FluxResult phi_yig(const DeviceGeometry& g, double rel_tol) {
  validate(g);
  const double R2 = g.r_k * g.r_k;
  // integrand over y in [-l, l], z in [d, d+2l]:
  //   3 R^2 / (R^2+y^2+z^2)^{5/2} - 1 / (R^2+y^2+z^2)^{3/2}
  auto f = [R2](double y, double z) {
    const double r2 = R2 + y * y + z * z;
    const double r3 = r2 * std::sqrt(r2);
    return (3.0 * R2 / r2 - 1.0) / r3;
  };
  quadrature::Result q =
      quadrature::integrate_2d(f, -g.l, g.l, g.d, g.d + 2.0 * g.l, rel_tol);
  const double pref = constants::hbar * constants::mu_0 * constants::gyromagnetic_yig *
                      std::sqrt(spin_count(g) / 2.0) / (4.0 * pi);
  FluxResult out;
  out.phi_yig = pref * q.value;
  out.error_estimate = pref * q.error;
  out.evaluations = q.evaluations;
  if (std::abs(q.value) > 0 && out.error_estimate > 100.0 * rel_tol * std::abs(out.phi_yig)) {
    std::ostringstream os;
    os << "phi_yig: quadrature error estimate " << out.error_estimate
       << " Wb exceeds the requested tolerance (value " << out.phi_yig << " Wb)";
    throw NumericalError(os.str());
  }
  return out;
}

std::vector<std::string> check_warnings(double phi_yig_wb) {
  std::vector<std::string> w;
  const double small = pi * std::abs(phi_yig_wb) / constants::flux_quantum;
  if (small > 0.05) {
    std::ostringstream os;
    os << "pi |Phi_YIG|/Phi_0 = " << small
       << " > 0.05; the linearized flux expansion is unreliable";
    w.push_back(os.str());
  }
  return w;
}

}  // namespace masq::flux
