#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace masq::flux {

/// YIG sphere / SQUID loop geometry. Loop lies in the yz plane with the
/// coordinate origin at the midpoint of its left arm; the sphere center
/// sits at (R_K, 0, -d).
struct DeviceGeometry {
  double r_k = 0;    ///< sphere radius [m]
  double l = 0;      ///< SQUID half side [m]
  double d = 0;      ///< vertical offset [m], >= 0
  double rho_s;      ///< spin density [1/m^3]

  DeviceGeometry();
};

void validate(const DeviceGeometry& g);

/// Total number of spins N_S = rho_s (4 pi/3) R_K^3.
double spin_count(const DeviceGeometry& g);

/// Stray dipole field B = mu0/(4 pi r^3) [3 r (mu.r)/r^2 - mu], tesla.
Eigen::Vector3d dipole_field(const Eigen::Vector3d& moment, const Eigen::Vector3d& r_vec);

struct FluxResult {
  double phi_yig = 0;        ///< Wb (signed)
  double error_estimate = 0; ///< absolute error estimate of the quadrature, Wb
  long evaluations = 0;
};

/// Flux integral Phi_YIG through the loop by adaptive quadrature,
/// estimated relative error below rel_tol. Throws masq::NumericalError
/// when the quadrature fails to converge.
FluxResult phi_yig(const DeviceGeometry& g, double rel_tol = 1e-10);

/// Warning when pi |Phi_YIG|/Phi_0 is no longer small (the linearized
/// flux expansion breaks down above ~0.05).
std::vector<std::string> check_warnings(double phi_yig_wb);

}  // namespace masq::flux
