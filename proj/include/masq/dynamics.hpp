#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "masq/hilbert.hpp"

namespace masq::dynamics {

using hilbert::Matrix;
using hilbert::Vector;

/// One Lindblad channel: collapse operator and nonnegative rate.
struct Channel {
  Matrix op;
  double rate = 0.0;
  std::string label;
};

struct LindbladModel {
  Matrix hamiltonian;  ///< H/hbar [rad/s]
  std::vector<Channel> channels;
};

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double trace_tol = 1e-8;   ///< |tr rho - 1| bound at samples
  double herm_tol = 1e-9;    ///< max|rho - rho^dag| bound at samples
  double psd_tol = 1e-8;     ///< eigenvalues above -psd_tol at samples
  bool check_positivity = true;
};

struct InvariantStats {
  double max_trace_dev = 0.0;
  double max_herm_dev = 0.0;
  double min_eigenvalue = 1.0;
};

/// Sampled evolution record. Pure runs store state vectors, master-equation
/// runs density matrices; `density_at` presents both uniformly.
struct Trajectory {
  std::vector<double> times;
  bool pure = false;
  std::vector<Vector> pure_states;
  std::vector<Matrix> states;
  InvariantStats stats;
  IntegratorOptions options;
  long steps = 0;
  long rhs_evaluations = 0;

  std::size_t size() const { return times.size(); }
  Matrix density_at(std::size_t k) const;
};

/// Integrates the Lindblad master equation from rho0 (the state at
/// t_grid.front()) and samples at every grid point. Throws
/// masq::NumericalError on step-size underflow or invariant breach.
Trajectory evolve(const Matrix& rho0, const LindbladModel& model,
                  const std::vector<double>& t_grid, const IntegratorOptions& opts = {});

/// Closed-system special case on the state vector.
Trajectory evolve_pure(const Vector& psi0, const Matrix& hamiltonian,
                       const std::vector<double>& t_grid, const IntegratorOptions& opts = {});

/// A named basis projector |n, asq, scq>.
struct BasisStateLabel {
  int n = 0;
  bool asq_up = false;
  bool scq_e = false;
  std::string column() const;
};

struct PopulationSeries {
  std::vector<double> t;
  std::vector<double> p_up;   ///< tr(rho sa+ sa-)
  std::vector<double> p_e;    ///< tr(rho ss+ ss-)
  std::vector<double> n_mag;  ///< <m^dag m>
  std::vector<std::pair<std::string, std::vector<double>>> basis;
};

/// Population time series; probabilities clamped to [0, 1] for output.
PopulationSeries populations(const Trajectory& traj, const hilbert::SpaceSpec& spec,
                             const std::vector<BasisStateLabel>& basis_states = {});

}  // namespace masq::dynamics
