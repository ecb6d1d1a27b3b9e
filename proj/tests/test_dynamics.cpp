#include <doctest.h>

#include <cmath>

#include "masq/analytic.hpp"
#include "masq/constants.hpp"
#include "masq/dynamics.hpp"
#include "masq/errors.hpp"
#include "masq/hilbert.hpp"

using namespace masq;
using hilbert::Matrix;
using hilbert::Vector;
namespace cst = masq::constants;

namespace {

std::vector<double> linspace(double t1, int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = t1 * k / double(n - 1);
  return t;
}

circuit::CouplingSet sum_couplings(double g_mhz) {
  circuit::CouplingSet c;
  c.omega_s = cst::ghz_to_angular(2.5);
  c.omega_a = cst::ghz_to_angular(10.0);
  c.omega_m = c.omega_a - c.omega_s;
  c.G = cst::mhz_to_angular(g_mhz);
  return c;
}

}  // namespace

TEST_CASE("free evolution leaves the state untouched") {
  hilbert::SpaceSpec spec{2};
  Matrix h = Matrix::Zero(8, 8);
  Vector psi = hilbert::coherent_state(0.7, spec, true, false);
  Matrix rho0 = psi * psi.adjoint();
  dynamics::LindbladModel model{h, {}};
  auto traj = dynamics::evolve(rho0, model, linspace(1e-6, 5));
  CHECK((traj.states.back() - rho0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-qubit amplitude decay") {
  // one qubit (N = 2 magnon unused), channel (sa-, kappa): P_e = e^{-kt}
  hilbert::SpaceSpec spec{2};
  auto o = hilbert::build_operators(spec);
  const double kappa = cst::mhz_to_angular(0.3);
  Vector psi = hilbert::basis_state(spec, 0, true, false);
  dynamics::LindbladModel model{Matrix::Zero(8, 8), {{o.sa_minus, kappa, "kappa_a"}}};
  auto traj = dynamics::evolve(psi * psi.adjoint(), model, linspace(3.0 / kappa, 40));
  auto pops = dynamics::populations(traj, spec);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    worst = std::max(worst, std::abs(pops.p_up[k] - std::exp(-kappa * traj.times[k])));
  CHECK(worst < 1e-6);
}

TEST_CASE("rabi transfer in the n=0 pair") {
  hilbert::SpaceSpec spec{3};
  auto c = sum_couplings(1.5);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, true);
  Vector psi0 = hilbert::basis_state(spec, 0, true, false);
  const double t_pi = M_PI / (2.0 * c.G);
  auto traj = dynamics::evolve_pure(psi0, h, linspace(t_pi, 80));
  const auto target = hilbert::basis_index(spec, 1, false, true);
  // P(|1, dn, e>) = sin^2(Gt), full transfer at t = pi/2G
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double expect = std::pow(std::sin(c.G * traj.times[k]), 2);
    worst = std::max(worst,
                     std::abs(std::norm(traj.pure_states[k](target)) - expect));
  }
  CHECK(worst < 1e-8);
  CHECK(std::norm(traj.pure_states.back()(target)) >= 1.0 - 1e-6);

  // purity sticks to one in closed evolution (density-matrix path)
  dynamics::LindbladModel model{h, {}};
  auto mixed = dynamics::evolve(psi0 * psi0.adjoint(), model, linspace(t_pi, 10));
  for (const auto& rho : mixed.states)
    CHECK(std::abs((rho * rho).trace().real() - 1.0) < 1e-8);
}

TEST_CASE("pure and master-equation paths agree") {
  hilbert::SpaceSpec spec{4};
  auto c = sum_couplings(1.5);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, true);
  Vector psi0 = hilbert::coherent_state(0.8, spec, true, false);
  auto grid = linspace(2.0 / c.G, 9);
  auto pure = dynamics::evolve_pure(psi0, h, grid);
  dynamics::LindbladModel model{h, {}};
  auto mixed = dynamics::evolve(psi0 * psi0.adjoint(), model, grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK((pure.density_at(k) - mixed.states[k]).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("rotating frame equivalence for populations") {
  hilbert::SpaceSpec spec{4};
  // scaled-down frequencies keep the lab-frame integration cheap
  circuit::CouplingSet c = sum_couplings(1.5);
  c.omega_m /= 1000.0;
  c.omega_a /= 1000.0;
  c.omega_s /= 1000.0;
  Matrix h_lab = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, false);
  Matrix h_int = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, true);
  Vector psi0 = hilbert::basis_state(spec, 0, true, false);
  auto grid = linspace(M_PI / c.G, 40);
  auto lab = dynamics::populations(dynamics::evolve_pure(psi0, h_lab, grid), spec);
  auto rot = dynamics::populations(dynamics::evolve_pure(psi0, h_int, grid), spec);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(lab.p_up[k] == doctest::Approx(rot.p_up[k]).epsilon(1e-8));
    CHECK(lab.p_e[k] == doctest::Approx(rot.p_e[k]).epsilon(1e-8));
    CHECK(lab.n_mag[k] == doctest::Approx(rot.n_mag[k]).epsilon(1e-8));
  }
}

TEST_CASE("integrator tolerance convergence") {
  hilbert::SpaceSpec spec{12};
  auto c = sum_couplings(1.5);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, true);
  Vector psi0 = hilbert::coherent_state(2.0, spec, true, false);
  auto grid = linspace(8.0 / c.G, 30);
  dynamics::IntegratorOptions loose, tight;
  loose.rtol = 1e-9;
  tight.rtol = 5e-10;
  auto a = dynamics::populations(dynamics::evolve_pure(psi0, h, grid, loose), spec);
  auto b = dynamics::populations(dynamics::evolve_pure(psi0, h, grid, tight), spec);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(std::abs(a.p_up[k] - b.p_up[k]) < 1e-7);
}

TEST_CASE("numeric matches the analytic series at matched truncation") {
  const int N = 20;
  hilbert::SpaceSpec spec{N};
  auto c = sum_couplings(1.5);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSum, c, spec, true);
  Vector psi0 = hilbert::coherent_state(2.0, spec, true, false);
  auto grid = linspace(12.0 / c.G, 60);
  dynamics::IntegratorOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-13;
  auto pops = dynamics::populations(dynamics::evolve_pure(psi0, h, grid, opts), spec);
  auto p = analytic::make_params(2.0, c.G, N, true);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto [pu, pe] = analytic::analytic_populations(grid[k], p);
    worst = std::max(worst, std::abs(pops.p_up[k] - pu));
    worst = std::max(worst, std::abs(pops.p_e[k] - pe));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("quantum switch branches") {
  hilbert::SpaceSpec spec{3};
  circuit::CouplingSet c;
  c.omega_m = c.omega_a = cst::ghz_to_angular(10.0);
  c.omega_s = cst::ghz_to_angular(1.3);
  c.J = cst::mhz_to_angular(-1.2);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffSwitch, c, spec, true);
  // (|1, dn, g> + |1, dn, e>)/sqrt(2)
  Vector psi0 = (hilbert::basis_state(spec, 1, false, false) +
                 hilbert::basis_state(spec, 1, false, true)) /
                std::sqrt(2.0);
  auto grid = linspace(M_PI / std::abs(c.J), 120);
  auto traj = dynamics::evolve_pure(psi0, h, grid);
  const auto g_target = hilbert::basis_index(spec, 0, true, false);
  const auto e_target = hilbert::basis_index(spec, 0, true, true);
  double g_max = 0.0, e_max = 0.0;
  for (const auto& psi : traj.pure_states) {
    g_max = std::max(g_max, std::norm(psi(g_target)));
    e_max = std::max(e_max, std::norm(psi(e_target)));
  }
  CHECK(2.0 * g_max > 0.999);  // |g> branch swings fully (branch weight 1/2)
  CHECK(e_max < 1e-6);         // |e> branch frozen
}

TEST_CASE("joint excitation correlation under eff_diff") {
  hilbert::SpaceSpec spec{4};
  circuit::CouplingSet c;
  c.omega_a = cst::ghz_to_angular(10.0);
  c.omega_s = cst::ghz_to_angular(2.5);
  c.omega_m = c.omega_a + c.omega_s;
  c.G = cst::mhz_to_angular(1.5);
  Matrix h = hilbert::build_hamiltonian(hilbert::HamiltonianKind::EffDiff, c, spec, true);
  auto o = hilbert::build_operators(spec);
  Vector psi0 = hilbert::basis_state(spec, 1, false, false);
  auto grid = linspace(M_PI / c.G, 60);
  auto traj = dynamics::evolve_pure(psi0, h, grid);
  Matrix corr = o.sa_plus * o.sa_minus * o.ss_plus * o.ss_minus;
  auto pops = dynamics::populations(traj, spec);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double joint =
        (traj.pure_states[k].adjoint() * corr * traj.pure_states[k])(0).real();
    CHECK(std::abs(joint - pops.p_up[k]) < 1e-6);
    CHECK(std::abs(joint - pops.p_e[k]) < 1e-6);
  }
}

TEST_CASE("model validation and invariants") {
  hilbert::SpaceSpec spec{2};
  auto o = hilbert::build_operators(spec);
  Matrix h = Matrix::Zero(8, 8);
  CHECK_THROWS_AS(
      dynamics::evolve(Matrix::Identity(8, 8), {h, {}}, linspace(1.0, 3)),
      ConfigError);  // trace 8, not a state
  dynamics::LindbladModel bad{h, {{o.m, -1.0, "kappa_m"}}};
  Vector psi = hilbert::basis_state(spec, 0, false, false);
  CHECK_THROWS_AS(dynamics::evolve(psi * psi.adjoint(), bad, linspace(1.0, 3)),
                  ConfigError);
  CHECK_THROWS_AS(dynamics::evolve_pure(2.0 * psi, h, linspace(1.0, 3)), ConfigError);
  CHECK_THROWS_AS(dynamics::evolve_pure(psi, h, {0.0, 0.0}), ConfigError);
}
