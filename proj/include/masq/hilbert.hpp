#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "masq/circuit.hpp"

namespace masq::hilbert {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncated tripartite space (magnon Fock cutoff N) x (ASQ) x (SCQ),
/// fixed tensor ordering (magnon, ASQ, SCQ). Qubit basis index 0 is the
/// ground state (|down>, |g>), index 1 the excited state (|up>, |e>).
struct SpaceSpec {
  int fock_cutoff = 2;  ///< N >= 2, Fock levels 0..N-1
};

int dimension(const SpaceSpec& spec);
std::array<Eigen::Index, 3> subsystem_dims(const SpaceSpec& spec);

/// Flat index of |n, asq, scq> under the fixed ordering.
Eigen::Index basis_index(const SpaceSpec& spec, int n, bool asq_up, bool scq_e);

/// Embedded single-subsystem operators on the full space.
struct OperatorSet {
  Matrix m, m_dag, n_mag;
  Matrix sa_plus, sa_minus, sa_z, sa_x;
  Matrix ss_plus, ss_minus, ss_z, ss_x;
  Matrix identity;
};

OperatorSet build_operators(const SpaceSpec& spec);

enum class HamiltonianKind {
  Total,        ///< free + three-body (G and J terms) + all two-body terms
  EffSum,       ///< omega_a = omega_m + omega_s: G(m^dag ss+ sa- + h.c.)
  EffDiff,      ///< omega_m = omega_a + omega_s: G(m ss+ sa+ + h.c.)
  EffSwitch,    ///< omega_m = omega_a: J(ss+ ss- - 1)(m sa+ + h.c.)
  JCComparison, ///< omega_m = omega_a = omega_s: g(m^dag sa- + m^dag ss- + h.c.)
  SqueezedEff,  ///< detuned EffDiff with enhanced coupling
};

const char* to_string(HamiltonianKind kind);
HamiltonianKind hamiltonian_kind_from_string(const std::string& name);

/// Builds the requested Hamiltonian in angular-frequency units (H/hbar,
/// rad/s). With interaction_frame the free part is dropped, which is
/// exact on resonance; a mismatch beyond 1e-6 relative appends a warning.
/// Total and SqueezedEff must be built in the lab frame.
Matrix build_hamiltonian(HamiltonianKind kind, const circuit::CouplingSet& c,
                         const SpaceSpec& spec, bool interaction_frame,
                         std::vector<std::string>* warnings = nullptr);

/// Truncation-renormalized coherent state on the magnon factor,
/// dimension N. Warns when |alpha|^2 + 6|alpha| exceeds the cutoff.
Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, const SpaceSpec& spec,
                                     std::vector<std::string>* warnings = nullptr);

/// Full-space product state magnon (x) ASQ (x) SCQ.
Vector product_state(const SpaceSpec& spec, const Eigen::VectorXcd& magnon,
                     const Eigen::Vector2cd& asq, const Eigen::Vector2cd& scq);

Vector basis_state(const SpaceSpec& spec, int n, bool asq_up, bool scq_e);

Vector coherent_state(std::complex<double> alpha, const SpaceSpec& spec, bool asq_up,
                      bool scq_e, std::vector<std::string>* warnings = nullptr);

}  // namespace masq::hilbert
