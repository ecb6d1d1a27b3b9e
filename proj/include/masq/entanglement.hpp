#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace masq::entanglement {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<Eigen::Index>;

/// One-vs-rest and pairwise splits of the fixed (magnon, ASQ, SCQ) ordering.
/// The first-named subsystem of each cut is the transposed one.
enum class Bipartition { M_AS, A_MS, S_MA, M_A, M_S, A_S };

/// Reduced state over the kept subsystems (indices into dims, ascending).
Matrix partial_trace(const Matrix& rho, const Dims& dims, const std::vector<int>& keep);

/// Index-wise partial transpose of subsystem `which`.
Matrix partial_transpose(const Matrix& rho, const Dims& dims, int which);

/// Trace norm sum |lambda_i| of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

/// log2 || rho^T_cut ||_1 >= 0 on the tripartite state rho (input is
/// normalized by its trace first; pair cuts reduce before transposing).
double log_negativity(const Matrix& rho, const std::array<Eigen::Index, 3>& dims,
                      Bipartition cut);

/// Von Neumann entropy in bits; eigenvalues below 1e-12 are treated as zero.
double von_neumann_entropy(const Matrix& rho);

/// Wootters concurrence of a 4x4 two-qubit state.
double concurrence(const Matrix& rho_two_qubit);

/// All measures at one time point. Residuals are stored raw (unclamped);
/// monogamy holds when they stay above -1e-6.
struct EntanglementReport {
  double t = 0;
  double e_m_as = 0, e_a_ms = 0, e_s_ma = 0;
  double e_m_a = 0, e_m_s = 0, e_a_s = 0;
  double r_m_as = 0, r_a_ms = 0, r_s_ma = 0, r_min = 0;
  double s_m_as = 0, s_a_ms = 0, s_s_ma = 0;  ///< entropies of rho_AS, rho_A, rho_S (bits)
  double c_a_s = 0;
};

struct Residuals {
  double r_m_as, r_a_ms, r_s_ma, r_min;
};

/// Residuals R_{i|jk} = E^2_{i|jk} - E^2_{i|j} - E^2_{i|k} with negatives
/// above the -1e-6 numerical floor clamped to zero; a clamp appends a
/// diagnostic string when `diagnostics` is given.
Residuals residual_entanglement(const EntanglementReport& rep,
                                std::vector<std::string>* diagnostics = nullptr);

EntanglementReport analyze(const Matrix& rho, const std::array<Eigen::Index, 3>& dims,
                           double t);
EntanglementReport analyze(const Vector& psi, const std::array<Eigen::Index, 3>& dims,
                           double t);

}  // namespace masq::entanglement
