#include "masq/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "masq/errors.hpp"

namespace masq::hilbert {

namespace {

using std::complex;

Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) {
  Matrix ab(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      ab.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  Matrix abc(ab.rows() * c.rows(), ab.cols() * c.cols());
  for (Eigen::Index i = 0; i < ab.rows(); ++i)
    for (Eigen::Index j = 0; j < ab.cols(); ++j)
      abc.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = ab(i, j) * c;
  return abc;
}

void check_spec(const SpaceSpec& spec) {
  if (spec.fock_cutoff < 2) throw ConfigError("SpaceSpec.fock_cutoff must be >= 2");
  const double dim = 4.0 * spec.fock_cutoff;
  // dense complex matrix budget: refuse above ~1 GiB
  if (dim * dim * 16.0 > 1.0e9)
    throw ConfigError("SpaceSpec: dense dimension " + std::to_string(4 * spec.fock_cutoff) +
                      " exceeds the memory guard");
}

void check_resonance(HamiltonianKind kind, const circuit::CouplingSet& c,
                     std::vector<std::string>* warnings) {
  double mismatch = 0.0;
  double scale = std::max({std::abs(c.omega_m), std::abs(c.omega_a), std::abs(c.omega_s), 1.0});
  switch (kind) {
    case HamiltonianKind::EffSum: mismatch = c.omega_a - c.omega_m - c.omega_s; break;
    case HamiltonianKind::EffDiff:
    case HamiltonianKind::SqueezedEff: mismatch = c.omega_m - c.omega_a - c.omega_s; break;
    case HamiltonianKind::EffSwitch: mismatch = c.omega_m - c.omega_a; break;
    case HamiltonianKind::JCComparison:
      mismatch = std::max(std::abs(c.omega_m - c.omega_a), std::abs(c.omega_m - c.omega_s));
      break;
    default: return;
  }
  if (std::abs(mismatch) > 1e-6 * scale && warnings) {
    std::ostringstream os;
    os << to_string(kind) << ": resonance condition violated by "
       << std::abs(mismatch) / scale << " relative";
    warnings->push_back(os.str());
  }
}

}  // namespace

int dimension(const SpaceSpec& spec) { return 4 * spec.fock_cutoff; }

std::array<Eigen::Index, 3> subsystem_dims(const SpaceSpec& spec) {
  return {spec.fock_cutoff, 2, 2};
}

Eigen::Index basis_index(const SpaceSpec& spec, int n, bool asq_up, bool scq_e) {
  if (n < 0 || n >= spec.fock_cutoff)
    throw ConfigError("basis_index: Fock level out of range");
  return (static_cast<Eigen::Index>(n) * 2 + (asq_up ? 1 : 0)) * 2 + (scq_e ? 1 : 0);
}

OperatorSet build_operators(const SpaceSpec& spec) {
  check_spec(spec);
  const int n = spec.fock_cutoff;
  Matrix lower = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(double(k));
  Matrix id_m = Matrix::Identity(n, n);
  Matrix id_q = Matrix::Identity(2, 2);
  Matrix sm = Matrix::Zero(2, 2);
  sm(0, 1) = 1.0;  // |g><e|
  Matrix sp = sm.adjoint();
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  Matrix sx = sm + sp;

  OperatorSet ops;
  ops.m = kron3(lower, id_q, id_q);
  ops.m_dag = ops.m.adjoint();
  ops.n_mag = ops.m_dag * ops.m;
  ops.sa_plus = kron3(id_m, sp, id_q);
  ops.sa_minus = kron3(id_m, sm, id_q);
  ops.sa_z = kron3(id_m, sz, id_q);
  ops.sa_x = kron3(id_m, sx, id_q);
  ops.ss_plus = kron3(id_m, id_q, sp);
  ops.ss_minus = kron3(id_m, id_q, sm);
  ops.ss_z = kron3(id_m, id_q, sz);
  ops.ss_x = kron3(id_m, id_q, sx);
  ops.identity = Matrix::Identity(4 * n, 4 * n);
  return ops;
}

const char* to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::Total: return "total";
    case HamiltonianKind::EffSum: return "eff_sum";
    case HamiltonianKind::EffDiff: return "eff_diff";
    case HamiltonianKind::EffSwitch: return "eff_switch";
    case HamiltonianKind::JCComparison: return "jc_comparison";
    case HamiltonianKind::SqueezedEff: return "squeezed_eff";
  }
  return "?";
}

HamiltonianKind hamiltonian_kind_from_string(const std::string& name) {
  if (name == "total") return HamiltonianKind::Total;
  if (name == "eff_sum") return HamiltonianKind::EffSum;
  if (name == "eff_diff") return HamiltonianKind::EffDiff;
  if (name == "eff_switch") return HamiltonianKind::EffSwitch;
  if (name == "jc_comparison") return HamiltonianKind::JCComparison;
  if (name == "squeezed_eff") return HamiltonianKind::SqueezedEff;
  throw ConfigError("unknown hamiltonian kind: " + name);
}

Matrix build_hamiltonian(HamiltonianKind kind, const circuit::CouplingSet& c,
                         const SpaceSpec& spec, bool interaction_frame,
                         std::vector<std::string>* warnings) {
  check_spec(spec);
  if (interaction_frame && kind == HamiltonianKind::Total)
    throw ConfigError("build_hamiltonian: Total has no interaction-frame form");
  check_resonance(kind, c, warnings);

  OperatorSet o = build_operators(spec);
  Matrix h = Matrix::Zero(dimension(spec), dimension(spec));
  if (!interaction_frame) {
    h += c.omega_m * o.n_mag + 0.5 * c.omega_a * o.sa_z + 0.5 * c.omega_s * o.ss_z;
  }
  switch (kind) {
    case HamiltonianKind::EffSum: {
      Matrix t = c.G * o.m_dag * o.ss_plus * o.sa_minus;
      h += t + t.adjoint();
      break;
    }
    case HamiltonianKind::EffDiff:
    case HamiltonianKind::SqueezedEff: {
      Matrix t = c.G * o.m * o.ss_plus * o.sa_plus;
      h += t + t.adjoint();
      break;
    }
    case HamiltonianKind::EffSwitch: {
      Matrix t = c.J * (o.ss_plus * o.ss_minus - o.identity) * o.m * o.sa_plus;
      h += t + t.adjoint();
      break;
    }
    case HamiltonianKind::JCComparison: {
      Matrix t = c.G * (o.m_dag * o.sa_minus + o.m_dag * o.ss_minus);
      h += t + t.adjoint();
      break;
    }
    case HamiltonianKind::Total: {
      Matrix thr1 = c.G * (o.ss_plus + o.ss_minus) * (o.m + o.m_dag) * o.sa_x;
      Matrix thr2 = c.J * o.ss_plus * o.ss_minus * o.m * o.sa_plus;
      Matrix two1 = c.g1 * o.m * o.sa_plus;
      Matrix two2 = c.g2 * o.ss_minus * o.sa_plus;
      Matrix two2b = c.g2_bar * o.ss_plus * o.ss_minus * o.sa_x;
      Matrix two3 = c.g3 * o.m * o.ss_plus;
      Matrix two3b = c.g3_bar * o.ss_plus * o.ss_minus * (o.m + o.m_dag);
      h += thr1;  // already Hermitian
      h += thr2 + thr2.adjoint();
      h += two1 + two1.adjoint();
      h += two2 + two2.adjoint();
      h += two2b;  // Hermitian
      h += two3 + two3.adjoint();
      h += two3b;  // Hermitian
      break;
    }
  }
  // symmetrize away rounding asymmetry
  h = 0.5 * (h + Matrix(h.adjoint()));
  return h;
}

Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, const SpaceSpec& spec,
                                     std::vector<std::string>* warnings) {
  check_spec(spec);
  const int n = spec.fock_cutoff;
  const double a2 = std::norm(alpha);
  if (warnings && a2 + 6.0 * std::sqrt(a2) > n) {
    std::ostringstream os;
    os << "coherent state |alpha|=" << std::sqrt(a2) << " poorly resolved at cutoff N=" << n
       << " (need N >= |alpha|^2 + 6|alpha|)";
    warnings->push_back(os.str());
  }
  Eigen::VectorXcd c(n);
  // c_k = alpha^k / sqrt(k!) via stable recursion, renormalized after truncation
  c(0) = 1.0;
  for (int k = 1; k < n; ++k) c(k) = c(k - 1) * alpha / std::sqrt(double(k));
  c /= c.norm();
  return c;
}

Vector product_state(const SpaceSpec& spec, const Eigen::VectorXcd& magnon,
                     const Eigen::Vector2cd& asq, const Eigen::Vector2cd& scq) {
  if (magnon.size() != spec.fock_cutoff)
    throw ConfigError("product_state: magnon factor has wrong dimension");
  Vector psi(dimension(spec));
  for (int n = 0; n < spec.fock_cutoff; ++n)
    for (int a = 0; a < 2; ++a)
      for (int s = 0; s < 2; ++s)
        psi((n * 2 + a) * 2 + s) = magnon(n) * asq(a) * scq(s);
  return psi;
}

Vector basis_state(const SpaceSpec& spec, int n, bool asq_up, bool scq_e) {
  Vector psi = Vector::Zero(dimension(spec));
  psi(basis_index(spec, n, asq_up, scq_e)) = 1.0;
  return psi;
}

Vector coherent_state(std::complex<double> alpha, const SpaceSpec& spec, bool asq_up,
                      bool scq_e, std::vector<std::string>* warnings) {
  Eigen::Vector2cd a = Eigen::Vector2cd::Zero(), s = Eigen::Vector2cd::Zero();
  a(asq_up ? 1 : 0) = 1.0;
  s(scq_e ? 1 : 0) = 1.0;
  return product_state(spec, coherent_amplitudes(alpha, spec, warnings), a, s);
}

}  // namespace masq::hilbert
