#include "masq/dynamics.hpp"

#include <Eigen/SparseCore>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "masq/errors.hpp"

namespace masq::dynamics {

namespace {

using Sparse = Eigen::SparseMatrix<std::complex<double>>;
using std::complex;

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

template <class Rhs>
class Dopri5 {
 public:
  Dopri5(Rhs rhs, Vector y0, double t0, const IntegratorOptions& opts)
      : rhs_(std::move(rhs)), y_(std::move(y0)), t_(t0), opts_(opts) {
    const Eigen::Index n = y_.size();
    for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_}) k->resize(n);
    ytmp_.resize(n);
    y5_.resize(n);
  }

  void advance_to(double t_target) {
    if (t_target < t_) throw ConfigError("integrator: time grid must be increasing");
    if (t_target == t_) return;
    if (!have_k1_) {
      rhs_(t_, y_, k1_);
      ++evals_;
      have_k1_ = true;
    }
    if (h_ <= 0.0) h_ = initial_step(t_target - t_);
    while (t_ < t_target) {
      const double remaining = t_target - t_;
      double h = std::min(h_, remaining);
      if (!try_step(h)) continue;  // rejected; h_ already shrunk
      t_ += h;
      y_.swap(y5_);
      k1_.swap(k7_);  // FSAL
      ++steps_;
    }
  }

  const Vector& state() const { return y_; }
  long steps() const { return steps_; }
  long evals() const { return evals_; }

 private:
  double initial_step(double span) const {
    const double fscale = k1_.norm() / std::max(1e-300, y_.norm());
    double h = (fscale > 0) ? 0.01 / fscale : span * 1e-3;
    return std::min(h, span);
  }

  bool try_step(double h) {
    const double eps = std::numeric_limits<double>::epsilon();
    if (h < 64.0 * eps * std::max(std::abs(t_), 1.0))
      throw NumericalError("integrator: step-size underflow at t = " + std::to_string(t_));

    ytmp_ = y_ + h * A21 * k1_;
    rhs_(t_ + C2 * h, ytmp_, k2_);
    ytmp_ = y_ + h * (A31 * k1_ + A32 * k2_);
    rhs_(t_ + C3 * h, ytmp_, k3_);
    ytmp_ = y_ + h * (A41 * k1_ + A42 * k2_ + A43 * k3_);
    rhs_(t_ + C4 * h, ytmp_, k4_);
    ytmp_ = y_ + h * (A51 * k1_ + A52 * k2_ + A53 * k3_ + A54 * k4_);
    rhs_(t_ + C5 * h, ytmp_, k5_);
    ytmp_ = y_ + h * (A61 * k1_ + A62 * k2_ + A63 * k3_ + A64 * k4_ + A65 * k5_);
    rhs_(t_ + h, ytmp_, k6_);
    y5_ = y_ + h * (B1 * k1_ + B3 * k3_ + B4 * k4_ + B5 * k5_ + B6 * k6_);
    rhs_(t_ + h, y5_, k7_);
    evals_ += 6;

    // scaled RMS of the embedded error
    double acc = 0.0;
    const Eigen::Index n = y_.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      const complex<double> e =
          h * (E1 * k1_(i) + E3 * k3_(i) + E4 * k4_(i) + E5 * k5_(i) + E6 * k6_(i) +
               E7 * k7_(i));
      const double sc =
          opts_.atol + opts_.rtol * std::max(std::abs(y_(i)), std::abs(y5_(i)));
      const double r = std::abs(e) / sc;
      acc += r * r;
    }
    const double err = std::sqrt(acc / double(n));
    const double factor =
        (err > 0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    if (err <= 1.0) {
      h_ = h * factor;
      return true;
    }
    h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
    return false;
  }

  Rhs rhs_;
  Vector y_;
  double t_;
  IntegratorOptions opts_;
  double h_ = 0.0;
  bool have_k1_ = false;
  long steps_ = 0, evals_ = 0;
  Vector k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, y5_;
};

struct SchrodingerRhs {
  Sparse minus_i_h;
  void operator()(double, const Vector& y, Vector& dy) { dy.noalias() = minus_i_h * y; }
};

struct LindbladRhs {
  Sparse k_op, k_dag;  // K = -iH - (1/2) sum gamma L^dag L
  std::vector<std::pair<Sparse, Sparse>> jumps;  // (sqrt(g) L, sqrt(g) L^dag)
  Eigen::Index dim = 0;
  Matrix tmp;

  void operator()(double, const Vector& y, Vector& dy) {
    Eigen::Map<const Matrix> rho(y.data(), dim, dim);
    Eigen::Map<Matrix> out(dy.data(), dim, dim);
    out.noalias() = k_op * rho;
    out.noalias() += rho * k_dag;
    for (const auto& [l, ldag] : jumps) {
      tmp.noalias() = l * rho;
      out.noalias() += tmp * ldag;
    }
  }
};

void validate_model(const LindbladModel& model) {
  const Eigen::Index d = model.hamiltonian.rows();
  if (d == 0 || model.hamiltonian.cols() != d)
    throw ConfigError("LindbladModel: Hamiltonian must be square");
  for (const auto& ch : model.channels) {
    if (ch.rate < 0) throw ConfigError("LindbladModel: negative rate for " + ch.label);
    if (ch.op.rows() != d || ch.op.cols() != d)
      throw ConfigError("LindbladModel: channel dimension mismatch for " + ch.label);
  }
}

void check_sample(const Matrix& rho, double t, const IntegratorOptions& opts,
                  InvariantStats& stats) {
  const double trace_dev = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
  const double herm_dev = (rho - Matrix(rho.adjoint())).cwiseAbs().maxCoeff();
  stats.max_trace_dev = std::max(stats.max_trace_dev, trace_dev);
  stats.max_herm_dev = std::max(stats.max_herm_dev, herm_dev);
  if (trace_dev > opts.trace_tol) {
    std::ostringstream os;
    os << "trajectory invariant violated at t = " << t << ": |tr rho - 1| = " << trace_dev;
    throw NumericalError(os.str());
  }
  if (herm_dev > opts.herm_tol) {
    std::ostringstream os;
    os << "trajectory invariant violated at t = " << t << ": Hermiticity deviation " << herm_dev;
    throw NumericalError(os.str());
  }
  if (opts.check_positivity) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + Matrix(rho.adjoint())),
                                             Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    stats.min_eigenvalue = std::min(stats.min_eigenvalue, min_ev);
    if (min_ev < -opts.psd_tol) {
      std::ostringstream os;
      os << "trajectory invariant violated at t = " << t << ": min eigenvalue " << min_ev;
      throw NumericalError(os.str());
    }
  }
}

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw ConfigError("evolve: empty time grid");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1]))
      throw ConfigError("evolve: time grid must be strictly increasing");
}

}  // namespace

Matrix Trajectory::density_at(std::size_t k) const {
  if (pure) return pure_states.at(k) * pure_states.at(k).adjoint();
  return states.at(k);
}

Trajectory evolve(const Matrix& rho0, const LindbladModel& model,
                  const std::vector<double>& t_grid, const IntegratorOptions& opts) {
  validate_model(model);
  check_grid(t_grid);
  const Eigen::Index d = model.hamiltonian.rows();
  if (rho0.rows() != d || rho0.cols() != d)
    throw ConfigError("evolve: initial state dimension mismatch");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-10 ||
      (rho0 - Matrix(rho0.adjoint())).cwiseAbs().maxCoeff() > 1e-10)
    throw ConfigError("evolve: rho0 must be Hermitian with unit trace");
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw ConfigError("evolve: rho0 must be positive semidefinite");
  }

  LindbladRhs rhs;
  rhs.dim = d;
  rhs.tmp.resize(d, d);
  const complex<double> minus_i(0.0, -1.0);
  Matrix k_dense = minus_i * model.hamiltonian;
  for (const auto& ch : model.channels) {
    if (ch.rate == 0.0) continue;
    k_dense -= 0.5 * ch.rate * Matrix(ch.op.adjoint() * ch.op);
    const double s = std::sqrt(ch.rate);
    rhs.jumps.emplace_back(Sparse((s * ch.op).sparseView()),
                           Sparse((s * Matrix(ch.op.adjoint())).sparseView()));
  }
  rhs.k_op = k_dense.sparseView();
  rhs.k_dag = Matrix(k_dense.adjoint()).sparseView();

  Vector y0 = Eigen::Map<const Vector>(rho0.data(), d * d);
  Dopri5<LindbladRhs> stepper(std::move(rhs), std::move(y0), t_grid.front(), opts);

  Trajectory traj;
  traj.pure = false;
  traj.options = opts;
  traj.times = t_grid;
  traj.states.reserve(t_grid.size());
  for (double t : t_grid) {
    stepper.advance_to(t);
    Matrix rho = Eigen::Map<const Matrix>(stepper.state().data(), d, d);
    check_sample(rho, t, opts, traj.stats);
    traj.states.push_back(std::move(rho));
  }
  traj.steps = stepper.steps();
  traj.rhs_evaluations = stepper.evals();
  return traj;
}

Trajectory evolve_pure(const Vector& psi0, const Matrix& hamiltonian,
                       const std::vector<double>& t_grid, const IntegratorOptions& opts) {
  check_grid(t_grid);
  const Eigen::Index d = hamiltonian.rows();
  if (hamiltonian.cols() != d) throw ConfigError("evolve_pure: Hamiltonian must be square");
  if (psi0.size() != d) throw ConfigError("evolve_pure: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw ConfigError("evolve_pure: psi0 must be normalized");

  SchrodingerRhs rhs;
  rhs.minus_i_h = Matrix(std::complex<double>(0.0, -1.0) * hamiltonian).sparseView();
  Dopri5<SchrodingerRhs> stepper(std::move(rhs), psi0, t_grid.front(), opts);

  Trajectory traj;
  traj.pure = true;
  traj.options = opts;
  traj.times = t_grid;
  traj.pure_states.reserve(t_grid.size());
  for (double t : t_grid) {
    stepper.advance_to(t);
    Vector psi = stepper.state();
    const double norm_dev = std::abs(psi.squaredNorm() - 1.0);
    traj.stats.max_trace_dev = std::max(traj.stats.max_trace_dev, norm_dev);
    if (norm_dev > opts.trace_tol)
      throw NumericalError("evolve_pure: norm drift " + std::to_string(norm_dev) + " at t = " +
                           std::to_string(t));
    traj.pure_states.push_back(std::move(psi));
  }
  traj.stats.min_eigenvalue = 0.0;
  traj.steps = stepper.steps();
  traj.rhs_evaluations = stepper.evals();
  return traj;
}

std::string BasisStateLabel::column() const {
  std::ostringstream os;
  os << "P_" << n << (asq_up ? "_up_" : "_dn_") << (scq_e ? "e" : "g");
  return os.str();
}

PopulationSeries populations(const Trajectory& traj, const hilbert::SpaceSpec& spec,
                             const std::vector<BasisStateLabel>& basis_states) {
  const Eigen::Index d = hilbert::dimension(spec);
  PopulationSeries out;
  out.t = traj.times;
  out.p_up.reserve(traj.size());
  out.p_e.reserve(traj.size());
  out.n_mag.reserve(traj.size());
  for (const auto& b : basis_states) out.basis.emplace_back(b.column(), std::vector<double>{});

  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };

  for (std::size_t k = 0; k < traj.size(); ++k) {
    Eigen::VectorXd diag(d);
    if (traj.pure) {
      const Vector& psi = traj.pure_states[k];
      if (psi.size() != d) throw ConfigError("populations: SpaceSpec mismatch");
      diag = psi.cwiseAbs2();
    } else {
      const Matrix& rho = traj.states[k];
      if (rho.rows() != d) throw ConfigError("populations: SpaceSpec mismatch");
      diag = rho.diagonal().real();
    }
    double p_up = 0, p_e = 0, n_mag = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const int n = int(i / 4);
      const int a = int((i / 2) % 2);
      const int s = int(i % 2);
      if (a == 1) p_up += diag(i);
      if (s == 1) p_e += diag(i);
      n_mag += n * diag(i);
    }
    out.p_up.push_back(clamp01(p_up));
    out.p_e.push_back(clamp01(p_e));
    out.n_mag.push_back(std::max(0.0, n_mag));
    for (std::size_t bi = 0; bi < basis_states.size(); ++bi) {
      const auto& b = basis_states[bi];
      out.basis[bi].second.push_back(
          clamp01(diag(hilbert::basis_index(spec, b.n, b.asq_up, b.scq_e))));
    }
  }
  return out;
}

}  // namespace masq::dynamics
