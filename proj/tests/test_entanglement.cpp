#include <doctest.h>

#include <cmath>
#include <random>

#include "masq/entanglement.hpp"
#include "masq/errors.hpp"
#include "masq/hilbert.hpp"

using namespace masq;
using entanglement::Bipartition;
using hilbert::Matrix;
using hilbert::Vector;

namespace {

Matrix outer(const Vector& v) { return v * v.adjoint(); }

// Independent brute-force oracle: partial transpose by explicit index
// arithmetic over a two-factor split (dA x dB), trace norm via eigenvalues.
Matrix brute_pt_first(const Matrix& rho, int dA, int dB) {
  Matrix out(dA * dB, dA * dB);
  for (int a = 0; a < dA; ++a)
    for (int r = 0; r < dB; ++r)
      for (int b = 0; b < dA; ++b)
        for (int s = 0; s < dB; ++s)
          out(b * dB + r, a * dB + s) = rho(a * dB + r, b * dB + s);
  return out;
}

double brute_logneg_first(const Matrix& rho, int dA, int dB) {
  Matrix pt = brute_pt_first(rho, dA, dB);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  return std::log2(es.eigenvalues().cwiseAbs().sum());
}

// random normalized pure state
Vector random_state(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(g(rng), g(rng));
  return v / v.norm();
}

// pure-state shortcut: E = log2((sum_i sqrt(lambda_i))^2) over the
// reduced-state spectrum
double schmidt_logneg(const Matrix& rho_reduced) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_reduced, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return std::log2(s * s);
}

}  // namespace

TEST_CASE("partial trace") {
  // product state rho_M x rho_A x rho_S, keep {A}
  Vector m = random_state(3, 1), a = random_state(2, 2), s = random_state(2, 3);
  Matrix rho_m = outer(m), rho_a = outer(a), rho_s = outer(s);
  Matrix rho(12, 12);
  for (int i1 = 0; i1 < 3; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int k1 = 0; k1 < 2; ++k1)
        for (int i2 = 0; i2 < 3; ++i2)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int k2 = 0; k2 < 2; ++k2)
              rho((i1 * 2 + j1) * 2 + k1, (i2 * 2 + j2) * 2 + k2) =
                  rho_m(i1, i2) * rho_a(j1, j2) * rho_s(k1, k2);
  Matrix red = entanglement::partial_trace(rho, {3, 2, 2}, {1});
  CHECK((red - rho_a).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(red.trace().real() - 1.0) < 1e-12);

  // Bell state on (A,S), keep {A} -> I/2
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  Matrix rho_bell = outer(bell);
  Matrix half = entanglement::partial_trace(rho_bell, {2, 2}, {0});
  CHECK((half - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(entanglement::partial_trace(rho_bell, {2, 2}, {}), ConfigError);
}

TEST_CASE("log negativity basics") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(entanglement::log_negativity(outer(bell), {1, 2, 2}, Bipartition::A_S) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // product states are PPT
  Vector prod = Vector::Zero(4);
  prod(1) = 1.0;
  CHECK(entanglement::log_negativity(outer(prod), {1, 2, 2}, Bipartition::A_S) ==
        doctest::Approx(0.0));
}

TEST_CASE("GHZ against the brute-force oracle") {
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  Matrix rho = outer(ghz);
  const std::array<Eigen::Index, 3> dims{2, 2, 2};

  const double e_first = entanglement::log_negativity(rho, dims, Bipartition::M_AS);
  CHECK(e_first == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e_first == doctest::Approx(brute_logneg_first(rho, 2, 4)).epsilon(1e-10));

  // every pair cut inside a two-party reduction is PPT
  for (auto cut : {Bipartition::M_A, Bipartition::M_S, Bipartition::A_S}) {
    const double e = entanglement::log_negativity(rho, dims, cut);
    CHECK(e == doctest::Approx(0.0));
  }
  Matrix pair = entanglement::partial_trace(rho, {2, 2, 2}, {0, 1});
  CHECK(brute_logneg_first(pair, 2, 2) == doctest::Approx(0.0));

  // GHZ residuals: R = 1 for every split
  auto rep = entanglement::analyze(rho, dims, 0.0);
  CHECK(rep.r_m_as == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.r_a_ms == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.r_s_ma == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.r_min == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("library vs brute force on random states") {
  for (unsigned seed = 10; seed < 16; ++seed) {
    Vector psi = random_state(3 * 2 * 2, seed);
    Matrix rho = outer(psi);
    const std::array<Eigen::Index, 3> dims{3, 2, 2};
    const double lib = entanglement::log_negativity(rho, dims, Bipartition::M_AS);
    CHECK(lib == doctest::Approx(brute_logneg_first(rho, 3, 4)).epsilon(1e-10));
    // pure-state Schmidt shortcut agrees
    Matrix rho_m = entanglement::partial_trace(rho, {3, 2, 2}, {0});
    CHECK(lib == doctest::Approx(schmidt_logneg(rho_m)).epsilon(1e-10));
    // transposing either side of a bipartition gives the same value
    Matrix rho_as = entanglement::partial_trace(rho, {3, 2, 2}, {1, 2});
    const double left = brute_logneg_first(rho_as, 2, 2);
    Matrix pt_right = entanglement::partial_transpose(rho_as, {2, 2}, 1);
    const double right = std::log2(entanglement::trace_norm_hermitian(pt_right));
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
}

TEST_CASE("entropy") {
  Vector psi = random_state(4, 21);
  CHECK(entanglement::von_neumann_entropy(outer(psi)) == doctest::Approx(0.0));
  CHECK(entanglement::von_neumann_entropy(0.5 * Matrix::Identity(2, 2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  Matrix mix(2, 2);
  mix.setZero();
  mix(0, 0) = 0.25;
  mix(1, 1) = 0.75;
  CHECK(entanglement::von_neumann_entropy(mix) ==
        doctest::Approx(-0.25 * std::log2(0.25) - 0.75 * std::log2(0.75)).epsilon(1e-12));
}

TEST_CASE("concurrence") {
  Vector bell = Vector::Zero(4);
  bell(1) = 1.0 / std::sqrt(2.0);
  bell(2) = 1.0 / std::sqrt(2.0);
  CHECK(entanglement::concurrence(outer(bell)) == doctest::Approx(1.0).epsilon(1e-12));

  Vector prod = Vector::Zero(4);
  prod(2) = 1.0;
  CHECK(entanglement::concurrence(outer(prod)) == doctest::Approx(0.0));

  // Werner family: C = max(0, (3p-1)/2)
  Vector psim = Vector::Zero(4);
  psim(1) = 1.0 / std::sqrt(2.0);
  psim(2) = -1.0 / std::sqrt(2.0);
  for (double p : {0.2, 0.5, 0.9}) {
    Matrix w = p * outer(psim) + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    CHECK(entanglement::concurrence(w) ==
          doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(entanglement::concurrence(Matrix::Identity(3, 3)), ConfigError);
}

TEST_CASE("reduced two-qubit matrix from the pair ansatz") {
  // |psi> = sum_n a_n |n, up, g> + b_n |n+1, dn, e>, the closed-form
  // reduction has off-diagonal sum_n b_n conj(a_{n+1}) in the (dn e, up g)
  // block and no other coherences
  const int N = 12;
  hilbert::SpaceSpec spec{N};
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  Vector psi = Vector::Zero(4 * N);
  std::vector<std::complex<double>> a(N), b(N);
  for (int n = 0; n < N; ++n) {
    a[n] = std::complex<double>(g(rng), g(rng)) / (1.0 + n);
    b[n] = std::complex<double>(g(rng), g(rng)) / (1.0 + n);
  }
  for (int n = 0; n < N; ++n) psi(hilbert::basis_index(spec, n, true, false)) += a[n];
  for (int n = 0; n + 1 < N; ++n)
    psi(hilbert::basis_index(spec, n + 1, false, true)) += b[n];
  psi /= psi.norm();

  Matrix rho_q = entanglement::partial_trace(outer(psi), {N, 2, 2}, {1, 2});
  // index (asq, scq): up g = (1,0) -> 2; dn e = (0,1) -> 1
  std::complex<double> expect = 0.0;
  double norm2 = 0.0;
  for (int n = 0; n < N; ++n) norm2 += std::norm(a[n]);
  for (int n = 0; n + 1 < N; ++n) norm2 += std::norm(b[n]);
  for (int n = 0; n + 1 < N; ++n) expect += b[n] * std::conj(a[n + 1]);
  expect /= norm2;
  CHECK(std::abs(rho_q(1, 2) - expect) < 1e-12);
  CHECK(std::abs(rho_q(0, 0)) < 1e-14);  // |dn g> never populated
  CHECK(std::abs(rho_q(3, 3)) < 1e-14);  // |up e> never populated
  CHECK(std::abs(rho_q(0, 3)) < 1e-14);
}

TEST_CASE("pure-state analyze agrees with the density-matrix path") {
  for (unsigned seed = 40; seed < 44; ++seed) {
    Vector psi = random_state(5 * 2 * 2, seed);
    const std::array<Eigen::Index, 3> dims{5, 2, 2};
    auto a = entanglement::analyze(psi, dims, 0.7);
    auto b = entanglement::analyze(outer(psi), dims, 0.7);
    CHECK(a.e_m_as == doctest::Approx(b.e_m_as).epsilon(1e-10));
    CHECK(a.e_a_ms == doctest::Approx(b.e_a_ms).epsilon(1e-10));
    CHECK(a.e_s_ma == doctest::Approx(b.e_s_ma).epsilon(1e-10));
    CHECK(std::abs(a.e_m_a - b.e_m_a) < 1e-10);
    CHECK(std::abs(a.e_m_s - b.e_m_s) < 1e-10);
    CHECK(std::abs(a.e_a_s - b.e_a_s) < 1e-10);
    CHECK(std::abs(a.c_a_s - b.c_a_s) < 1e-10);
    CHECK(std::abs(a.s_m_as - b.s_m_as) < 1e-10);
    CHECK(std::abs(a.r_a_ms - b.r_a_ms) < 1e-10);
  }
}

TEST_CASE("residual clamping") {
  entanglement::EntanglementReport rep;
  rep.r_m_as = -5e-7;  // inside the numerical floor
  rep.r_a_ms = 0.3;
  rep.r_s_ma = 0.2;
  std::vector<std::string> diag;
  auto r = entanglement::residual_entanglement(rep, &diag);
  CHECK(r.r_m_as == 0.0);
  CHECK(r.r_min == 0.0);
  CHECK(diag.size() == 1);
}
