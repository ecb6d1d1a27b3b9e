#include "masq/quadrature.hpp"

#include <cmath>

#include "masq/errors.hpp"

namespace masq::quadrature {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the embedded 7-point
// Gauss rule uses the odd-indexed nodes.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Gk15 {
  double kronrod;
  double gauss;
};

Gk15 gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double fv = f(c - h * xgk[i]) + f(c + h * xgk[i]);
    resk += wgk[i] * fv;
    if (i % 2 == 1) resg += wg[i / 2] * fv;
  }
  const double fc = f(c);
  resk += wgk[7] * fc;
  resg += wg[3] * fc;
  evals += 15;
  return {resk * h, resg * h};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, int max_depth, Result& out) {
  long evals = 0;
  const Gk15 r = gk15(f, a, b, evals);
  out.evaluations += evals;
  const double err = std::abs(r.kronrod - r.gauss);
  if (err <= tol || depth >= max_depth) {
    if (depth >= max_depth && err > tol)
      throw NumericalError("quadrature: interval subdivision exhausted without convergence");
    out.value += r.kronrod;
    out.error += err;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_depth) {
  Result out;
  long evals = 0;
  const Gk15 first = gk15(f, a, b, evals);
  out.evaluations = evals;
  const double scale = std::abs(first.kronrod);
  const double tol = std::max(abs_tol, rel_tol * std::max(scale, 1e-300));
  Result acc;
  acc.evaluations = out.evaluations;
  adapt(f, a, b, tol, 0, max_depth, acc);
  return acc;
}

Result integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by, double rel_tol, double abs_tol) {
  Result out;
  long inner_evals = 0;
  double inner_err = 0.0;
  auto outer = [&](double x) {
    Result r = integrate([&](double y) { return f(x, y); }, ay, by, 0.1 * rel_tol,
                         0.1 * abs_tol);
    inner_evals += r.evaluations;
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };
  Result r = integrate(outer, ax, bx, rel_tol, abs_tol);
  out.value = r.value;
  out.error = r.error + inner_err * std::abs(bx - ax);
  out.evaluations = inner_evals;
  return out;
}

}  // namespace masq::quadrature
