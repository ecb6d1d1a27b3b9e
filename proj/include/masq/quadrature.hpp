#pragma once

#include <functional>

namespace masq::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;       ///< accumulated error estimate (absolute)
  long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Bisects until the per-interval
/// estimate meets the locally apportioned tolerance. Throws
/// masq::NumericalError when max_depth is exhausted before convergence.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 48);

/// Iterated 2D integral over the rectangle [ax,bx] x [ay,by]; the inner
/// (y) integrals run at a tenth of the outer tolerance.
Result integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by, double rel_tol = 1e-10,
                    double abs_tol = 0.0);

}  // namespace masq::quadrature
