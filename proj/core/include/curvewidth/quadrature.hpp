#pragma once

#include <functional>

namespace curvewidth {

// Adaptive Gauss-Kronrod (G7/K15) integration with recursive bisection.
// Integrands here are smooth metric coefficients, so convergence is fast.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0);

}  // namespace curvewidth
