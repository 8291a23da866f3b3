#pragma once

#include <functional>

namespace rtn {

struct QuadratureResult {
  double value;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of a piecewise-smooth
/// integrand on [a, b] to the requested absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, int max_depth = 48);

}  // namespace rtn
