#pragma once

#include <utility>
#include <vector>

#include "rtn/dephasing.hpp"

namespace rtn {

/// Uniform-grid configuration for the product-trapezoidal integro-
/// differential solver (order 2).
struct VolterraConfig {
  double step = 1e-3;
  double t_max = 10.0;
};

/// Second-order solution of Fdot(t) = -int_0^t C(t-s) F(s) ds, F(0) = 1,
/// with C from the exact correlation function of the model's kernel. Both
/// the convolution and the time integration use the trapezoidal rule.
/// Violating the stability guard h (nu^2 + 2 lambda K(0)) < 0.5 raises
/// ConfigError.
std::vector<std::pair<double, double>> volterra_solve(const DephasingModel& model,
                                                      const VolterraConfig& cfg);

}  // namespace rtn
