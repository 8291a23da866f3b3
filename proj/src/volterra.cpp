#include "rtn/volterra.hpp"

#include <cmath>

#include "rtn/errors.hpp"

namespace rtn {

std::vector<std::pair<double, double>> volterra_solve(const DephasingModel& model,
                                                      const VolterraConfig& cfg) {
  model.validate();
  if (!(cfg.step > 0.0) || !(cfg.t_max > 0.0))
    throw ConfigError("volterra: step and t_max must be > 0");

  const double lambda = model.params.lambda;
  const double nu2 = model.params.nu * model.params.nu;
  // Stiffness scale: K(0) = kappa for smooth kernels; the delta kernel has
  // no pointwise value, so use the decay rate 2 lambda of its correlation
  // function in its place.
  const double k0 = model.kernel.family == MemoryKernel::Family::Delta
                        ? 2.0 * lambda
                        : kernel_time(model.kernel, 0.0);
  if (cfg.step * (nu2 + 2.0 * lambda * k0) >= 0.5)
    throw ConfigError("volterra: step violates the stability guard");

  const ExponentialSum corr = correlation_function(model.kernel, model.params);
  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.step));
  const double h = cfg.step;

  std::vector<double> c(n_steps + 1), f(n_steps + 1), g(n_steps + 1);
  for (std::size_t j = 0; j <= n_steps; ++j)
    c[j] = corr.is_zero() ? 0.0 : corr(static_cast<double>(j) * h);
  f[0] = 1.0;
  g[0] = 0.0;

  // Trapezoid in both layers:
  //   G_n = h [ C_n F_0 / 2 + sum_{j=1}^{n-1} C_{n-j} F_j + C_0 F_n / 2 ]
  //   F_{n+1} = F_n - h (G_n + G_{n+1}) / 2, solved for the implicit term.
  for (std::size_t n = 0; n + 1 <= n_steps; ++n) {
    const std::size_t m = n + 1;
    double partial = 0.5 * c[m] * f[0];
    for (std::size_t j = 1; j < m; ++j) partial += c[m - j] * f[j];
    const double denom = 1.0 + 0.25 * h * h * c[0];
    f[m] = (f[n] - 0.5 * h * g[n] - 0.5 * h * h * partial) / denom;
    g[m] = h * (partial + 0.5 * c[0] * f[m]);
  }

  std::vector<std::pair<double, double>> out(n_steps + 1);
  for (std::size_t j = 0; j <= n_steps; ++j)
    out[j] = {static_cast<double>(j) * h, f[j]};
  return out;
}

}  // namespace rtn
