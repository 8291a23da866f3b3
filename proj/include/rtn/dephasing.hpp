#pragma once

#include <utility>

#include "rtn/exp_sum.hpp"
#include "rtn/kernels.hpp"
#include "rtn/roots.hpp"

namespace rtn {

/// Two-level system dephasing under telegraph noise with a memory kernel.
/// omega0 enters only the coherence phase, never F itself.
struct DephasingModel {
  MemoryKernel kernel;
  NoiseParams params;
  double omega0 = 0.0;

  void validate() const;
};

/// Exact time-domain solution: F, its derivative, and the pole structure.
/// F(0) = 1 and Fdot(0) = 0 hold to 1e-12. `non_decaying` marks solutions
/// with a pole real part >= -1e-12 (the nu = 0 case F == 1).
struct DephasingSolution {
  ExponentialSum F;
  ExponentialSum F_dot;
  PoleSet poles;
  double slowest_decay;
  bool non_decaying;
};

/// Laplace-domain pair (Ftilde, Fdot_tilde) =
/// ((p + 2 lambda Ktilde) / (p(p + 2 lambda Ktilde) + nu^2),
///   -nu^2 / (p(p + 2 lambda Ktilde) + nu^2)), cleared of the kernel
/// denominator and reduced. Both share one denominator.
std::pair<RationalFunction, RationalFunction> assemble_laplace(
    const DephasingModel& model);

/// Full inversion via poles and partial fractions. The returned derivative
/// comes from inverting Fdot_tilde and is cross-checked against the
/// termwise derivative of F on a sample grid (1e-9).
DephasingSolution solve(const DephasingModel& model);

struct ClosedFormPoint {
  double F;
  double gamma;
};

/// Three-branch closed form for the memoryless kernel. The branch switches
/// on sign(nu - lambda) with the analytic nu == lambda branch taken inside
/// the tie window |nu - lambda| <= 1e-9 lambda.
ClosedFormPoint closed_form_memoryless(const NoiseParams& params, double t);

/// gamma(t) = -Fdot(t)/F(t); raises ZeroCrossingError where |F(t)| < 1e-13.
double dephasing_rate(const DephasingSolution& sol, double t);

/// Off-diagonal reduced density-matrix element e^{i omega0 t} F(t) rho0.
Complex coherence_element(const DephasingModel& model, const DephasingSolution& sol,
                          double t, Complex rho0);

}  // namespace rtn
