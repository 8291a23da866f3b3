#include "rtn/kernels.hpp"

#include <cmath>

#include "rtn/errors.hpp"
#include "rtn/partial_fractions.hpp"
#include "rtn/roots.hpp"

namespace rtn {

void NoiseParams::validate() const {
  if (!(lambda > 0.0)) throw PreconditionError("noise params: lambda must be > 0");
  if (!(nu >= 0.0)) throw PreconditionError("noise params: nu must be >= 0");
}

MemoryKernel MemoryKernel::delta() { return {Family::Delta, 0.0, 0.0}; }

MemoryKernel MemoryKernel::exponential(double kappa) {
  return {Family::Exponential, kappa, 0.0};
}

MemoryKernel MemoryKernel::damped_cosine(double kappa, double omega) {
  return {Family::DampedCosine, kappa, omega};
}

void MemoryKernel::validate() const {
  if (family == Family::Delta) return;
  if (!(kappa > 0.0)) throw PreconditionError("memory kernel: kappa must be > 0");
  if (family == Family::DampedCosine && !(omega >= 0.0))
    throw PreconditionError("memory kernel: omega must be >= 0");
}

const char* MemoryKernel::name() const {
  switch (family) {
    case Family::Delta: return "delta";
    case Family::Exponential: return "exponential";
    case Family::DampedCosine: return "damped_cosine";
  }
  return "unknown";
}

RationalFunction kernel_laplace(const MemoryKernel& kernel) {
  kernel.validate();
  switch (kernel.family) {
    case MemoryKernel::Family::Delta:
      return RationalFunction(RealPolynomial::constant(1.0),
                              RealPolynomial::constant(1.0));
    case MemoryKernel::Family::Exponential:
      return RationalFunction(RealPolynomial::constant(kernel.kappa),
                              RealPolynomial({kernel.kappa, 1.0}));
    case MemoryKernel::Family::DampedCosine:
      // Omega = 0 must reduce to the exponential kernel bit-for-bit.
      if (kernel.omega == 0.0)
        return kernel_laplace(MemoryKernel::exponential(kernel.kappa));
      return RationalFunction(
          RealPolynomial({kernel.kappa * kernel.kappa, kernel.kappa}),
          RealPolynomial({kernel.kappa * kernel.kappa + kernel.omega * kernel.omega,
                          2.0 * kernel.kappa, 1.0}));
  }
  throw PreconditionError("unknown kernel family");
}

double kernel_time(const MemoryKernel& kernel, double t) {
  kernel.validate();
  if (t < 0.0) throw PreconditionError("kernel_time: t must be >= 0");
  switch (kernel.family) {
    case MemoryKernel::Family::Delta:
      throw UnsupportedKernelError("delta kernel has no pointwise time-domain value");
    case MemoryKernel::Family::Exponential:
      return kernel.kappa * std::exp(-kernel.kappa * t);
    case MemoryKernel::Family::DampedCosine:
      return kernel.kappa * std::exp(-kernel.kappa * t) * std::cos(kernel.omega * t);
  }
  throw PreconditionError("unknown kernel family");
}

namespace {

// p + 2 lambda Ktilde(p), cleared of the kernel denominator: returns the
// numerator A = p*Kd + 2*lambda*Kn over denominator Kd.
std::pair<RealPolynomial, RealPolynomial> relaxation_numerator(
    const MemoryKernel& kernel, const NoiseParams& params) {
  const RationalFunction ktilde = kernel_laplace(kernel);
  const RealPolynomial a =
      ktilde.den().times_p() + (2.0 * params.lambda) * ktilde.num();
  return {a, ktilde.den()};
}

}  // namespace

ConditionalProbabilityLaplace conditional_probability_laplace(const MemoryKernel& kernel,
                                                              const NoiseParams& params) {
  params.validate();
  const auto [a, kd] = relaxation_numerator(kernel, params);
  // 1/2 [1/p +- Kd/A] over the common denominator p*A.
  const RealPolynomial den = a.times_p();
  const RealPolynomial same = 0.5 * (a + kd.times_p());
  const RealPolynomial flip = 0.5 * (a - kd.times_p());
  return {RationalFunction(same, den), RationalFunction(flip, den)};
}

std::pair<double, double> conditional_probability(const MemoryKernel& kernel,
                                                  const NoiseParams& params, double t) {
  if (t < 0.0) throw PreconditionError("conditional_probability: t must be >= 0");
  const auto cp = conditional_probability_laplace(kernel, params);
  const PoleSet poles = find_poles(cp.same_state.den());
  const ExponentialSum same = to_time_domain(partial_fractions(cp.same_state, poles));
  const PoleSet poles_flip = find_poles(cp.flipped_state.den());
  const ExponentialSum flip =
      to_time_domain(partial_fractions(cp.flipped_state, poles_flip));

  double p_same = same(t);
  double p_flip = flip(t);
  if (std::abs(p_same + p_flip - 1.0) > 1e-10)
    throw ConsistencyError("conditional probabilities do not normalize");
  // Sub-tolerance clamping only; anything larger is a genuine violation of
  // probability bounds and is surfaced, not hidden.
  constexpr double kClampTol = 1e-9;
  for (double* p : {&p_same, &p_flip}) {
    if (*p < -kClampTol || *p > 1.0 + kClampTol)
      throw ProbabilityBoundsError(
          "conditional probability outside [0,1]: kernel yields a non-physical "
          "process at this time");
    *p = std::min(std::max(*p, 0.0), 1.0);
  }
  return {p_same, p_flip};
}

ExponentialSum correlation_function(const MemoryKernel& kernel,
                                    const NoiseParams& params) {
  params.validate();
  const auto [a, kd] = relaxation_numerator(kernel, params);
  const RationalFunction ctilde((params.nu * params.nu) * kd, a);
  if (ctilde.num().is_zero()) return ExponentialSum();
  const PoleSet poles = find_poles(ctilde.den());
  return to_time_domain(partial_fractions(ctilde, poles));
}

std::pair<double, double> stationary_probability() { return {0.5, 0.5}; }

}  // namespace rtn
