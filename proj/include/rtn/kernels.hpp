#pragma once

#include <utility>

#include "rtn/exp_sum.hpp"
#include "rtn/polynomial.hpp"

namespace rtn {

/// Amplitude and average transition rate of the telegraph process.
struct NoiseParams {
  double lambda;  // average transition rate, > 0
  double nu;      // jump amplitude, >= 0

  void validate() const;
};

/// Memory kernel of the generalized master equation. The Laplace transform
/// is rational: Delta -> 1, Exponential -> k/(p+k),
/// DampedCosine -> k(p+k)/((p+k)^2 + W^2).
struct MemoryKernel {
  enum class Family { Delta, Exponential, DampedCosine };

  Family family = Family::Delta;
  double kappa = 0.0;  // memory decay rate, > 0 for non-delta kernels
  double omega = 0.0;  // external modulation frequency, >= 0

  static MemoryKernel delta();
  static MemoryKernel exponential(double kappa);
  static MemoryKernel damped_cosine(double kappa, double omega);

  void validate() const;
  const char* name() const;
};

RationalFunction kernel_laplace(const MemoryKernel& kernel);

/// Pointwise K(t); rejects the delta kernel (distributional).
double kernel_time(const MemoryKernel& kernel, double t);

/// Laplace-domain conditional probability, split into the coefficient of
/// delta_{xi,xi'} (same_state) and of delta_{xi,-xi'} (flipped_state).
/// The two share one denominator and sum to 1/p.
struct ConditionalProbabilityLaplace {
  RationalFunction same_state;
  RationalFunction flipped_state;
};

ConditionalProbabilityLaplace conditional_probability_laplace(const MemoryKernel& kernel,
                                                              const NoiseParams& params);

/// Time-domain conditional probabilities (p_same, p_flip) at time t, via the
/// exact inversion pipeline. Values are clamped to [0,1] only within
/// numerical tolerance; genuine violations raise ProbabilityBoundsError.
std::pair<double, double> conditional_probability(const MemoryKernel& kernel,
                                                  const NoiseParams& params, double t);

/// Correlation function C(t) = nu^2 L^-1[1/(p + 2 lambda Ktilde)], with
/// C(0) = nu^2 by the initial-value theorem.
ExponentialSum correlation_function(const MemoryKernel& kernel,
                                    const NoiseParams& params);

/// Stationary one-point probabilities for xi = +nu and xi = -nu.
std::pair<double, double> stationary_probability();

}  // namespace rtn
