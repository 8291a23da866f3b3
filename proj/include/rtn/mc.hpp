#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtn/kernels.hpp"

namespace rtn {

/// Trajectory-averaging configuration. Estimates are bitwise reproducible
/// for a fixed (seed, samples, grid): every trajectory owns an independent
/// counter-derived random stream, so threading cannot reorder draws.
struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 12345;
  double dt_record = 0.1;
  double t_max = 10.0;

  void validate() const;
};

struct McCurvePoint {
  double t;
  double f_est;      // mean of cos(accumulated phase)
  double stderr_;    // standard error of f_est
  double sin_mean;   // mean of sin(accumulated phase); zero-check
  double sin_stderr;
};

/// Dephasing factor for the memoryless kernel estimated from telegraph
/// trajectories: flips form a Poisson process of rate lambda, the initial
/// state is +-nu equiprobably, and the phase integral is accumulated
/// exactly between flips.
std::vector<McCurvePoint> mc_dephasing_memoryless(const NoiseParams& params,
                                                  const McConfig& cfg);

struct MomentCheck {
  std::string name;
  double estimate;
  double expected;
  double stderr_;
  bool pass;  // |estimate - expected| <= 3 stderr
};

struct MomentReport {
  std::vector<MomentCheck> checks;
  bool all_pass;
};

/// Statistical spot checks for the memoryless kernel: zero mean, the
/// two-point correlation against nu^2 e^{-2 lambda |dt|}, a vanishing
/// third moment, the factorized fourth moment at one ordered 4-tuple, and
/// the stationary occupation fraction.
MomentReport mc_moment_checks(const NoiseParams& params, const McConfig& cfg);

}  // namespace rtn
