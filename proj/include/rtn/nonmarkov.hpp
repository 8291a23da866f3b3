#pragma once

#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rtn/dephasing.hpp"

namespace rtn {

/// Classification threshold: models with N below this count as Markovian.
inline constexpr double kZeroTol = 1e-6;

enum class ExtremumKind { Minimum, Maximum, Zero };

struct Extremum {
  double t;
  ExtremumKind kind;
  double abs_F;
};

/// Zeros of Fdot and of F in (0, t_max], located by sign scan plus
/// bisection to 1e-10 relative in t, ordered and classified. The boundary
/// stationary point at t = 0 is excluded. Minima and maxima of |F|
/// alternate on output (zeros of F count as minima).
std::vector<Extremum> extrema_of_abs_F(const DephasingSolution& sol, double t_max);

struct NonMarkovResult {
  double n_value = 0.0;       // sum-of-rises route (exact bookkeeping)
  double n_scaled = 0.0;      // n / (n + 1)
  double t_max = 0.0;         // truncation horizon (envelope < 1e-12)
  double quadrature_error = 0.0;
  std::vector<std::pair<double, double>> intervals;  // gamma < 0 windows
  double n_integral = 0.0;    // independent route 1/2 (int |Fdot| - 1)
  bool vanishing_dephasing = false;  // nu = 0: F == 1, N defined as 0
};

/// Non-Markovianity computed two independent ways: the integral
/// 1/2 (int_0^inf |Fdot| dt - 1) by adaptive quadrature between extrema,
/// and the sum of rises of |F| over the negative-rate intervals. The two
/// must agree within max(1e-8, quadrature_error); the rise sum is the
/// reported value.
NonMarkovResult non_markovianity(const DephasingSolution& sol);

struct SweepPoint {
  double nu;
  double n_value;
  double n_scaled;
  std::string error;  // empty on success
};

/// Per-point non-Markovianity over a coupling grid; failures are recorded
/// per point and the sweep continues. Results are ordered by grid index
/// regardless of evaluation order.
std::vector<SweepPoint> sweep_nu(const MemoryKernel& kernel, double lambda,
                                 std::span<const double> nu_grid);

struct PhaseDiagram {
  std::vector<double> kappa_axis;
  std::vector<double> nu_axis;
  std::vector<double> n_scaled;  // flattened [kappa_index * nu_count + nu_index]
  MemoryKernel::Family family = MemoryKernel::Family::Exponential;
  double lambda = 1.0;
  double omega = 0.0;
  std::vector<std::tuple<int, int, std::string>> cell_errors;

  double at(std::size_t kappa_index, std::size_t nu_index) const {
    return n_scaled[kappa_index * nu_axis.size() + nu_index];
  }
};

/// Scaled non-Markovianity over a (kappa, nu) grid for one kernel family at
/// fixed modulation frequency. Cells that fail are NaN with the error
/// recorded.
PhaseDiagram phase_diagram(MemoryKernel::Family family, double lambda, double omega,
                           std::span<const double> kappa_grid,
                           std::span<const double> nu_grid);

/// Threshold memory decay rate where N(kappa) crosses zero_tol, by
/// bisection on the indicator to resolution 1e-3 * lambda. The indicator
/// must differ at the bracket ends or BracketError is raised.
double threshold_kappa(MemoryKernel::Family family, double lambda, double omega,
                       double nu, std::pair<double, double> bracket,
                       double zero_tol = kZeroTol);

}  // namespace rtn
