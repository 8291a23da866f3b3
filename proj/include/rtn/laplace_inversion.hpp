#pragma once

#include <span>
#include <vector>

#include "rtn/polynomial.hpp"

namespace rtn {

/// Fixed-Talbot evaluation at a single time; valid only when every pole of
/// f lies strictly inside the Talbot contour for this t (not checked here).
double talbot_point(const RationalFunction& f, double t, int node_count = 32);

/// Bromwich-line (Durbin) evaluation with Euler series acceleration.
/// Assumes |f(t)| is bounded by O(1), which holds for dephasing factors and
/// probabilities.
double euler_point(const RationalFunction& f, double t);

/// Numerical inverse Laplace transform of a proper rational function on a
/// time grid, targeting 1e-8 absolute accuracy. Uses the fixed-Talbot rule
/// where its spiral contour safely encloses all poles and falls back to the
/// Bromwich-line rule otherwise; t = 0 is handled by the initial-value
/// theorem. Poles right of the imaginary axis raise ContourError.
std::vector<double> numeric_inverse_laplace(const RationalFunction& f,
                                            std::span<const double> t_grid);

}  // namespace rtn
