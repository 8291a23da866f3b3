#include "rtn/laplace_inversion.hpp"

#include <cmath>
#include <numbers>

#include "rtn/errors.hpp"
#include "rtn/roots.hpp"

namespace rtn {

namespace {

constexpr double kPi = std::numbers::pi;

// Durbin discretization parameter: discretization error ~ e^-A for |f| <= 1.
constexpr double kEulerA = 21.0;
// Terms before Euler averaging and binomial averaging depth.
constexpr int kEulerBurnIn = 50;
constexpr int kEulerDepth = 28;

bool talbot_contour_safe(double t, int node_count,
                         const std::vector<Complex>& poles) {
  const double r = 2.0 * node_count / (5.0 * t);
  for (const Complex& b : poles) {
    const double theta = std::abs(b.imag()) / r;
    if (theta >= 0.9 * kPi) return false;
    // Contour real part at the pole's height; the pole must sit left of it.
    const double contour_re = theta < 1e-8 ? r : r * theta / std::tan(theta);
    if (b.real() > contour_re - 0.05 * (1.0 + std::abs(b))) return false;
  }
  // Roundoff amplification e^{rt} = e^{2M/5} is fixed by node_count; with
  // node_count = 32 it stays near 1e-10 of the contour magnitude scale.
  return true;
}

}  // namespace

double talbot_point(const RationalFunction& f, double t, int node_count) {
  if (!(t > 0.0)) throw PreconditionError("talbot_point requires t > 0");
  const double r = 2.0 * node_count / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * f(Complex(r, 0.0)).real();
  for (int k = 1; k < node_count; ++k) {
    const double theta = k * kPi / node_count;
    const double cot = std::cos(theta) / std::sin(theta);
    const Complex s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const Complex term = std::exp(s * t) * f(s) * Complex(1.0, sigma);
    sum += term.real();
  }
  return sum * r / node_count;
}

double euler_point(const RationalFunction& f, double t) {
  if (!(t > 0.0)) throw PreconditionError("euler_point requires t > 0");
  const double a = kEulerA / (2.0 * t);
  const double prefactor = std::exp(kEulerA / 2.0) / t;

  // Partial sums of the alternating Durbin series.
  std::vector<double> s(kEulerBurnIn + kEulerDepth + 1);
  double acc = 0.5 * f(Complex(a, 0.0)).real();
  int sign = -1;
  for (int k = 1; k <= kEulerBurnIn + kEulerDepth; ++k) {
    acc += sign * f(Complex(a, k * kPi / t)).real();
    sign = -sign;
    s[static_cast<std::size_t>(k)] = acc;
  }
  // Euler transform: binomially weighted average of the last partial sums.
  double result = 0.0;
  double binom = std::ldexp(1.0, -kEulerDepth);  // C(m,0) / 2^m
  for (int j = 0; j <= kEulerDepth; ++j) {
    result += binom * s[static_cast<std::size_t>(kEulerBurnIn + j)];
    binom *= static_cast<double>(kEulerDepth - j) / (j + 1);
  }
  return prefactor * result;
}

std::vector<double> numeric_inverse_laplace(const RationalFunction& f,
                                            std::span<const double> t_grid) {
  if (!f.is_proper())
    throw PreconditionError("numeric inverse Laplace requires a proper function");

  std::vector<Complex> poles = all_roots(f.den());
  int origin_multiplicity = 0;
  for (const Complex& b : poles) {
    if (b.real() > 1e-9 * (1.0 + std::abs(b)))
      throw ContourError("pole in the right half-plane; transform does not decay");
    if (std::abs(b) < 1e-9) ++origin_multiplicity;
  }
  if (origin_multiplicity > 1)
    throw ContourError("repeated pole at the origin; inverse grows in time");

  std::vector<double> values;
  values.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < 0.0) throw PreconditionError("numeric inverse Laplace: t must be >= 0");
    if (t == 0.0) {
      values.push_back(f.initial_value());
    } else if (talbot_contour_safe(t, 32, poles)) {
      values.push_back(talbot_point(f, t, 32));
    } else {
      values.push_back(euler_point(f, t));
    }
  }
  return values;
}

}  // namespace rtn
