#include "rtn/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rtn/errors.hpp"
#include "rtn/parallel.hpp"
#include "rtn/quadrature.hpp"

namespace rtn {

namespace {

constexpr double kEnvelopeTol = 1e-12;

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double f_lo) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-10 * std::max(1.0, mid)) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) != (f_mid < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All sign-change roots of f on (0, t_max] scanned with step h. The value
// at t = 0 is excluded from root brackets (Fdot(0) = 0 is a boundary
// stationary point, not an interior extremum).
std::vector<double> scan_roots(const std::function<double(double)>& f, double t_max,
                               double h) {
  std::vector<double> roots;
  double t_prev = h;
  double f_prev = f(t_prev);
  for (double t = 2.0 * h; t_prev < t_max; t += h) {
    const double t_cur = std::min(t, t_max);
    const double f_cur = f(t_cur);
    if (f_prev == 0.0) {
      roots.push_back(t_prev);
    } else if ((f_prev < 0.0) != (f_cur < 0.0) && f_cur != 0.0) {
      roots.push_back(bisect_root(f, t_prev, t_cur, f_prev));
    }
    t_prev = t_cur;
    f_prev = f_cur;
    if (t_cur >= t_max) break;
  }
  return roots;
}

NonMarkovResult vanishing_dephasing_result() {
  NonMarkovResult res;
  res.vanishing_dephasing = true;
  return res;
}

// Adaptive quadrature over [a, b] on a graded geometric mesh. Panels start
// at the fastest pole scale and grow geometrically up to the slowest decay
// scale, so boundary layers are never hidden inside one huge interval
// where the Gauss and Kronrod rules would agree on the wrong answer.
double graded_integrate(const std::function<double(double)>& f, double a, double b,
                        double rate_fast, double rate_slow, double& error_estimate) {
  double width = std::min(b - a, 0.25 / rate_fast);
  const double cap = 4.0 / rate_slow;
  double total = 0.0;
  double t0 = a;
  while (t0 < b) {
    const double t1 = std::min(b, t0 + width);
    const QuadratureResult r = integrate_adaptive(f, t0, t1, 1e-10);
    total += r.value;
    error_estimate += r.error_estimate;
    width = std::min(width * 2.0, cap);
    t0 = t1;
  }
  return total;
}

bool is_constant_one(const DephasingSolution& sol) {
  return sol.F_dot.is_zero() && std::abs(sol.F(0.0) - 1.0) < 1e-12;
}

}  // namespace

std::vector<Extremum> extrema_of_abs_F(const DephasingSolution& sol, double t_max) {
  if (!(t_max > 0.0)) throw PreconditionError("extrema_of_abs_F: t_max must be > 0");

  const double omega_max = sol.poles.max_abs_imag();
  // At least eight samples per oscillation so no sign change slips through.
  double h = t_max / 2048.0;
  if (omega_max > 0.0) h = std::min(h, std::numbers::pi / (8.0 * omega_max));

  auto f = [&](double t) { return sol.F(t); };
  auto f_dot = [&](double t) { return sol.F_dot(t); };

  const std::vector<double> zeros = scan_roots(f, t_max, h);
  const std::vector<double> stationary = scan_roots(f_dot, t_max, h);

  std::vector<Extremum> out;
  for (double t : zeros) out.push_back({t, ExtremumKind::Zero, 0.0});
  for (double t : stationary) {
    // Skip stationary points coinciding with a zero of F (degenerate touch);
    // proximity in time is scale-free, unlike a value threshold.
    bool on_zero = false;
    for (double z : zeros)
      if (std::abs(t - z) < 1e-8 * (1.0 + t)) on_zero = true;
    if (on_zero) continue;
    const double ft = f(t);
    // d|F|/dt = sign(F) Fdot changes -..+ at a minimum of |F|.
    const double sgn = ft < 0.0 ? -1.0 : 1.0;
    const double before = sgn * f_dot(std::max(t - 0.25 * h, 0.5 * t));
    const ExtremumKind kind =
        before < 0.0 ? ExtremumKind::Minimum : ExtremumKind::Maximum;
    out.push_back({t, kind, std::abs(ft)});
  }
  std::sort(out.begin(), out.end(),
            [](const Extremum& a, const Extremum& b) { return a.t < b.t; });

  // Alternation check: |F| starts falling from t = 0, so the sequence must
  // alternate low-high-low... (zeros count as minima). A violation means
  // the scan missed a crossing.
  bool expect_low = true;
  for (const auto& e : out) {
    const bool low = e.kind != ExtremumKind::Maximum;
    if (low != expect_low)
      throw ScanError("extrema of |F| do not alternate; scan resolution too coarse");
    expect_low = !expect_low;
  }
  return out;
}

NonMarkovResult non_markovianity(const DephasingSolution& sol) {
  if (sol.non_decaying) {
    if (is_constant_one(sol)) return vanishing_dephasing_result();
    throw NonDecayingError("non-Markovianity undefined for a non-decaying solution",
                           Complex(sol.slowest_decay, 0.0));
  }

  NonMarkovResult res;
  res.t_max = std::max(sol.F.tail_time(kEnvelopeTol), sol.F_dot.tail_time(kEnvelopeTol));
  const std::vector<Extremum> extrema = extrema_of_abs_F(sol, res.t_max);

  // Route (b): total rise of |F| between consecutive extrema. |F| is
  // monotone on each segment, so each positive difference is one
  // information-backflow window.
  double previous_abs = 1.0;  // |F(0)|
  double previous_t = 0.0;
  for (const auto& e : extrema) {
    if (e.abs_F > previous_abs) {
      res.n_value += e.abs_F - previous_abs;
      res.intervals.emplace_back(previous_t, e.t);
    }
    previous_abs = e.abs_F;
    previous_t = e.t;
  }

  // Route (a): 1/2 (int_0^inf |Fdot| dt - 1) with quadrature split at the
  // extrema, where |Fdot| has its kinks.
  std::vector<double> breakpoints{0.0};
  for (const auto& e : extrema) breakpoints.push_back(e.t);
  breakpoints.push_back(res.t_max);
  double rate_fast = 0.0;
  for (const auto& r : sol.poles.real_roots)
    rate_fast = std::max(rate_fast, std::abs(r.value));
  for (const auto& c : sol.poles.complex_pairs)
    rate_fast = std::max(rate_fast, std::abs(c.value.real()) + c.value.imag());
  const double rate_slow = -sol.slowest_decay;
  double integral = 0.0;
  double quad_err = 0.0;
  const auto abs_f_dot = [&](double t) { return std::abs(sol.F_dot(t)); };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    integral += graded_integrate(abs_f_dot, breakpoints[i], breakpoints[i + 1],
                                 rate_fast, rate_slow, quad_err);
  const double tail = sol.F_dot.tail_integral_bound(res.t_max);
  res.quadrature_error = quad_err + tail + 1e-14;
  res.n_integral = 0.5 * (integral - 1.0);

  if (std::abs(res.n_integral - res.n_value) >
      std::max(1e-8, res.quadrature_error))
    throw ConsistencyError(
        "non-Markovianity routes disagree: integral vs sum of rises");

  res.n_value = std::max(res.n_value, 0.0);
  res.n_scaled = res.n_value / (res.n_value + 1.0);
  return res;
}

std::vector<SweepPoint> sweep_nu(const MemoryKernel& kernel, double lambda,
                                 std::span<const double> nu_grid) {
  std::vector<SweepPoint> points(nu_grid.size());
  parallel_for(nu_grid.size(), [&](std::size_t i) {
    points[i].nu = nu_grid[i];
    try {
      const DephasingModel model{kernel, {lambda, nu_grid[i]}, 0.0};
      const NonMarkovResult r = non_markovianity(solve(model));
      points[i].n_value = r.n_value;
      points[i].n_scaled = r.n_scaled;
    } catch (const Error& e) {
      points[i].n_value = std::numeric_limits<double>::quiet_NaN();
      points[i].n_scaled = std::numeric_limits<double>::quiet_NaN();
      points[i].error = e.what();
    }
  });
  return points;
}

PhaseDiagram phase_diagram(MemoryKernel::Family family, double lambda, double omega,
                           std::span<const double> kappa_grid,
                           std::span<const double> nu_grid) {
  if (family == MemoryKernel::Family::Delta)
    throw PreconditionError("phase diagram needs a kernel family with a kappa axis");
  PhaseDiagram pd;
  pd.kappa_axis.assign(kappa_grid.begin(), kappa_grid.end());
  pd.nu_axis.assign(nu_grid.begin(), nu_grid.end());
  pd.family = family;
  pd.lambda = lambda;
  pd.omega = omega;
  pd.n_scaled.assign(kappa_grid.size() * nu_grid.size(),
                     std::numeric_limits<double>::quiet_NaN());

  std::vector<std::string> errors(pd.n_scaled.size());
  parallel_for(pd.n_scaled.size(), [&](std::size_t cell) {
    const std::size_t ik = cell / nu_grid.size();
    const std::size_t iv = cell % nu_grid.size();
    const MemoryKernel kernel{family, kappa_grid[ik], omega};
    try {
      const DephasingModel model{kernel, {lambda, nu_grid[iv]}, 0.0};
      pd.n_scaled[cell] = non_markovianity(solve(model)).n_scaled;
    } catch (const Error& e) {
      errors[cell] = e.what();
    }
  });
  for (std::size_t cell = 0; cell < errors.size(); ++cell)
    if (!errors[cell].empty())
      pd.cell_errors.emplace_back(static_cast<int>(cell / nu_grid.size()),
                                  static_cast<int>(cell % nu_grid.size()),
                                  errors[cell]);
  return pd;
}

double threshold_kappa(MemoryKernel::Family family, double lambda, double omega,
                       double nu, std::pair<double, double> bracket, double zero_tol) {
  if (family == MemoryKernel::Family::Delta)
    throw PreconditionError("threshold search needs a kernel family with kappa");
  auto non_markovian = [&](double kappa) {
    const MemoryKernel kernel{family, kappa, omega};
    const DephasingModel model{kernel, {lambda, nu}, 0.0};
    return non_markovianity(solve(model)).n_value > zero_tol;
  };
  double lo = bracket.first, hi = bracket.second;
  if (!(lo > 0.0 && hi > lo)) throw PreconditionError("threshold: invalid bracket");
  const bool lo_state = non_markovian(lo);
  if (lo_state == non_markovian(hi))
    throw BracketError("indicator does not change across the kappa bracket");
  while (hi - lo > 1e-3 * lambda) {
    const double mid = 0.5 * (lo + hi);
    if (non_markovian(mid) == lo_state)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rtn
