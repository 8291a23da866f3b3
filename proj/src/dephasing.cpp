#include "rtn/dephasing.hpp"

#include <cmath>
#include <string>

#include "rtn/errors.hpp"
#include "rtn/partial_fractions.hpp"

namespace rtn {

namespace {

// Clustering tolerance used when solving: wide enough that the nearly
// degenerate pole pair at |nu - lambda| ~ 1e-12 lambda collapses onto the
// physical double root instead of leaving two huge cancelling residues.
constexpr double kSolveClusterTol = 1e-5;

constexpr double kTieWindow = 1e-9;

}  // namespace

void DephasingModel::validate() const {
  kernel.validate();
  params.validate();
}

std::pair<RationalFunction, RationalFunction> assemble_laplace(
    const DephasingModel& model) {
  model.validate();
  const RationalFunction ktilde = kernel_laplace(model.kernel);
  const double nu2 = model.params.nu * model.params.nu;
  if (nu2 == 0.0) {
    // No noise: Ftilde collapses exactly to 1/p.
    return {RationalFunction(RealPolynomial::constant(1.0), RealPolynomial({0.0, 1.0})),
            RationalFunction(RealPolynomial(), RealPolynomial({0.0, 1.0}))};
  }
  // A = p Kd + 2 lambda Kn; Ftilde = A / (p A + nu^2 Kd).
  const RealPolynomial a =
      ktilde.den().times_p() + (2.0 * model.params.lambda) * ktilde.num();
  const RationalFunction f_tilde(a, a.times_p() + nu2 * ktilde.den());
  // Fdot_tilde = p Ftilde - F(0) shares the (possibly reduced) denominator
  // exactly; for the raw assembly this subtraction leaves -nu^2 Kd.
  const RealPolynomial fdot_num = f_tilde.num().times_p() - f_tilde.den();
  return {f_tilde,
          RationalFunction::from_reduced_parts(fdot_num, f_tilde.den())};
}

DephasingSolution solve(const DephasingModel& model) {
  const auto [f_tilde, f_dot_tilde] = assemble_laplace(model);
  const PoleSet poles = find_poles(f_tilde.den(), kSolveClusterTol);

  DephasingSolution sol;
  sol.F = to_time_domain(partial_fractions(f_tilde, poles));
  sol.F_dot = to_time_domain(partial_fractions(f_dot_tilde, poles));
  sol.poles = poles;
  sol.slowest_decay = poles.max_real_part();
  sol.non_decaying = sol.slowest_decay >= -1e-12;

  if (sol.non_decaying && model.params.nu > 0.0) {
    Complex worst(sol.slowest_decay, 0.0);
    for (const auto& c : poles.complex_pairs)
      if (c.value.real() == sol.slowest_decay) worst = c.value;
    throw NonDecayingError("dephasing solution has a non-decaying pole at Re = " +
                               std::to_string(worst.real()),
                           worst);
  }

  const double nu2 = model.params.nu * model.params.nu;
  if (std::abs(sol.F(0.0) - 1.0) > 1e-12)
    throw ConsistencyError("F(0) != 1 after inversion");
  if (std::abs(sol.F_dot(0.0)) > 1e-12 * std::max(1.0, nu2))
    throw ConsistencyError("Fdot(0) != 0 after inversion");

  // Independent route check: termwise derivative of F against the inversion
  // of Fdot_tilde.
  const ExponentialSum f_prime = sol.F.derivative();
  const double horizon = 10.0 / model.params.lambda;
  for (int i = 0; i <= 64; ++i) {
    const double t = horizon * i / 64.0;
    if (std::abs(f_prime(t) - sol.F_dot(t)) > 1e-9)
      throw ConsistencyError("derivative routes disagree beyond 1e-9");
  }
  return sol;
}

ClosedFormPoint closed_form_memoryless(const NoiseParams& params, double t) {
  params.validate();
  if (t < 0.0) throw PreconditionError("closed_form_memoryless: t must be >= 0");
  const double lambda = params.lambda, nu = params.nu;

  if (std::abs(nu - lambda) <= kTieWindow * lambda) {
    const double lt = lambda * t;
    return {(1.0 + lt) * std::exp(-lt), lambda * lt / (1.0 + lt)};
  }
  if (nu < lambda) {
    // Overflow-safe split of cosh/sinh: u = e^{-2 delta t}.
    const double delta = std::sqrt((lambda - nu) * (lambda + nu));
    const double u = std::exp(-2.0 * delta * t);
    const double f = 0.5 * std::exp((delta - lambda) * t) *
                     ((1.0 + lambda / delta) + (1.0 - lambda / delta) * u);
    const double gamma =
        nu * nu * (1.0 - u) / (delta * (1.0 + u) + lambda * (1.0 - u));
    return {f, gamma};
  }
  const double omega = std::sqrt((nu - lambda) * (nu + lambda));
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return {std::exp(-lambda * t) * (c + (lambda / omega) * s),
          nu * nu * s / (omega * c + lambda * s)};
}

double dephasing_rate(const DephasingSolution& sol, double t) {
  if (t < 0.0) throw PreconditionError("dephasing_rate: t must be >= 0");
  const double f = sol.F(t);
  if (std::abs(f) < 1e-13)
    throw ZeroCrossingError("dephasing rate diverges at a zero of F, t = " +
                            std::to_string(t));
  return -sol.F_dot(t) / f;
}

Complex coherence_element(const DephasingModel& model, const DephasingSolution& sol,
                          double t, Complex rho0) {
  if (t < 0.0) throw PreconditionError("coherence_element: t must be >= 0");
  return std::exp(Complex(0.0, model.omega0 * t)) * sol.F(t) * rho0;
}

}  // namespace rtn
