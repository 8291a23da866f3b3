#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rtn/errors.hpp"
#include "rtn/nonmarkov.hpp"
#include "rtn/partial_fractions.hpp"

using namespace rtn;

namespace {

struct EnableProbeChecks {
  EnableProbeChecks() { validation::set_probe_checks(true); }
};
const EnableProbeChecks enable_probe_checks;

constexpr double kPi = std::numbers::pi;

DephasingSolution delta_solution(double nu, double lambda = 1.0) {
  return solve({MemoryKernel::delta(), {lambda, nu}, 0.0});
}

// Brute-force oracle for the strong-coupling memoryless kernel: |F| at the
// stationary points t_k = k pi / w equals e^{-k pi lambda / w} and every
// rise starts from a zero of F, so N is the partial geometric sum.
double geometric_rise_sum(double lambda, double nu) {
  const double w = std::sqrt(nu * nu - lambda * lambda);
  double sum = 0.0;
  for (int k = 1;; ++k) {
    const double rise = std::exp(-k * kPi * lambda / w);
    sum += rise;
    if (rise < 1e-15 * sum) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("extrema: strong coupling alternates zeros and stationary points") {
  const DephasingSolution sol = delta_solution(3.0);
  const double w = 2.0 * std::sqrt(2.0);
  const auto extrema = extrema_of_abs_F(sol, 10.0);
  REQUIRE(extrema.size() >= 8);

  // First point is a zero of F at tan(w t) = -w (lambda = 1), not t = 0.
  const double first_zero = (std::atan(-w) + kPi) / w;
  CHECK(extrema[0].kind == ExtremumKind::Zero);
  CHECK(extrema[0].t == doctest::Approx(first_zero).epsilon(1e-9));
  CHECK(extrema[0].t > 0.0);

  // Stationary points at t_k = k pi / w with |F| = e^{-k pi / w}.
  std::vector<const Extremum*> stationary;
  for (const auto& e : extrema)
    if (e.kind != ExtremumKind::Zero) stationary.push_back(&e);
  REQUIRE(stationary.size() >= 4);
  for (std::size_t k = 1; k <= stationary.size(); ++k) {
    CHECK(stationary[k - 1]->t == doctest::Approx(k * kPi / w).epsilon(1e-9));
    CHECK(stationary[k - 1]->abs_F ==
          doctest::Approx(std::exp(-static_cast<double>(k) * kPi / w)).epsilon(1e-9));
    CHECK(stationary[k - 1]->kind == ExtremumKind::Maximum);
  }

  // Kinds alternate zero (minimum) / maximum.
  for (std::size_t i = 0; i < extrema.size(); ++i) {
    if (i % 2 == 0)
      CHECK(extrema[i].kind == ExtremumKind::Zero);
    else
      CHECK(extrema[i].kind == ExtremumKind::Maximum);
  }
}

TEST_CASE("extrema: monotone weak-coupling decay has none") {
  CHECK(extrema_of_abs_F(delta_solution(0.6), 20.0).empty());
  CHECK(extrema_of_abs_F(delta_solution(0.99), 20.0).empty());
}

TEST_CASE("non-Markovianity vanishes through the weak-coupling regime") {
  for (double nu : {0.3, 0.6, 0.99}) {
    const NonMarkovResult r = non_markovianity(delta_solution(nu));
    CHECK(r.n_value <= 1e-10);
    CHECK(r.n_scaled <= 1e-10);
    CHECK(r.intervals.empty());
    CHECK_FALSE(r.vanishing_dephasing);
    // The quadrature route sees the same total variation.
    CHECK(std::abs(r.n_integral) <= std::max(1e-8, r.quadrature_error));
  }
}

TEST_CASE("non-Markovianity matches the geometric-sum oracle in strong coupling") {
  for (double nu : {1.5, 2.0, 3.0, 5.0}) {
    const NonMarkovResult r = non_markovianity(delta_solution(nu));
    const double oracle = geometric_rise_sum(1.0, nu);
    CHECK(std::abs(r.n_value - oracle) < 1e-4);
    CHECK(r.n_scaled == doctest::Approx(r.n_value / (r.n_value + 1.0)).epsilon(1e-15));
  }
  // Closed form of the sum at nu = 3: 1/(e^{pi/w} - 1) with w = 2 sqrt 2.
  const double closed = 1.0 / (std::exp(kPi / (2.0 * std::sqrt(2.0))) - 1.0);
  CHECK(geometric_rise_sum(1.0, 3.0) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(closed == doctest::Approx(0.4910274192305367).epsilon(1e-12));
}

TEST_CASE("both routes agree across kernels") {
  const std::vector<DephasingModel> panel{
      {MemoryKernel::delta(), {1.0, 2.0}, 0.0},
      {MemoryKernel::exponential(0.5), {1.0, 3.0}, 0.0},
      {MemoryKernel::exponential(3.0), {1.0, 0.6}, 0.0},
      {MemoryKernel::damped_cosine(3.0, 2.0), {1.0, 0.8}, 0.0},
      {MemoryKernel::damped_cosine(3.0, 3.0), {1.0, 3.0}, 0.0}};
  for (const auto& model : panel) {
    const NonMarkovResult r = non_markovianity(solve(model));
    CHECK(std::abs(r.n_integral - r.n_value) <= std::max(1e-8, r.quadrature_error));
    CHECK(r.n_value >= 0.0);
    // Interval bookkeeping is ordered and disjoint.
    for (std::size_t i = 0; i + 1 < r.intervals.size(); ++i)
      CHECK(r.intervals[i].second <= r.intervals[i + 1].first);
  }
}

TEST_CASE("zero coupling reports vanishing dephasing, not an error") {
  const NonMarkovResult r = non_markovianity(delta_solution(0.0));
  CHECK(r.vanishing_dephasing);
  CHECK(r.n_value == 0.0);
  CHECK(r.n_scaled == 0.0);
}

TEST_CASE("sweep over coupling: transition at nu = lambda for the delta kernel") {
  std::vector<double> grid;
  for (double nu = 0.2; nu <= 2.05; nu += 0.15) grid.push_back(nu);
  const auto points = sweep_nu(MemoryKernel::delta(), 1.0, grid);
  REQUIRE(points.size() == grid.size());
  double previous = -1.0;
  for (const auto& pt : points) {
    REQUIRE(pt.error.empty());
    if (pt.nu <= 1.0) {
      CHECK(pt.n_scaled <= 1e-10);
    } else {
      CHECK(pt.n_scaled > 0.0);
      CHECK(pt.n_scaled > previous);
    }
    previous = pt.n_scaled;
  }
}

TEST_CASE("sweep: smaller memory decay rate means more non-Markovianity") {
  std::vector<double> grid{3.0};
  const double n_half = sweep_nu(MemoryKernel::exponential(0.5), 1.0, grid)[0].n_value;
  const double n_one = sweep_nu(MemoryKernel::exponential(1.0), 1.0, grid)[0].n_value;
  const double n_three = sweep_nu(MemoryKernel::exponential(3.0), 1.0, grid)[0].n_value;
  const double n_delta = sweep_nu(MemoryKernel::delta(), 1.0, grid)[0].n_value;
  CHECK(n_half > n_one);
  CHECK(n_one > n_three);
  CHECK(n_three > n_delta);
}

TEST_CASE("sweep: a fast exponential kernel approaches the delta curve") {
  std::vector<double> grid{1.5, 2.0, 3.0};
  const auto fast = sweep_nu(MemoryKernel::exponential(200.0), 1.0, grid);
  const auto ref = sweep_nu(MemoryKernel::delta(), 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(fast[i].n_value - ref[i].n_value) < 2e-2);
}

TEST_CASE("threshold kappa for nu = 0.8 lambda sits near 1.23 lambda") {
  const double kappa_th = threshold_kappa(MemoryKernel::Family::Exponential, 1.0, 0.0,
                                          0.8, {0.05, 6.0});
  CHECK(kappa_th > 1.18);
  CHECK(kappa_th < 1.28);
}

TEST_CASE("threshold: no transition when both bracket ends are non-Markovian") {
  // At nu = 1.8 lambda the measure stays positive across the whole bracket
  // (checked against the residue and Volterra routes), so the indicator
  // never changes sign.
  CHECK_THROWS_AS(threshold_kappa(MemoryKernel::Family::Exponential, 1.0, 0.0, 1.8,
                                  {0.05, 6.0}),
                  BracketError);
}

TEST_CASE("threshold grows with coupling below lambda") {
  const double k_half = threshold_kappa(MemoryKernel::Family::Exponential, 1.0, 0.0,
                                        0.5, {0.05, 6.0});
  const double k_eight = threshold_kappa(MemoryKernel::Family::Exponential, 1.0, 0.0,
                                         0.8, {0.05, 6.0});
  CHECK(k_half <= k_eight);
}

TEST_CASE("phase diagram: weak/strong coupling structure on a coarse grid") {
  std::vector<double> kappas{0.3, 1.0, 2.0, 4.0};
  std::vector<double> nus{0.05, 0.5, 0.8, 1.2, 1.8};
  const PhaseDiagram pd =
      phase_diagram(MemoryKernel::Family::Exponential, 1.0, 0.0, kappas, nus);
  REQUIRE(pd.n_scaled.size() == kappas.size() * nus.size());
  CHECK(pd.cell_errors.empty());
  for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
    for (std::size_t iv = 0; iv < nus.size(); ++iv) {
      const double value = pd.at(ik, iv);
      CHECK(std::isfinite(value));
      CHECK(value >= 0.0);
      CHECK(value < 1.0);
      if (nus[iv] >= 1.8) CHECK(value > 0.0);      // deep strong coupling
      if (nus[iv] <= 0.05) CHECK(value <= 1e-6);   // deep weak coupling
    }
  }
  // Markovian cell from the strong-memory-decay, weak-coupling corner.
  CHECK(pd.at(3, 2) <= 1e-6);  // kappa = 4, nu = 0.8
  CHECK(pd.at(0, 2) > 1e-6);   // kappa = 0.3, nu = 0.8
  // Just above nu = lambda the Markovian region bulges to finite kappa:
  // at (kappa, nu) = (4, 1.2) both the residue and Volterra routes find a
  // strictly monotone |F|, so the measure vanishes there while the small-
  // and large-kappa sides stay non-Markovian.
  CHECK(pd.at(0, 3) > 1e-6);   // kappa = 0.3, nu = 1.2
  CHECK(pd.at(3, 3) <= 1e-6);  // kappa = 4,   nu = 1.2
}

TEST_CASE("modulation: frequency sweep revives non-Markovian character") {
  // Markovian cell at omega = 0 (kappa = 3, nu = 0.8)...
  const DephasingModel base{MemoryKernel::damped_cosine(3.0, 0.0), {1.0, 0.8}, 0.0};
  CHECK(non_markovianity(solve(base)).n_value < 1e-6);
  // ...turns non-Markovian for some modulation frequency in [0, 6].
  bool revived = false;
  for (double omega = 0.5; omega <= 6.0; omega += 0.5) {
    const DephasingModel mod{MemoryKernel::damped_cosine(3.0, omega), {1.0, 0.8}, 0.0};
    if (non_markovianity(solve(mod)).n_value > 1e-6) {
      revived = true;
      break;
    }
  }
  CHECK(revived);
}

TEST_CASE("scaled measure is monotone in the raw measure") {
  const NonMarkovResult a = non_markovianity(delta_solution(1.5));
  const NonMarkovResult b = non_markovianity(delta_solution(2.5));
  CHECK(a.n_value < b.n_value);
  CHECK(a.n_scaled < b.n_scaled);
  CHECK(a.n_scaled >= 0.0);
  CHECK(b.n_scaled < 1.0);
}

TEST_CASE("preconditions and errors") {
  CHECK_THROWS_AS(extrema_of_abs_F(delta_solution(0.6), -1.0), PreconditionError);
  CHECK_THROWS_AS(phase_diagram(MemoryKernel::Family::Delta, 1.0, 0.0,
                                std::vector<double>{1.0}, std::vector<double>{1.0}),
                  PreconditionError);
  CHECK_THROWS_AS(threshold_kappa(MemoryKernel::Family::Exponential, 1.0, 0.0, 0.8,
                                  {-1.0, 2.0}),
                  PreconditionError);
}
