#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rtn/errors.hpp"
#include "rtn/exp_sum.hpp"
#include "rtn/partial_fractions.hpp"
#include "rtn/polynomial.hpp"
#include "rtn/roots.hpp"

using namespace rtn;

namespace {

struct EnableProbeChecks {
  EnableProbeChecks() { validation::set_probe_checks(true); }
};
const EnableProbeChecks enable_probe_checks;

RealPolynomial random_monic_with_separated_roots(std::mt19937& rng, int degree,
                                                 std::vector<Complex>* roots_out) {
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  std::uniform_real_distribution<double> im(0.4, 3.0);
  std::bernoulli_distribution make_pair(0.5);
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < degree) {
    Complex candidate;
    if (degree - static_cast<int>(roots.size()) >= 2 && make_pair(rng))
      candidate = Complex(box(rng), im(rng));
    else
      candidate = Complex(box(rng), 0.0);
    bool separated = true;
    for (const auto& r : roots)
      if (std::abs(r - candidate) < 0.2 || std::abs(std::conj(r) - candidate) < 0.2)
        separated = false;
    if (!separated) continue;
    roots.push_back(candidate);
    if (candidate.imag() != 0.0) roots.push_back(std::conj(candidate));
  }
  RealPolynomial poly = RealPolynomial::constant(1.0);
  for (const auto& r : roots) {
    if (r.imag() > 0.0)
      poly = poly * RealPolynomial({std::norm(r), -2.0 * r.real(), 1.0});
    else if (r.imag() == 0.0)
      poly = poly * RealPolynomial({-r.real(), 1.0});
  }
  if (roots_out) *roots_out = roots;
  return poly;
}

}  // namespace

TEST_CASE("polynomial arithmetic and evaluation") {
  const RealPolynomial p({1.0, 2.0, 3.0});  // 1 + 2p + 3p^2
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == doctest::Approx(17.0));
  const Complex v = p(Complex(0.0, 1.0));
  CHECK(v.real() == doctest::Approx(-2.0));
  CHECK(v.imag() == doctest::Approx(2.0));

  const RealPolynomial q({0.0, 1.0});
  CHECK((p * q).degree() == 3);
  CHECK((p + q)(1.0) == doctest::Approx(7.0));
  CHECK((p - p).is_zero());
  CHECK(p.derivative()(1.0) == doctest::Approx(8.0));
  CHECK(p.times_p().coeff(0) == 0.0);
  CHECK(p.times_p().coeff(3) == 3.0);

  const auto [quot, rem] = (p * q).divide(q);
  CHECK(approx_equal(quot, p, 1e-14));
  CHECK(rem.is_zero());
}

TEST_CASE("zero polynomial is representable and flagged") {
  const RealPolynomial z;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK(z(3.0) == 0.0);
  CHECK_THROWS_AS(z.monic(), PreconditionError);
}

TEST_CASE("find_poles: distinct real roots of the weak-coupling quadratic") {
  // p^2 + 2p + 0.36 from the memoryless model at nu = 0.6, lambda = 1.
  const PoleSet poles = find_poles(RealPolynomial({0.36, 2.0, 1.0}));
  REQUIRE(poles.real_roots.size() == 2);
  CHECK(poles.complex_pairs.empty());
  CHECK(poles.real_roots[0].value == doctest::Approx(-1.8).epsilon(1e-12));
  CHECK(poles.real_roots[1].value == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(poles.real_roots[0].multiplicity == 1);
  CHECK(poles.real_roots[1].multiplicity == 1);
}

TEST_CASE("find_poles: perfect square gives one double root") {
  const PoleSet poles = find_poles(RealPolynomial({1.0, 2.0, 1.0}));
  REQUIRE(poles.real_roots.size() == 1);
  CHECK(poles.real_roots[0].value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(poles.real_roots[0].multiplicity == 2);
  CHECK(poles.total_degree() == 2);
}

TEST_CASE("find_poles: strong coupling yields a conjugate pair") {
  // p^2 + 2p + 9 from nu = 3, lambda = 1.
  const PoleSet poles = find_poles(RealPolynomial({9.0, 2.0, 1.0}));
  REQUIRE(poles.complex_pairs.size() == 1);
  CHECK(poles.real_roots.empty());
  CHECK(poles.complex_pairs[0].value.real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(poles.complex_pairs[0].value.imag() ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(poles.complex_pairs[0].multiplicity == 1);
}

TEST_CASE("find_poles: preconditions and diagnostics") {
  CHECK_THROWS_AS(find_poles(RealPolynomial::constant(2.0)), PreconditionError);
  CHECK_THROWS_AS(find_poles(RealPolynomial({1.0, 2.0})), PreconditionError);
  // A huge clustering tolerance merges genuinely distinct roots; the
  // reconstruction check must refuse the result but keep what was found.
  try {
    find_poles(RealPolynomial({0.36, 2.0, 1.0}), 1.0);
    FAIL("expected RootFindingError");
  } catch (const RootFindingError& e) {
    CHECK(e.partial().total_degree() == 2);
  }
}

TEST_CASE("property: root reconstruction for random separated polynomials") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 60; ++trial) {
    const RealPolynomial poly = random_monic_with_separated_roots(rng, deg(rng), nullptr);
    const PoleSet poles = find_poles(poly);
    CHECK(approx_equal(poles.reconstruct(), poly, 1e-8));
    CHECK(poles.total_degree() == poly.degree());
  }
}

TEST_CASE("property: repeated roots are clustered and reconstructed") {
  // (p+1)^2 (p+2.5) (p^2 + 2p + 5)^2, multiplicities 2, 1, 2.
  RealPolynomial poly = RealPolynomial({1.0, 1.0}) * RealPolynomial({1.0, 1.0});
  poly = poly * RealPolynomial({2.5, 1.0});
  const RealPolynomial quad({5.0, 2.0, 1.0});
  poly = poly * quad * quad;
  const PoleSet poles = find_poles(poly);
  REQUIRE(poles.real_roots.size() == 2);
  REQUIRE(poles.complex_pairs.size() == 1);
  CHECK(poles.real_roots[0].value == doctest::Approx(-2.5).epsilon(1e-9));
  CHECK(poles.real_roots[1].value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(poles.real_roots[1].multiplicity == 2);
  CHECK(poles.complex_pairs[0].multiplicity == 2);
  CHECK(approx_equal(poles.reconstruct(), poly, 1e-8));
}

TEST_CASE("partial fractions: simple real poles from the hyperbolic model") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({0.36, 2.0, 1.0}));
  const PoleSet poles = find_poles(f.den());
  const PartialFractionExpansion pfe = partial_fractions(f, poles);
  REQUIRE(pfe.real_terms.size() == 2);
  // Hand residues: 1.125 at -0.2 and -0.125 at -1.8.
  CHECK(pfe.real_terms[0].pole == doctest::Approx(-1.8));
  CHECK(pfe.real_terms[0].coeff_by_power[0] == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(pfe.real_terms[1].pole == doctest::Approx(-0.2));
  CHECK(pfe.real_terms[1].coeff_by_power[0] == doctest::Approx(1.125).epsilon(1e-12));
}

TEST_CASE("partial fractions: double pole") {
  const RationalFunction f(RealPolynomial::constant(1.0), RealPolynomial({1.0, 2.0, 1.0}));
  const PartialFractionExpansion pfe = partial_fractions(f, find_poles(f.den()));
  REQUIRE(pfe.real_terms.size() == 1);
  REQUIRE(pfe.real_terms[0].coeff_by_power.size() == 2);
  CHECK(pfe.real_terms[0].coeff_by_power[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pfe.real_terms[0].coeff_by_power[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partial fractions: complex pair coefficient matches the residue formula") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({9.0, 2.0, 1.0}));
  const PartialFractionExpansion pfe = partial_fractions(f, find_poles(f.den()));
  REQUIRE(pfe.complex_terms.size() == 1);
  const Complex beta = pfe.complex_terms[0].coeff_by_power[0];
  CHECK(beta.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta.imag() == doctest::Approx(-1.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("partial fractions: pole/denominator mismatch is a precondition error") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({0.36, 2.0, 1.0}));
  const PoleSet wrong = find_poles(RealPolynomial({9.0, 2.0, 1.0}));
  CHECK_THROWS_AS(partial_fractions(f, wrong), PreconditionError);
}

TEST_CASE("property: partial-fraction round trip at random probe points") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> deg(2, 8);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> box(-4.0, 4.0);
  for (int trial = 0; trial < 40; ++trial) {
    const RealPolynomial den = random_monic_with_separated_roots(rng, deg(rng), nullptr);
    std::vector<double> nc(static_cast<std::size_t>(den.degree()));
    for (auto& c : nc) c = coeff(rng);
    const RationalFunction f(RealPolynomial(nc), den);
    if (f.num().is_zero()) continue;
    const PartialFractionExpansion pfe = partial_fractions(f, find_poles(f.den()));
    int probes = 0;
    while (probes < 32) {
      const Complex z(box(rng), box(rng));
      if (std::abs(f.den()(z)) < 1e-3 * f.den().max_abs_coeff()) continue;
      const Complex exact = f(z);
      CHECK(std::abs(pfe(z) - exact) <= 1e-10 * (1.0 + std::abs(exact)));
      ++probes;
    }
  }
}

TEST_CASE("time domain: hyperbolic-branch sum and value") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({0.36, 2.0, 1.0}));
  const ExponentialSum F = to_time_domain(partial_fractions(f, find_poles(f.den())));
  CHECK(F.real_valued());
  CHECK(F(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  // Closed-form oracle: 1.125 e^{-0.2} - 0.125 e^{-1.8} = 0.9004097361850314.
  CHECK(F(1.0) == doctest::Approx(0.9004097361850314).epsilon(1e-12));
}

TEST_CASE("time domain: double pole gives (1 + t) e^{-t}") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({1.0, 2.0, 1.0}));
  const ExponentialSum F = to_time_domain(partial_fractions(f, find_poles(f.den())));
  CHECK(F(1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
  CHECK(F(1.0) == doctest::Approx(0.7357588823428847).epsilon(1e-12));
  CHECK(F(3.0) == doctest::Approx(4.0 * std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("time domain: conjugate pair combines to the oscillatory branch") {
  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({9.0, 2.0, 1.0}));
  const ExponentialSum F = to_time_domain(partial_fractions(f, find_poles(f.den())));
  const double w = 2.0 * std::sqrt(2.0);
  for (double t : {0.3, 1.0, 2.5}) {
    const double oracle = std::exp(-t) * (std::cos(w * t) + std::sin(w * t) / w);
    CHECK(F(t) == doctest::Approx(oracle).epsilon(1e-12));
  }
  CHECK(F(1.0) == doctest::Approx(-0.3099175774371359).epsilon(1e-10));
}

TEST_CASE("derivative of exponential sums is termwise-analytic") {
  const ExponentialSum single({{Complex(-1.0, 0.0), {Complex(1.0, 0.0)}}}, true);
  CHECK(single.derivative()(2.0) == doctest::Approx(-std::exp(-2.0)).epsilon(1e-14));

  const ExponentialSum linear(
      {{Complex(-1.0, 0.0), {Complex(1.0, 0.0), Complex(1.0, 0.0)}}}, true);
  // d/dt (1+t)e^{-t} = -t e^{-t}
  CHECK(linear.derivative()(1.5) == doctest::Approx(-1.5 * std::exp(-1.5)).epsilon(1e-13));

  const RationalFunction f(RealPolynomial({2.0, 1.0}), RealPolynomial({9.0, 2.0, 1.0}));
  const ExponentialSum F = to_time_domain(partial_fractions(f, find_poles(f.den())));
  const double w = 2.0 * std::sqrt(2.0);
  // Differentiating the oscillatory branch leaves -(nu^2/w) e^{-t} sin(wt).
  const double oracle = -(9.0 / w) * std::exp(-1.0) * std::sin(w);
  CHECK(F.derivative()(1.0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("property: derivative agrees with central finite differences") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> re(-2.0, -0.2), im(0.0, 3.0), cf(-1.5, 1.5);
  std::uniform_real_distribution<double> times(0.1, 5.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Complex root(re(rng), im(rng));
    const Complex c0(cf(rng), cf(rng)), c1(cf(rng), cf(rng));
    std::vector<ExpTerm> terms{{root, {c0, c1}}};
    if (root.imag() != 0.0)
      terms.push_back({std::conj(root), {std::conj(c0), std::conj(c1)}});
    const ExponentialSum s(std::move(terms), true);
    const ExponentialSum ds = s.derivative();
    const double t = times(rng);
    const double h = 1e-6;
    const double fd = (s(t + h) - s(t - h)) / (2.0 * h);
    CHECK(ds(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("property: real rational functions invert to real-valued sums") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> deg(2, 7);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> times(0.0, 10.0);
  for (int trial = 0; trial < 30; ++trial) {
    const RealPolynomial den = random_monic_with_separated_roots(rng, deg(rng), nullptr);
    std::vector<double> nc(static_cast<std::size_t>(den.degree()));
    for (auto& c : nc) c = coeff(rng);
    const RationalFunction f(RealPolynomial(nc), den);
    if (f.num().is_zero()) continue;
    const ExponentialSum F = to_time_domain(partial_fractions(f, find_poles(f.den())));
    for (int k = 0; k < 8; ++k) CHECK(std::isfinite(F(times(rng))));
  }
}

TEST_CASE("rational functions reduce shared roots and normalize monic") {
  // (p+1)(p+2) / [(p+1)(p+3)] reduces to (p+2)/(p+3).
  const RealPolynomial num = RealPolynomial({1.0, 1.0}) * RealPolynomial({2.0, 1.0});
  const RealPolynomial den = RealPolynomial({1.0, 1.0}) * RealPolynomial({3.0, 1.0});
  const RationalFunction f(2.0 * num, 2.0 * den);
  CHECK(f.den().leading() == 1.0);
  CHECK(f.den().degree() == 1);
  CHECK(approx_equal(f.num(), RealPolynomial({2.0, 1.0}), 1e-12));
  CHECK(approx_equal(f.den(), RealPolynomial({3.0, 1.0}), 1e-12));
}

TEST_CASE("initial-value theorem on proper rational functions") {
  CHECK(RationalFunction(RealPolynomial({2.0, 1.0}), RealPolynomial({0.36, 2.0, 1.0}))
            .initial_value() == doctest::Approx(1.0));
  CHECK(RationalFunction(RealPolynomial::constant(-9.0), RealPolynomial({9.0, 2.0, 1.0}))
            .initial_value() == 0.0);
}
