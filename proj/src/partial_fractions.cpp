#include "rtn/partial_fractions.hpp"

#include <atomic>
#include <cmath>
#include <random>

#include "rtn/errors.hpp"

namespace rtn {

namespace validation {

namespace {
#ifdef NDEBUG
std::atomic<bool> g_probe_checks{false};
#else
std::atomic<bool> g_probe_checks{true};
#endif
}  // namespace

bool probe_checks_enabled() { return g_probe_checks.load(); }
void set_probe_checks(bool enabled) { g_probe_checks.store(enabled); }

}  // namespace validation

namespace {

using CPoly = std::vector<Complex>;

CPoly to_cpoly(const RealPolynomial& p) {
  CPoly c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs()[i];
  return c;
}

// In-place Taylor shift: on return c[k] is the coefficient of (p - a)^k.
void shift(CPoly& c, Complex a) {
  if (c.empty()) return;
  const std::size_t n = c.size() - 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i-- > k;) c[i] += a * c[i + 1];
}

// Leading terms of the power series n(q)/d(q); requires d[0] != 0.
CPoly series_divide(const CPoly& n, const CPoly& d, std::size_t count) {
  CPoly q(count, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < count; ++k) {
    Complex acc = k < n.size() ? n[k] : Complex(0.0, 0.0);
    for (std::size_t j = 1; j <= k && j < d.size(); ++j) acc -= d[j] * q[k - j];
    q[k] = acc / d[0];
  }
  return q;
}

CPoly multiply(const CPoly& a, const CPoly& b) {
  CPoly c(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Product of every pole factor except the one at `skip_index`
// (real poles are indexed first, then complex pairs).
RealPolynomial cofactor(const PoleSet& poles, std::size_t skip_index) {
  RealPolynomial prod = RealPolynomial::constant(1.0);
  std::size_t idx = 0;
  for (const auto& r : poles.real_roots) {
    if (idx++ != skip_index) {
      const RealPolynomial factor({-r.value, 1.0});
      for (int k = 0; k < r.multiplicity; ++k) prod = prod * factor;
    }
  }
  for (const auto& c : poles.complex_pairs) {
    if (idx++ != skip_index) {
      const RealPolynomial quad({std::norm(c.value), -2.0 * c.value.real(), 1.0});
      for (int k = 0; k < c.multiplicity; ++k) prod = prod * quad;
    }
  }
  return prod;
}

void probe_check(const RationalFunction& f, const PartialFractionExpansion& pfe) {
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> box(-4.0, 4.0);
  const double den_scale = f.den().max_abs_coeff();
  int done = 0;
  while (done < 32) {
    const Complex z(box(rng), box(rng));
    if (std::abs(f.den()(z)) < 1e-3 * den_scale) continue;  // too close to a pole
    const Complex exact = f(z);
    const Complex expanded = pfe(z);
    if (std::abs(exact - expanded) > 1e-10 * (1.0 + std::abs(exact)))
      throw ConsistencyError("partial-fraction expansion fails probe reconstruction");
    ++done;
  }
}

}  // namespace

Complex PartialFractionExpansion::operator()(Complex p) const {
  Complex sum = 0.0;
  for (const auto& rt : real_terms) {
    const Complex base = 1.0 / (p - rt.pole);
    Complex power = base;
    for (double c : rt.coeff_by_power) {
      sum += c * power;
      power *= base;
    }
  }
  for (const auto& ct : complex_terms) {
    const Complex base = 1.0 / (p - ct.pole);
    const Complex cbase = 1.0 / (p - std::conj(ct.pole));
    Complex power = base, cpower = cbase;
    for (const Complex& c : ct.coeff_by_power) {
      sum += c * power + std::conj(c) * cpower;
      power *= base;
      cpower *= cbase;
    }
  }
  return sum;
}

PartialFractionExpansion partial_fractions(const RationalFunction& f,
                                           const PoleSet& poles) {
  if (!f.is_proper())
    throw PreconditionError("partial fractions require a proper rational function");
  PartialFractionExpansion pfe;
  if (f.num().is_zero()) return pfe;  // no poles at all
  if (!approx_equal(poles.reconstruct(), f.den(), 1e-8))
    throw PreconditionError("pole set does not factor the denominator");

  std::size_t idx = 0;
  for (const auto& r : poles.real_roots) {
    CPoly num = to_cpoly(f.num());
    CPoly den = to_cpoly(cofactor(poles, idx++));
    shift(num, r.value);
    shift(den, r.value);
    const CPoly t = series_divide(num, den, static_cast<std::size_t>(r.multiplicity));
    // t[i] = g^(i)(a)/i! is the coefficient of (p-a)^-(e-i).
    RealPoleTerms terms{r.value, std::vector<double>(t.size())};
    for (std::size_t i = 0; i < t.size(); ++i)
      terms.coeff_by_power[t.size() - 1 - i] = t[i].real();
    pfe.real_terms.push_back(std::move(terms));
  }
  for (const auto& c : poles.complex_pairs) {
    CPoly num = to_cpoly(f.num());
    CPoly den = to_cpoly(cofactor(poles, idx++));
    // Reattach the conjugate half of this pair to the denominator.
    CPoly conj_factor{1.0};
    for (int k = 0; k < c.multiplicity; ++k)
      conj_factor = multiply(conj_factor, CPoly{-std::conj(c.value), 1.0});
    den = multiply(den, conj_factor);
    shift(num, c.value);
    shift(den, c.value);
    const CPoly t = series_divide(num, den, static_cast<std::size_t>(c.multiplicity));
    ComplexPoleTerms terms{c.value, CPoly(t.size())};
    for (std::size_t i = 0; i < t.size(); ++i)
      terms.coeff_by_power[t.size() - 1 - i] = t[i];
    pfe.complex_terms.push_back(std::move(terms));
  }

  if (validation::probe_checks_enabled()) probe_check(f, pfe);
  return pfe;
}

ExponentialSum to_time_domain(const PartialFractionExpansion& pfe) {
  std::vector<ExpTerm> terms;
  auto factorial = [](std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
  };
  for (const auto& rt : pfe.real_terms) {
    ExpTerm term{Complex(rt.pole, 0.0), {}};
    term.poly.resize(rt.coeff_by_power.size());
    for (std::size_t k = 0; k < rt.coeff_by_power.size(); ++k)
      term.poly[k] = rt.coeff_by_power[k] / factorial(k);
    terms.push_back(std::move(term));
  }
  for (const auto& ct : pfe.complex_terms) {
    ExpTerm term{ct.pole, CPoly(ct.coeff_by_power.size())};
    ExpTerm conj_term{std::conj(ct.pole), CPoly(ct.coeff_by_power.size())};
    for (std::size_t k = 0; k < ct.coeff_by_power.size(); ++k) {
      term.poly[k] = ct.coeff_by_power[k] / factorial(k);
      conj_term.poly[k] = std::conj(ct.coeff_by_power[k]) / factorial(k);
    }
    terms.push_back(std::move(term));
    terms.push_back(std::move(conj_term));
  }
  return ExponentialSum(std::move(terms), /*real_valued=*/true);
}

}  // namespace rtn
