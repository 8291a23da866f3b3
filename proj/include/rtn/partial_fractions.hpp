#pragma once

#include <vector>

#include "rtn/exp_sum.hpp"
#include "rtn/polynomial.hpp"
#include "rtn/roots.hpp"

namespace rtn {

/// Coefficients attached to one real pole. coeff_by_power[k] multiplies
/// (p - pole)^-(k+1).
struct RealPoleTerms {
  double pole;
  std::vector<double> coeff_by_power;
};

/// Coefficients attached to one complex-pair pole (Im > 0); the conjugate
/// partial fractions are implied. coeff_by_power[k] multiplies
/// (p - pole)^-(k+1).
struct ComplexPoleTerms {
  Complex pole;
  std::vector<Complex> coeff_by_power;
};

struct PartialFractionExpansion {
  std::vector<RealPoleTerms> real_terms;
  std::vector<ComplexPoleTerms> complex_terms;

  Complex operator()(Complex p) const;
};

namespace validation {
/// Probe-point reconstruction checks run by default outside NDEBUG builds;
/// tests switch them on explicitly.
bool probe_checks_enabled();
void set_probe_checks(bool enabled);
}  // namespace validation

/// Expansion of a proper reduced rational function over the given poles.
/// Coefficients come from analytic derivatives of the deflated rational
/// function (Taylor shift + power-series division), so repeated poles are
/// exact up to roundoff. The poles must factor f.den().
PartialFractionExpansion partial_fractions(const RationalFunction& f,
                                           const PoleSet& poles);

/// Inverse Laplace transform of the expansion: each coefficient at power
/// k+1 contributes coeff * t^k / k! * exp(pole * t).
ExponentialSum to_time_domain(const PartialFractionExpansion& pfe);

}  // namespace rtn
