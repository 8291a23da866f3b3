#pragma once

#include <vector>

#include "rtn/polynomial.hpp"

namespace rtn {

/// One summand P(t) * exp(root * t) with a complex coefficient polynomial.
struct ExpTerm {
  Complex root;
  std::vector<Complex> poly;  // ascending powers of t
};

/// Finite sum of polynomial-times-exponential terms, the time-domain image
/// of a proper rational Laplace transform. When `real_valued` is set the
/// terms come in conjugate pairs and evaluation discards the (checked)
/// imaginary residue.
class ExponentialSum {
 public:
  ExponentialSum() = default;
  ExponentialSum(std::vector<ExpTerm> terms, bool real_valued);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool real_valued() const { return real_valued_; }
  bool is_zero() const { return terms_.empty(); }

  Complex eval_complex(double t) const;
  /// Real evaluation; raises ConsistencyError if the imaginary residue
  /// exceeds 1e-12 of the term magnitude scale.
  double operator()(double t) const;

  ExponentialSum derivative() const;

  /// Pointwise bound sum_j |P_j|(t) * exp(Re(root_j) t); monotone decreasing
  /// once t clears the polynomial growth.
  double envelope(double t) const;
  /// Largest real part among roots (decay is -slowest_decay()).
  double slowest_decay() const;
  /// Smallest t with envelope(t) < tol, from the closed-form bound
  /// M (1+t)^d exp(s t) solved by fixed-point iteration on the log.
  double tail_time(double tol) const;
  /// Upper bound on the integral of the envelope over [T, infinity).
  double tail_integral_bound(double T) const;

 private:
  std::vector<ExpTerm> terms_;
  bool real_valued_ = true;
};

}  // namespace rtn
