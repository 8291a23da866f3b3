#include "rtn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "rtn/errors.hpp"
#include "rtn/roots.hpp"

namespace rtn {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  trim_exact_zeros();
}

RealPolynomial::RealPolynomial(std::initializer_list<double> coeffs)
    : coeffs_(coeffs) {
  trim_exact_zeros();
}

RealPolynomial RealPolynomial::constant(double c) {
  return RealPolynomial(std::vector<double>{c});
}

RealPolynomial RealPolynomial::monomial(int degree, double coeff) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return RealPolynomial(std::move(c));
}

void RealPolynomial::trim_exact_zeros() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPolynomial::leading() const {
  return coeffs_.empty() ? 0.0 : coeffs_.back();
}

double RealPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double RealPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double RealPolynomial::operator()(double x) const {
  double y = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) y = y * x + coeffs_[i];
  return y;
}

Complex RealPolynomial::operator()(Complex x) const {
  Complex y = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) y = y * x + coeffs_[i];
  return y;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return RealPolynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::times_p() const {
  if (is_zero()) return RealPolynomial();
  std::vector<double> c(coeffs_.size() + 1, 0.0);
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
  return RealPolynomial(std::move(c));
}

RealPolynomial RealPolynomial::monic() const {
  if (is_zero()) throw PreconditionError("cannot normalize the zero polynomial");
  std::vector<double> c = coeffs_;
  const double lead = c.back();
  for (double& x : c) x /= lead;
  c.back() = 1.0;
  return RealPolynomial(std::move(c));
}

RealPolynomial RealPolynomial::trimmed(double rel_eps) const {
  const double thresh = rel_eps * max_abs_coeff();
  std::vector<double> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= thresh) c.pop_back();
  return RealPolynomial(std::move(c));
}

std::pair<RealPolynomial, RealPolynomial> RealPolynomial::divide(
    const RealPolynomial& d) const {
  if (d.is_zero()) throw PreconditionError("polynomial division by zero");
  if (degree() < d.degree()) return {RealPolynomial(), *this};
  std::vector<double> rem = coeffs_;
  std::vector<double> quot(static_cast<std::size_t>(degree() - d.degree()) + 1, 0.0);
  const double lead = d.leading();
  for (int k = degree() - d.degree(); k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + d.degree())] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= d.degree(); ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * d.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(std::max(d.degree(), 0)));
  return {RealPolynomial(std::move(quot)), RealPolynomial(std::move(rem))};
}

RealPolynomial RealPolynomial::deflate(double root) const {
  if (degree() < 1) throw PreconditionError("deflation of a constant polynomial");
  std::vector<double> q(coeffs_.size() - 1);
  double carry = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = coeffs_[i] + root * carry;
  }
  return RealPolynomial(std::move(q));
}

RealPolynomial RealPolynomial::deflate_conjugate_pair(Complex b) const {
  // (p - b)(p - conj b) = p^2 - 2 Re(b) p + |b|^2
  RealPolynomial quad({std::norm(b), -2.0 * b.real(), 1.0});
  return divide(quad).first;
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return RealPolynomial();
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double s, const RealPolynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (double& x : c) x *= s;
  return RealPolynomial(std::move(c));
}

bool approx_equal(const RealPolynomial& a, const RealPolynomial& b, double rel_tol) {
  const double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1e-300});
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k)
    if (std::abs(a.coeff(k) - b.coeff(k)) > rel_tol * scale) return false;
  return true;
}

RationalFunction::RationalFunction()
    : num_(), den_(RealPolynomial::constant(1.0)) {}

RationalFunction::RationalFunction(RealPolynomial num, RealPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
  normalize_and_reduce();
}

RationalFunction RationalFunction::from_reduced_parts(RealPolynomial num,
                                                      RealPolynomial den) {
  if (den.is_zero() || std::abs(den.leading() - 1.0) > 1e-12)
    throw PreconditionError("from_reduced_parts requires a monic denominator");
  RationalFunction f;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

void RationalFunction::normalize_and_reduce() {
  const double lead = den_.leading();
  den_ = den_.monic();
  num_ = (1.0 / lead) * num_;
  if (num_.is_zero() || num_.degree() < 1 || den_.degree() < 1) {
    if (num_.is_zero()) den_ = RealPolynomial::constant(1.0);
    return;
  }
  // Cancel numerator/denominator root pairs that coincide to within root-
  // finding accuracy. Matching by root distance (not by |den(r)|) keeps
  // legitimate steep denominators from being misread as common factors.
  const auto num_roots = all_roots(num_.monic());
  auto den_roots = all_roots(den_);
  std::vector<bool> used(den_roots.size(), false);
  auto is_real = [](const Complex& z) {
    return std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z));
  };
  for (const Complex& r : num_roots) {
    if (den_.degree() < 1) break;
    if (r.imag() < -1e-12 * (1.0 + std::abs(r))) continue;  // conjugate half
    std::size_t best = den_roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < den_roots.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(den_roots[j] - r);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == den_roots.size() || best_dist > 1e-9 * (1.0 + std::abs(r))) continue;
    if (is_real(r) && is_real(den_roots[best])) {
      num_ = num_.deflate(r.real());
      den_ = den_.deflate(den_roots[best].real());
      used[best] = true;
    } else if (!is_real(r) && !is_real(den_roots[best]) && den_.degree() >= 2) {
      num_ = num_.deflate_conjugate_pair(r);
      den_ = den_.deflate_conjugate_pair(den_roots[best]);
      used[best] = true;
      // Retire the conjugate denominator root as well.
      for (std::size_t j = 0; j < den_roots.size(); ++j)
        if (!used[j] &&
            std::abs(den_roots[j] - std::conj(den_roots[best])) <
                1e-6 * (1.0 + std::abs(r)))
          used[j] = true;
    }
  }
  num_ = num_.trimmed(1e-14);
  const double lead2 = den_.leading();
  if (lead2 != 1.0) {
    den_ = den_.monic();
    num_ = (1.0 / lead2) * num_;
  }
}

Complex RationalFunction::operator()(Complex p) const { return num_(p) / den_(p); }

double RationalFunction::operator()(double p) const { return num_(p) / den_(p); }

double RationalFunction::initial_value() const {
  const int gap = den_.degree() - num_.degree();
  if (gap <= 0)
    throw PreconditionError("initial-value theorem requires a proper rational function");
  return gap == 1 ? num_.leading() : 0.0;
}

}  // namespace rtn
