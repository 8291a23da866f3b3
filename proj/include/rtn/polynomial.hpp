#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rtn {

using Complex = std::complex<double>;

/// Dense univariate polynomial with real coefficients, stored in ascending
/// degree. The zero polynomial is represented by an empty coefficient list
/// and reports degree() == -1.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coeffs);
  RealPolynomial(std::initializer_list<double> coeffs);

  static RealPolynomial constant(double c);
  static RealPolynomial monomial(int degree, double coeff = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double leading() const;
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const;  // 0 outside range
  double max_abs_coeff() const;

  double operator()(double x) const;
  Complex operator()(Complex x) const;

  RealPolynomial derivative() const;
  /// Multiply by the variable, i.e. shift coefficients up one degree.
  RealPolynomial times_p() const;
  RealPolynomial monic() const;

  /// Drop trailing coefficients with |c| <= rel_eps * max|coeff|.
  RealPolynomial trimmed(double rel_eps) const;

  /// Euclidean division: returns (quotient, remainder).
  std::pair<RealPolynomial, RealPolynomial> divide(const RealPolynomial& d) const;
  /// Synthetic division by (p - root); remainder is discarded.
  RealPolynomial deflate(double root) const;
  /// Division by the real quadratic (p - b)(p - conj(b)); remainder discarded.
  RealPolynomial deflate_conjugate_pair(Complex b) const;

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(double s, const RealPolynomial& a);
  bool operator==(const RealPolynomial& other) const = default;

 private:
  void trim_exact_zeros();
  std::vector<double> coeffs_;
};

/// Coefficientwise comparison with tolerance relative to the larger scale.
bool approx_equal(const RealPolynomial& a, const RealPolynomial& b, double rel_tol);

/// Quotient of two real polynomials with a monic denominator. Construction
/// normalizes the denominator to leading coefficient 1 and cancels any
/// shared roots (detected numerically) so the stored form is reduced.
class RationalFunction {
 public:
  RationalFunction();  // 0/1
  RationalFunction(RealPolynomial num, RealPolynomial den);

  /// Adopt the parts as-is (den must be monic); skips root cancellation.
  static RationalFunction from_reduced_parts(RealPolynomial num, RealPolynomial den);

  const RealPolynomial& num() const { return num_; }
  const RealPolynomial& den() const { return den_; }
  bool is_proper() const { return num_.degree() < den_.degree(); }

  Complex operator()(Complex p) const;
  double operator()(double p) const;

  /// Value of the original function at t = 0+ by the initial-value theorem.
  double initial_value() const;

  bool operator==(const RationalFunction& other) const = default;

 private:
  void normalize_and_reduce();
  RealPolynomial num_;
  RealPolynomial den_;
};

}  // namespace rtn
