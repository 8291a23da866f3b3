#pragma once

#include <vector>

#include "rtn/errors.hpp"
#include "rtn/polynomial.hpp"

namespace rtn {

struct RealRoot {
  double value;
  int multiplicity;
};

/// One member of a conjugate pair; `value` has positive imaginary part.
struct ComplexPairRoot {
  Complex value;
  int multiplicity;
};

/// Roots of a monic real polynomial split into real roots and conjugate
/// pairs, with multiplicities. Satisfies sum(e_j) + 2 sum(eps_j) = degree.
struct PoleSet {
  std::vector<RealRoot> real_roots;
  std::vector<ComplexPairRoot> complex_pairs;

  int total_degree() const;
  double max_real_part() const;
  double max_abs_imag() const;
  /// Product of all monic factors; should reproduce the source polynomial.
  RealPolynomial reconstruct() const;
};

/// Raised when the root set cannot be validated against the input
/// polynomial; carries whatever was found for diagnostics.
class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& msg, PoleSet partial)
      : Error(msg), partial_(std::move(partial)) {}
  const PoleSet& partial() const { return partial_; }

 private:
  PoleSet partial_;
};

inline constexpr double kDefaultClusterTol = 1e-7;

/// All roots of a monic polynomial, unclustered, via companion-matrix
/// eigenvalues (degrees 1 and 2 are solved in closed form) plus Newton
/// polishing. Conjugate symmetry of the output is not enforced here.
std::vector<Complex> all_roots(const RealPolynomial& poly);

/// Roots of `den` grouped by multiplicity. Roots closer than
/// cluster_tol * (1 + max|root|) merge into one representative, which is
/// re-polished on the appropriate derivative; roots with tiny imaginary
/// part snap to the real axis. The factored form must reproduce `den`
/// coefficientwise to 1e-8 relative or a RootFindingError is raised.
PoleSet find_poles(const RealPolynomial& den, double cluster_tol = kDefaultClusterTol);

}  // namespace rtn
