#include "rtn/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace rtn {

namespace {

// One Newton polish pass; bails out where the derivative is too small
// (near-multiple roots are refined later on the deflated derivative).
Complex newton_polish(const RealPolynomial& p, const RealPolynomial& dp, Complex z,
                      int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const Complex f = p(z);
    const Complex df = dp(z);
    if (df == Complex(0.0, 0.0)) break;
    Complex step = f / df;
    const double cap = 0.5 * (1.0 + std::abs(z));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

std::vector<Complex> companion_eigenvalues(const RealPolynomial& monic) {
  const int n = monic.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic.coeff(i);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw RootFindingError("companion eigenvalue iteration failed", PoleSet{});
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return roots;
}

struct Cluster {
  Complex centroid;
  int size;
};

}  // namespace

int PoleSet::total_degree() const {
  int n = 0;
  for (const auto& r : real_roots) n += r.multiplicity;
  for (const auto& c : complex_pairs) n += 2 * c.multiplicity;
  return n;
}

double PoleSet::max_real_part() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : real_roots) m = std::max(m, r.value);
  for (const auto& c : complex_pairs) m = std::max(m, c.value.real());
  return m;
}

double PoleSet::max_abs_imag() const {
  double m = 0.0;
  for (const auto& c : complex_pairs) m = std::max(m, std::abs(c.value.imag()));
  return m;
}

RealPolynomial PoleSet::reconstruct() const {
  RealPolynomial prod = RealPolynomial::constant(1.0);
  for (const auto& r : real_roots) {
    const RealPolynomial factor({-r.value, 1.0});
    for (int k = 0; k < r.multiplicity; ++k) prod = prod * factor;
  }
  for (const auto& c : complex_pairs) {
    const RealPolynomial quad({std::norm(c.value), -2.0 * c.value.real(), 1.0});
    for (int k = 0; k < c.multiplicity; ++k) prod = prod * quad;
  }
  return prod;
}

std::vector<Complex> all_roots(const RealPolynomial& poly) {
  const int n = poly.degree();
  if (n < 1) throw PreconditionError("root finding needs degree >= 1");
  const RealPolynomial p = poly.monic();
  if (n == 1) return {Complex(-p.coeff(0), 0.0)};
  if (n == 2) {
    // Stable quadratic formula; keeps the real part exact for complex pairs.
    const double b = p.coeff(1), c = p.coeff(0);
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      const double q = -0.5 * (b + std::copysign(s, b));
      if (q == 0.0) return {Complex(0.0, 0.0), Complex(-b, 0.0)};
      return {Complex(q, 0.0), Complex(c / q, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(-0.5 * b, im), Complex(-0.5 * b, -im)};
  }
  auto roots = companion_eigenvalues(p);
  const RealPolynomial dp = p.derivative();
  for (auto& z : roots) z = newton_polish(p, dp, z, 8);
  return roots;
}

PoleSet find_poles(const RealPolynomial& den, double cluster_tol) {
  if (den.degree() < 1) throw PreconditionError("find_poles: degree must be >= 1");
  if (std::abs(den.leading() - 1.0) > 1e-12)
    throw PreconditionError("find_poles: denominator must be monic");
  if (cluster_tol <= 0.0) throw PreconditionError("find_poles: cluster_tol must be > 0");

  const int n = den.degree();
  std::vector<Complex> roots = all_roots(den);

  double max_abs = 0.0;
  for (const auto& z : roots) max_abs = std::max(max_abs, std::abs(z));
  const double radius = cluster_tol * (1.0 + max_abs);

  // Snap near-real roots onto the axis before clustering.
  for (auto& z : roots)
    if (std::abs(z.imag()) < cluster_tol * (1.0 + std::abs(z))) z = Complex(z.real(), 0.0);

  // Greedy union-find clustering on pairwise distance.
  const std::size_t m = roots.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);

  std::vector<Cluster> clusters;
  std::vector<int> owner(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (owner[r] < 0) {
      owner[r] = static_cast<int>(clusters.size());
      clusters.push_back({Complex(0, 0), 0});
    }
    auto& cl = clusters[static_cast<std::size_t>(owner[r])];
    cl.centroid += roots[i];
    cl.size += 1;
  }
  for (auto& cl : clusters) cl.centroid /= static_cast<double>(cl.size);

  PoleSet poles;
  std::vector<std::pair<Complex, int>> pending_pairs;
  for (auto& cl : clusters) {
    Complex rep = cl.centroid;
    if (std::abs(rep.imag()) < cluster_tol * (1.0 + std::abs(rep)))
      rep = Complex(rep.real(), 0.0);
    // Refine: a root of multiplicity k of D is a simple root of D^(k-1).
    RealPolynomial target = den;
    for (int k = 1; k < cl.size; ++k) target = target.derivative();
    rep = newton_polish(target, target.derivative(), rep, 24);
    if (std::abs(rep.imag()) < cluster_tol * (1.0 + std::abs(rep)))
      rep = Complex(rep.real(), 0.0);
    if (rep.imag() == 0.0)
      poles.real_roots.push_back({rep.real(), cl.size});
    else
      pending_pairs.emplace_back(rep, cl.size);
  }

  // Pair complex clusters with their mirror images across the real axis.
  std::vector<bool> used(pending_pairs.size(), false);
  for (std::size_t i = 0; i < pending_pairs.size(); ++i) {
    if (used[i]) continue;
    const auto& [zi, mi] = pending_pairs[i];
    if (zi.imag() < 0.0) {
      // Find the +Im partner; if none, conjugate symmetry is broken.
      bool matched = false;
      for (std::size_t j = 0; j < pending_pairs.size(); ++j) {
        if (j == i || used[j]) continue;
        if (std::abs(std::conj(zi) - pending_pairs[j].first) < radius &&
            pending_pairs[j].second == mi) {
          matched = true;
          break;
        }
      }
      if (!matched)
        throw RootFindingError("complex root without conjugate partner", poles);
      continue;
    }
    poles.complex_pairs.push_back({zi, mi});
    used[i] = true;
    for (std::size_t j = 0; j < pending_pairs.size(); ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(std::conj(zi) - pending_pairs[j].first) < radius) {
        used[j] = true;
        break;
      }
    }
  }

  std::sort(poles.real_roots.begin(), poles.real_roots.end(),
            [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  std::sort(poles.complex_pairs.begin(), poles.complex_pairs.end(),
            [](const ComplexPairRoot& a, const ComplexPairRoot& b) {
              if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });

  if (poles.total_degree() != n)
    throw RootFindingError("multiplicity bookkeeping does not add up to the degree",
                           poles);
  if (!approx_equal(poles.reconstruct(), den, 1e-8))
    throw RootFindingError("root product fails to reproduce the polynomial", poles);
  return poles;
}

}  // namespace rtn
