#include "rtn/exp_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rtn/errors.hpp"

namespace rtn {

namespace {

Complex eval_poly(const std::vector<Complex>& c, double t) {
  Complex y = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) y = y * t + c[i];
  return y;
}

double eval_abs_poly(const std::vector<Complex>& c, double t) {
  double y = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) y = y * t + std::abs(c[i]);
  return y;
}

}  // namespace

ExponentialSum::ExponentialSum(std::vector<ExpTerm> terms, bool real_valued)
    : terms_(std::move(terms)), real_valued_(real_valued) {
  for (auto& term : terms_) {
    while (!term.poly.empty() && term.poly.back() == Complex(0.0, 0.0))
      term.poly.pop_back();
  }
  std::erase_if(terms_, [](const ExpTerm& t) { return t.poly.empty(); });
}

Complex ExponentialSum::eval_complex(double t) const {
  Complex sum = 0.0;
  for (const auto& term : terms_) sum += eval_poly(term.poly, t) * std::exp(term.root * t);
  return sum;
}

double ExponentialSum::operator()(double t) const {
  if (!real_valued_)
    throw PreconditionError("real evaluation of a non-real exponential sum");
  Complex sum = 0.0;
  double scale = 0.0;
  for (const auto& term : terms_) {
    const Complex v = eval_poly(term.poly, t) * std::exp(term.root * t);
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(sum.imag()) > 1e-12 * std::max(scale, 1.0))
    throw ConsistencyError("imaginary residue above threshold in exponential sum");
  return sum.real();
}

ExponentialSum ExponentialSum::derivative() const {
  std::vector<ExpTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_) {
    // d/dt [P e^{rt}] = (P' + r P) e^{rt}
    std::vector<Complex> c(term.poly.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < term.poly.size(); ++i) {
      c[i] += term.root * term.poly[i];
      if (i + 1 < term.poly.size())
        c[i] += static_cast<double>(i + 1) * term.poly[i + 1];
    }
    out.push_back({term.root, std::move(c)});
  }
  return ExponentialSum(std::move(out), real_valued_);
}

double ExponentialSum::envelope(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_)
    sum += eval_abs_poly(term.poly, t) * std::exp(term.root.real() * t);
  return sum;
}

double ExponentialSum::slowest_decay() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms_) m = std::max(m, term.root.real());
  return m;
}

double ExponentialSum::tail_time(double tol) const {
  if (terms_.empty()) return 0.0;
  const double s = slowest_decay();
  if (s >= 0.0) return std::numeric_limits<double>::infinity();
  double mass = 0.0;
  int dmax = 0;
  for (const auto& term : terms_) {
    mass += eval_abs_poly(term.poly, 1.0);
    dmax = std::max(dmax, static_cast<int>(term.poly.size()) - 1);
  }
  // Solve M (1+t)^d e^{s t} = tol on the log scale; the iteration
  // t <- (log(M/tol) + d log(1+t)) / (-s) is a contraction for s < 0.
  double t = 1.0;
  for (int it = 0; it < 64; ++it) {
    const double next =
        (std::log(std::max(mass, 1e-300) / tol) + dmax * std::log1p(t)) / (-s);
    if (std::abs(next - t) < 1e-9 * (1.0 + std::abs(next))) {
      t = next;
      break;
    }
    t = std::max(next, 0.0);
  }
  return std::max(t, 1.0);
}

double ExponentialSum::tail_integral_bound(double T) const {
  double total = 0.0;
  for (const auto& term : terms_) {
    const double s = term.root.real();
    if (s >= 0.0) return std::numeric_limits<double>::infinity();
    // int_T^inf t^i e^{s t} dt = e^{sT} sum_{j<=i} (i!/j!) T^j / (-s)^{i-j+1}
    for (std::size_t i = 0; i < term.poly.size(); ++i) {
      double sum = 0.0;
      double factorial_ratio = 1.0;  // i!/j! walking j downward from i
      for (int j = static_cast<int>(i); j >= 0; --j) {
        sum += factorial_ratio * std::pow(T, j) *
               std::pow(-s, -(static_cast<int>(i) - j + 1));
        factorial_ratio *= j;  // (i!/j!) -> (i!/(j-1)!)
      }
      total += std::abs(term.poly[i]) * std::exp(s * T) * sum;
    }
  }
  return total;
}

}  // namespace rtn
