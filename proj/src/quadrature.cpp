#include "rtn/quadrature.hpp"

#include <cmath>

namespace rtn {

namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) with the embedded Gauss-7
// rule at the odd indices. Standard QUADPACK constants.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,  //
    0.949107912342758524526189684047851,  // G7
    0.864864423359769072789712788640926,  //
    0.741531185599394439863864773280788,  // G7
    0.586087235467691130294144838258730,  //
    0.405845151377397166906606412076961,  // G7
    0.207784955007898467600689403773245,  //
    0.000000000000000000000000000000000,  // G7 (center)
};
constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double offset = half * kNodes[i];
    const double fsum = i == 7 ? f(mid) : f(mid - offset) + f(mid + offset);
    kron += kWeightsK[i] * fsum;
    if (i % 2 == 1) gauss += kWeightsG[i / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {kron, std::abs(kron - gauss)};
}

void refine(const std::function<double(double)>& f, double a, double b, double abs_tol,
            int depth, QuadratureResult& total) {
  const QuadratureResult est = gk15(f, a, b);
  if (est.error_estimate <= abs_tol || depth <= 0) {
    total.value += est.value;
    total.error_estimate += est.error_estimate;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, 0.5 * abs_tol, depth - 1, total);
  refine(f, mid, b, 0.5 * abs_tol, depth - 1, total);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, int max_depth) {
  QuadratureResult total{0.0, 0.0};
  if (b > a) refine(f, a, b, abs_tol, max_depth, total);
  return total;
}

}  // namespace rtn
