#pragma once

#include <functional>
#include <vector>

#include "qbx/special.hpp"

namespace qbx {

// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_q.
struct GaussRule {
  int q = 0;
  std::vector<double> x, w;
};
GaussRule gauss_rule(int q);  // 1 <= q <= 64

// Flattened composite nodes over [a, b] split into M equal panels,
// panel-major node-minor; w are plain dt-weights (panel jacobian included).
struct LineNodes {
  std::vector<double> t, w;
};
LineNodes composite_nodes(double a, double b, int M, const GaussRule& rule);

// Integrates f(t) dt over [a, b] with M equal panels. Deterministic
// left-to-right accumulation. Integrals against arc length or a complex
// contour element are formed by folding |w'(t)| or w'(t) into f.
template <class F>
cplx composite_integrate(F&& f, double a, double b, int M,
                         const GaussRule& rule) {
  const double width = (b - a) / M;
  cplx acc = 0.0;
  for (int p = 0; p < M; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (int i = 0; i < rule.q; ++i)
      acc += (0.5 * width * rule.w[i]) * f(mid + 0.5 * width * rule.x[i]);
  }
  return acc;
}

// Adaptive bisection with a 15-point Gauss rule, comparing each interval
// against its two halves. tol >= 1e-14, depth capped at 60; the returned
// estimate stays honest when the cap bites.
struct AdaptiveResult {
  cplx value = 0.0;
  double err_est = 0.0;
};
AdaptiveResult adaptive_integrate(const std::function<cplx(double)>& f,
                                  double a, double b, double tol);

// Product rule on a sphere: Gauss-Legendre in cos(phi) (n_phi points, no
// nodes at the poles) x equispaced azimuth (n_theta points).
struct SphereRule {
  int n_phi = 0, n_theta = 0;
  std::vector<double> u, wu;  // u = cos(phi)
};
SphereRule sphere_rule(int n_phi, int n_theta);

// Integrates f(theta, phi) dS over the sphere of radius R.
template <class F>
cplx sphere_integrate(F&& f, double R, const SphereRule& rule) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double dth = two_pi / rule.n_theta;
  cplx acc = 0.0;
  for (int i = 0; i < rule.n_phi; ++i) {
    const double phi = std::acos(rule.u[i]);
    cplx ring = 0.0;
    for (int j = 0; j < rule.n_theta; ++j) ring += f(dth * j, phi);
    acc += rule.wu[i] * dth * ring;
  }
  return acc * (R * R);
}

}  // namespace qbx
