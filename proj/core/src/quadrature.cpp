#include "qbx/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "qbx/errors.hpp"

namespace qbx {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Legendre nodes/weights without the public-API order cap; the sphere rule
// needs higher polar orders than line panels ever use.
void legendre_rule(int q, std::vector<double>& x, std::vector<double>& w) {
  x.assign(q, 0.0);
  w.assign(q, 0.0);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up step, then recompute dp for the weight
        p0 = 1.0;
        p1 = xi;
        for (int k = 2; k <= q; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = q * (xi * p1 - p0) / (xi * xi - 1.0);
        break;
      }
    }
    x[i] = -xi;  // ascending order
    x[q - 1 - i] = xi;
    w[i] = w[q - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  if (q % 2 == 1) {
    // midpoint node: P_q(0) = 0 for odd q, set exactly
    x[q / 2] = 0.0;
    double p0 = 1.0, p1 = 0.0;
    for (int k = 2; k <= q; ++k) {
      const double p2 = (-(k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = q * (0.0 - p0) / (0.0 - 1.0);  // q * p0
    w[q / 2] = 2.0 / (dp * dp);
  }
}

}  // namespace

GaussRule gauss_rule(int q) {
  if (q < 1 || q > 64)
    throw validation_error("gauss_rule: order must be in [1, 64], got " +
                           std::to_string(q));
  GaussRule r;
  r.q = q;
  legendre_rule(q, r.x, r.w);
  return r;
}

LineNodes composite_nodes(double a, double b, int M, const GaussRule& rule) {
  if (M < 1) throw validation_error("composite_nodes: need M >= 1");
  if (!(b > a)) throw validation_error("composite_nodes: need b > a");
  LineNodes n;
  n.t.reserve(static_cast<size_t>(M) * rule.q);
  n.w.reserve(static_cast<size_t>(M) * rule.q);
  const double width = (b - a) / M;
  for (int p = 0; p < M; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (int i = 0; i < rule.q; ++i) {
      n.t.push_back(mid + 0.5 * width * rule.x[i]);
      n.w.push_back(0.5 * width * rule.w[i]);
    }
  }
  return n;
}

namespace {

// 15-point Gauss-Legendre on [-1, 1], fixed kernel of the adaptive scheme.
struct Gauss15 {
  double x[15], w[15];
  Gauss15() {
    std::vector<double> xx, ww;
    legendre_rule(15, xx, ww);
    for (int i = 0; i < 15; ++i) {
      x[i] = xx[i];
      w[i] = ww[i];
    }
  }
};

cplx gauss15(const std::function<cplx(double)>& f, double a, double b,
             const Gauss15& g) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += (half * g.w[i]) * f(mid + half * g.x[i]);
  return acc;
}

void adapt_rec(const std::function<cplx(double)>& f, double a, double b,
               cplx whole, double tol, int depth, const Gauss15& g,
               AdaptiveResult& out) {
  const double m = 0.5 * (a + b);
  const cplx left = gauss15(f, a, m, g);
  const cplx right = gauss15(f, m, b, g);
  const double disc = std::abs(left + right - whole);
  if (disc <= tol || depth >= 60) {
    out.value += left + right;
    out.err_est += disc;
    return;
  }
  adapt_rec(f, a, m, left, 0.5 * tol, depth + 1, g, out);
  adapt_rec(f, m, b, right, 0.5 * tol, depth + 1, g, out);
}

}  // namespace

AdaptiveResult adaptive_integrate(const std::function<cplx(double)>& f,
                                  double a, double b, double tol) {
  if (!(tol >= 1e-14))
    throw validation_error("adaptive_integrate: tol must be >= 1e-14");
  if (!(b > a)) throw validation_error("adaptive_integrate: need b > a");
  static const Gauss15 g;
  AdaptiveResult out;
  adapt_rec(f, a, b, gauss15(f, a, b, g), tol, 0, g, out);
  return out;
}

SphereRule sphere_rule(int n_phi, int n_theta) {
  if (n_phi < 1 || n_phi > 4096 || n_theta < 1 || n_theta > 8192)
    throw validation_error("sphere_rule: orders out of range");
  SphereRule r;
  r.n_phi = n_phi;
  r.n_theta = n_theta;
  legendre_rule(n_phi, r.u, r.wu);
  return r;
}

}  // namespace qbx
