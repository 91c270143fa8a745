#include "qbx/bie.hpp"

#include <algorithm>
#include <cmath>

#include "qbx/errors.hpp"
#include "qbx/quadrature.hpp"

namespace qbx {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double harmonic(HarmonicData data, cplx z) {
  switch (data) {
    case HarmonicData::re_z: return z.real();
    case HarmonicData::re_z3: return (z * z * z).real();
    case HarmonicData::re_pole: return (1.0 / (z - 2.0)).real();
    case HarmonicData::zero: return 0.0;
  }
  return 0.0;
}

// dense LU with partial pivoting, in place; b is overwritten by the solution
void lu_solve(std::vector<double>& A, std::vector<double>& b, int n) {
  std::vector<int> piv(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(A[static_cast<size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(A[static_cast<size_t>(i) * n + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv[k] = p;
    if (!(best > 0.0)) throw numeric_error("demo_bie: singular system");
    if (p != k)
      for (int j = 0; j < n; ++j)
        std::swap(A[static_cast<size_t>(k) * n + j],
                  A[static_cast<size_t>(p) * n + j]);
    const double inv = 1.0 / A[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      double* Ri = &A[static_cast<size_t>(i) * n];
      const double* Rk = &A[static_cast<size_t>(k) * n];
      const double l = Ri[k] * inv;
      Ri[k] = l;
      for (int j = k + 1; j < n; ++j) Ri[j] -= l * Rk[j];
    }
  }
  for (int k = 0; k < n; ++k)
    if (piv[k] != k) std::swap(b[k], b[piv[k]]);
  for (int i = 1; i < n; ++i) {
    const double* Ri = &A[static_cast<size_t>(i) * n];
    double acc = b[i];
    for (int j = 0; j < i; ++j) acc -= Ri[j] * b[j];
    b[i] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    const double* Ri = &A[static_cast<size_t>(i) * n];
    double acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= Ri[j] * b[j];
    b[i] = acc / Ri[i];
  }
}

}  // namespace

HarmonicData parse_harmonic_data(const std::string& name) {
  if (name == "re_z") return HarmonicData::re_z;
  if (name == "re_z3") return HarmonicData::re_z3;
  if (name == "re_pole") return HarmonicData::re_pole;
  if (name == "zero") return HarmonicData::zero;
  throw validation_error("unknown boundary data '" + name + "'");
}

BieResult demo_bie(const Curve& curve, double k, HarmonicData data, int M,
                   int q, int N) {
  if (k != 0.0)
    throw validation_error("demo_bie: Laplace only, k must be 0");
  if (N < 1 || N > 64)
    throw validation_error("demo_bie: expansion order must be in [1, 64]");
  if (M < 1 || M > 4096)
    throw validation_error("demo_bie: panel count must be in [1, 4096]");
  const GaussRule rule = gauss_rule(q);
  const LineNodes ln = composite_nodes(0.0, kTwoPi, M, rule);
  const int n = static_cast<int>(ln.t.size());

  std::vector<cplx> y(n), dy(n);
  std::vector<double> harc(M, 0.0);
  for (int i = 0; i < n; ++i) {
    y[i] = curve.w(ln.t[i]);
    dy[i] = curve.wp(ln.t[i]);
    harc[i / q] += std::abs(dy[i]) * ln.w[i];
  }

  // tangent-ball centers: two panels of clearance, capped by the osculating
  // radius and an absolute bound so lobes never swallow the ball
  std::vector<cplx> center(n), zi(n);
  for (int i = 0; i < n; ++i) {
    const double kappa = std::abs(curve.curvature(ln.t[i]));
    double r = std::min(2.0 * harc[i / q], 0.1);
    if (kappa > 0.0) r = std::min(r, 0.25 / kappa);
    const cplx nout = cplx(0.0, -1.0) * dy[i] / std::abs(dy[i]);
    center[i] = y[i] - r * nout;
    zi[i] = y[i] - center[i];
  }

  std::vector<double> A(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    double* row = &A[static_cast<size_t>(i) * n];
    for (int j = 0; j < n; ++j) {
      const cplx zeta = y[j] - center[i];
      const cplx invz = 1.0 / zeta;
      // S = sum_{p=0}^{N} z_i^p / zeta^{p+1}, the truncated interior limit
      cplx S = 0.0;
      cplx pw = invz;
      for (int p = 0; p <= N; ++p) {
        S += pw;
        pw *= zi[i] * invz;
      }
      row[j] = -std::imag(dy[j] * ln.w[j] * S) / kTwoPi;
    }
  }

  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = harmonic(data, y[i]);
  lu_solve(A, rhs, n);

  BieResult out;
  out.n = n;
  for (int kk = 0; kk < 8; ++kk) {
    const double tk = 0.3 + kTwoPi * kk / 8.0;
    const cplx x = 0.45 * curve.w(tk);
    double u = 0.0;
    for (int j = 0; j < n; ++j)
      u -= std::imag(dy[j] * ln.w[j] / (y[j] - x)) * rhs[j] / kTwoPi;
    const double err = std::abs(u - harmonic(data, x));
    out.probe_err.push_back(err);
    out.max_probe_err = std::max(out.max_probe_err, err);
  }
  return out;
}

}  // namespace qbx
