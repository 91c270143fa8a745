#pragma once

#include <vector>

#include "qbx/geometry.hpp"
#include "qbx/kernels.hpp"
#include "qbx/quadrature.hpp"

namespace qbx {

enum class Layer { slp, dlp };

enum class CoeffKind { taylor, log_series, fourier_bessel, sph_harm_series };

// Truncated local expansion about an off-surface center.
//
// Coefficient layout by kind:
//   taylor           coef[j],        j = 0..N            (Cauchy, Laplace DLP)
//   log_series       coef[0] = A0 (real), coef[j] = a_j  (Laplace SLP)
//   fourier_bessel   coef[l + N],    l = -N..N           (Helmholtz 2D)
//   sph_harm_series  coef[l*l+l+m],  l = 0..N, |m| <= l  (Helmholtz 3D)
struct QbxExpansion {
  KernelSpec kernel;
  CoeffKind kind = CoeffKind::taylor;
  cplx center2 = 0.0;   // 2D center
  Vec3 center3;         // 3D center
  double r = 0.0;
  int N = 0;
  std::vector<cplx> coef;
};

// Coefficient integrals, smooth composite Gauss quadrature over the whole
// curve (M panels, rule.q nodes each). Every routine walks the nodes in
// panel-major order and throws geometry_error if any node comes within
// r * (1 + 1e-12) of the center, since the expansion ball must stay clear of
// the source curve.
QbxExpansion cauchy_coeffs(const Curve& curve, const Density& phi,
                           const CenterPlacement& c, int N, int M,
                           const GaussRule& rule);
QbxExpansion laplace_slp_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule);
QbxExpansion laplace_dlp_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule);
QbxExpansion helmholtz2d_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule, Layer layer, double k);
QbxExpansion helmholtz3d_coeffs(const Sphere& sphere, const Density3& phi,
                                const CenterPlacement3& c, int N,
                                const SphereRule& rule, Layer layer, double k);

// Expansion evaluation at distance exp.r from the center, direction theta0
// (2D) or (theta0, phi0) (3D). Laplace results are exactly real.
cplx cauchy_eval(const QbxExpansion& exp, double theta0);
cplx laplace_slp_eval(const QbxExpansion& exp, double theta0);
cplx laplace_dlp_eval(const QbxExpansion& exp, double theta0);
cplx helmholtz2d_eval(const QbxExpansion& exp, double theta0);
cplx helmholtz3d_eval(const QbxExpansion& exp, double theta0, double phi0);

// Full on-surface pipeline: place the center off the chosen side, form
// coefficients with the given smooth rule, evaluate back at the surface
// target. theta0 is derived from the target-center geometry.
struct EvalParams {
  int N = 3;
  double r = 0.1;
  int M = 64;              // 2D panels
  int q = 8;               // 2D nodes per panel
  int n_phi = 48;          // 3D rule
  int n_theta = 96;
  Side side = Side::interior;
};
cplx eval_on_surface(const KernelSpec& kernel, const Curve& curve,
                     const Density& phi, double t0, const EvalParams& p);
cplx eval_on_surface(const KernelSpec& kernel, const Sphere& sphere,
                     const Density3& phi, double theta0, double phi0,
                     const EvalParams& p);

}  // namespace qbx
