#pragma once

#include "qbx/qbx.hpp"

namespace qbx {

enum class RefMethod { modal_closed_form, adaptive_direct, self_convergence };

struct ReferenceValue {
  cplx value = 0.0;
  RefMethod method = RefMethod::modal_closed_form;
  double est_error = 0.0;
  bool usable = false;
};

// Closed-form layer potentials for modal densities on a circle / sphere.
// For points within 1e-9 of the surface the stated side's one-sided limit is
// returned; otherwise the side is inferred from the point. Throws
// validation_error when no closed form covers the inputs.
bool has_modal_reference(const KernelSpec& kernel, const Curve& curve,
                         const Density& phi);
bool has_modal_reference(const KernelSpec& kernel, const Density3& phi);
ReferenceValue modal_reference(const KernelSpec& kernel, const Curve& curve,
                               const Density& phi, cplx point,
                               Side side = Side::interior);
ReferenceValue modal_reference(const KernelSpec& kernel, const Sphere& sphere,
                               const Density3& phi, const Vec3& point,
                               Side side = Side::interior);

// Direct quadrature of the potential at a strictly off-surface point:
// adaptive bisection on curves, product-rule doubling on the sphere. The
// result is flagged unusable when the error estimate misses tol.
ReferenceValue direct_offsurface(const KernelSpec& kernel, const Curve& curve,
                                 const Density& phi, cplx point, double tol);
ReferenceValue direct_offsurface(const KernelSpec& kernel,
                                 const Sphere& sphere, const Density3& phi,
                                 const Vec3& point, double tol);

// On-surface ground truth for sweeps. Modal densities on a circle get the
// closed form; anything else is evaluated by self-convergence: the value at
// (N+4, r/4, 4M, q+4) checked against (N+2, r/2, 2M, q+2), with extents taken
// from the most demanding row of the sweep. Slope fits downstream must not
// reuse the levels that built the reference.
struct SweepExtent {
  int N = 3;
  double r = 0.1;
  int M = 64;
  int q = 8;
};
ReferenceValue onsurface_reference(const KernelSpec& kernel,
                                   const Curve& curve, const Density& phi,
                                   double t0, double tol,
                                   const SweepExtent& extent, Side side);
ReferenceValue onsurface_reference(const KernelSpec& kernel,
                                   const Sphere& sphere, const Density3& phi,
                                   double theta0, double phi0, double tol,
                                   Side side);

}  // namespace qbx
