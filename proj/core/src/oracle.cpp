#include "qbx/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qbx/errors.hpp"

namespace qbx {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt4Pi = 3.5449077018110320545963349666823;

bool modal_density(const Density& phi) {
  switch (phi.kind) {
    case DensityKind::zero:
    case DensityKind::one:
    case DensityKind::cos_n:
    case DensityKind::sin_n:
    case DensityKind::exp_in:
      return true;
    default:
      return false;
  }
}

double circle_radius(const Curve& curve) { return std::abs(curve.w(0.0)); }

// cylinder/spherical Hankel and Bessel derivatives via the standard
// recurrences; x > 0.
cplx hankel1_deriv(int n, double x) {
  const std::vector<cplx> H = hankel1_batch(std::max(n, 1), x);
  return n == 0 ? -H[1] : H[n - 1] - (static_cast<double>(n) / x) * H[n];
}
double besselj_deriv(int n, double x) {
  const std::vector<double> J = bessel_j_batch(std::max(n, 1), x);
  return n == 0 ? -J[1] : J[n - 1] - (static_cast<double>(n) / x) * J[n];
}
// J_n and j_l with the x = 0 limit folded in (expansion centers sit at the
// origin in the modal formulas, where the batch routines refuse x = 0)
double bessel_j_at(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return bessel_j_batch(n, x)[n];
}
double sph_j_at(int l, double x) {
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  return spherical_bessel_batch(l, x).j[l];
}
cplx sph_h1(int l, double x) {
  const SphericalBessel sb = spherical_bessel_batch(l, x);
  return cplx(sb.j[l], sb.y[l]);
}
cplx sph_h1_deriv(int l, double x) {
  const SphericalBessel sb = spherical_bessel_batch(std::max(l, 1), x);
  const cplx hl(sb.j[l], sb.y[l]);
  return l == 0 ? -cplx(sb.j[1], sb.y[1])
                : cplx(sb.j[l - 1], sb.y[l - 1]) - ((l + 1.0) / x) * hl;
}
double sph_j_deriv(int l, double x) {
  const SphericalBessel sb = spherical_bessel_batch(std::max(l, 1), x);
  return l == 0 ? -sb.j[1] : sb.j[l - 1] - ((l + 1.0) / x) * sb.j[l];
}

// field of the single mode e^{int} (signed n); real modes are half-sums
cplx circle_mode_field(Family family, double k, double R, int n, double rho,
                       double theta, bool inside) {
  const int a = std::abs(n);
  const cplx phase = std::polar(1.0, n * theta);
  switch (family) {
    case Family::cauchy: {
      if (n >= 0)
        return inside ? std::polar(std::pow(rho / R, n), n * theta)
                      : cplx(0.0);
      return inside ? cplx(0.0) : -std::polar(std::pow(R / rho, a), n * theta);
    }
    case Family::laplace_slp: {
      if (n == 0) return cplx(inside ? R * std::log(R) : R * std::log(rho));
      const double rad =
          inside ? std::pow(rho / R, a) : std::pow(R / rho, a);
      return -(R / (2.0 * a)) * rad * phase;
    }
    case Family::laplace_dlp: {
      if (inside) {
        if (n == 0) return cplx(-1.0);
        return -0.5 * std::pow(rho / R, a) * phase;
      }
      if (n == 0) return cplx(0.0);
      return 0.5 * std::pow(R / rho, a) * phase;
    }
    case Family::helmholtz_slp: {
      const cplx pref(0.0, kPi * R / 2.0);
      if (inside)
        return pref * bessel_j_at(a, k * rho) * hankel1_batch(a, k * R)[a] *
               phase;
      return pref * bessel_j_batch(a, k * R)[a] * hankel1_batch(a, k * rho)[a] *
             phase;
    }
    case Family::helmholtz_dlp: {
      const cplx pref(0.0, kPi * R / 2.0);
      if (inside)
        return pref * k * hankel1_deriv(a, k * R) * bessel_j_at(a, k * rho) *
               phase;
      return pref * k * besselj_deriv(a, k * R) * hankel1_batch(a, k * rho)[a] *
             phase;
    }
  }
  throw validation_error("modal_reference: unknown kernel family");
}

ReferenceValue finish_modal(cplx value) {
  ReferenceValue rv;
  rv.value = value;
  rv.method = RefMethod::modal_closed_form;
  rv.est_error = 5e-15 * (1.0 + std::abs(value));
  rv.usable = true;
  return rv;
}

}  // namespace

bool has_modal_reference(const KernelSpec& kernel, const Curve& curve,
                         const Density& phi) {
  return kernel.dimension == 2 && curve.kind() == CurveKind::circle &&
         modal_density(phi);
}

bool has_modal_reference(const KernelSpec& kernel, const Density3& phi) {
  return kernel.dimension == 3 &&
         (phi.kind == DensityKind::zero || phi.kind == DensityKind::one ||
          phi.kind == DensityKind::ylm);
}

ReferenceValue modal_reference(const KernelSpec& kernel, const Curve& curve,
                               const Density& phi, cplx point, Side side) {
  kernel.validate();
  if (!has_modal_reference(kernel, curve, phi))
    throw validation_error(
        "modal_reference: closed forms need a circle and a modal density");
  if (phi.kind == DensityKind::zero) return finish_modal(0.0);
  const double R = circle_radius(curve);
  const double rho = std::abs(point);
  const double theta = std::arg(point);
  const bool on_surface = std::abs(rho - R) <= 1e-9 * std::max(1.0, R);
  const bool inside = on_surface ? side == Side::interior : rho < R;
  const double use_rho = on_surface ? R : rho;
  switch (phi.kind) {
    case DensityKind::one:
      return finish_modal(
          circle_mode_field(kernel.family, kernel.k, R, 0, use_rho, theta,
                            inside));
    case DensityKind::exp_in:
      return finish_modal(circle_mode_field(kernel.family, kernel.k, R, phi.n,
                                            use_rho, theta, inside));
    case DensityKind::cos_n: {
      if (phi.n == 0)
        return finish_modal(circle_mode_field(kernel.family, kernel.k, R, 0,
                                              use_rho, theta, inside));
      const cplx plus = circle_mode_field(kernel.family, kernel.k, R, phi.n,
                                          use_rho, theta, inside);
      const cplx minus = circle_mode_field(kernel.family, kernel.k, R, -phi.n,
                                           use_rho, theta, inside);
      return finish_modal(0.5 * (plus + minus));
    }
    case DensityKind::sin_n: {
      if (phi.n == 0) return finish_modal(0.0);
      const cplx plus = circle_mode_field(kernel.family, kernel.k, R, phi.n,
                                          use_rho, theta, inside);
      const cplx minus = circle_mode_field(kernel.family, kernel.k, R, -phi.n,
                                           use_rho, theta, inside);
      return finish_modal((plus - minus) / cplx(0.0, 2.0));
    }
    default:
      break;
  }
  throw validation_error("modal_reference: unsupported density");
}

ReferenceValue modal_reference(const KernelSpec& kernel, const Sphere& sphere,
                               const Density3& phi, const Vec3& point,
                               Side side) {
  kernel.validate();
  if (!has_modal_reference(kernel, phi))
    throw validation_error(
        "modal_reference: sphere closed forms need a modal density");
  if (phi.kind == DensityKind::zero) return finish_modal(0.0);
  const double R = sphere.R;
  const double k = kernel.k;
  const int l = phi.kind == DensityKind::one ? 0 : phi.l;
  const int m = phi.kind == DensityKind::one ? 0 : phi.m;
  const double rho = norm(point);
  const bool on_surface = std::abs(rho - R) <= 1e-9 * std::max(1.0, R);
  const bool inside = on_surface ? side == Side::interior : rho < R;
  const double use_rho = on_surface ? R : rho;

  cplx ylm_val;
  if (use_rho < 1e-14) {
    if (l != 0) return finish_modal(0.0);  // j_l(0) = 0 kills every l > 0
    ylm_val = 1.0 / kSqrt4Pi;
  } else {
    const double ph =
        std::acos(std::min(1.0, std::max(-1.0, point.z / use_rho)));
    const double th = std::atan2(point.y, point.x);
    ylm_val = sph_harm(l, m, th, ph).value;
  }
  const double scale = phi.kind == DensityKind::one ? kSqrt4Pi : 1.0;

  cplx radial;
  if (kernel.family == Family::helmholtz_slp) {
    radial = inside ? cplx(0.0, k) * R * R * sph_j_at(l, k * use_rho) *
                          sph_h1(l, k * R)
                    : cplx(0.0, k) * R * R *
                          spherical_bessel_batch(l, k * R).j[l] *
                          sph_h1(l, k * use_rho);
  } else if (kernel.family == Family::helmholtz_dlp) {
    radial = inside ? cplx(0.0, k) * R * R * k * sph_h1_deriv(l, k * R) *
                          sph_j_at(l, k * use_rho)
                    : cplx(0.0, k) * R * R * k * sph_j_deriv(l, k * R) *
                          sph_h1(l, k * use_rho);
  } else {
    throw validation_error("modal_reference: 3D supports Helmholtz only");
  }
  return finish_modal(scale * radial * ylm_val);
}

// ---------------------------------------------------------------------------
// direct quadrature

ReferenceValue direct_offsurface(const KernelSpec& kernel, const Curve& curve,
                                 const Density& phi, cplx point, double tol) {
  kernel.validate();
  if (kernel.dimension != 2)
    throw validation_error("direct_offsurface: 2D kernel required");
  const double k = kernel.k;
  std::function<cplx(double)> f;
  switch (kernel.family) {
    case Family::cauchy:
      f = [&curve, &phi, point](double t) {
        return cplx(0.0, -1.0) / kTwoPi * phi(t) * curve.wp(t) /
               (curve.w(t) - point);
      };
      break;
    case Family::laplace_slp:
      f = [&curve, &phi, point](double t) {
        return phi(t) * std::log(std::abs(curve.w(t) - point)) *
               std::abs(curve.wp(t)) / kTwoPi;
      };
      break;
    case Family::laplace_dlp:
      f = [&curve, &phi, point](double t) {
        const cplx dy = curve.wp(t);
        return -phi(t) * std::imag(dy / (curve.w(t) - point)) / kTwoPi;
      };
      break;
    case Family::helmholtz_slp:
      f = [&curve, &phi, point, k](double t) {
        const double d = std::abs(curve.w(t) - point);
        return cplx(0.0, 0.25) * hankel1_batch(0, k * d)[0] * phi(t) *
               std::abs(curve.wp(t));
      };
      break;
    case Family::helmholtz_dlp:
      f = [&curve, &phi, point, k](double t) {
        const cplx dy = curve.wp(t);
        const cplx zeta = curve.w(t) - point;
        const double d = std::abs(zeta);
        const cplx nhat = cplx(0.0, -1.0) * dy / std::abs(dy);
        const double dn = std::real(std::conj(zeta) * nhat) / d;
        return cplx(0.0, 0.25) * (-k * hankel1_batch(1, k * d)[1]) * dn *
               phi(t) * std::abs(dy);
      };
      break;
  }
  const AdaptiveResult res = adaptive_integrate(f, 0.0, kTwoPi, tol);
  ReferenceValue rv;
  rv.value = res.value;
  rv.method = RefMethod::adaptive_direct;
  rv.est_error = res.err_est + 1e-16 * (1.0 + std::abs(res.value));
  rv.usable = rv.est_error <= tol;
  return rv;
}

ReferenceValue direct_offsurface(const KernelSpec& kernel,
                                 const Sphere& sphere, const Density3& phi,
                                 const Vec3& point, double tol) {
  kernel.validate();
  if (kernel.dimension != 3)
    throw validation_error("direct_offsurface: 3D kernel required");
  if (!(tol >= 1e-14))
    throw validation_error("direct_offsurface: tol must be >= 1e-14");
  const double k = kernel.k;
  const bool slp = kernel.family == Family::helmholtz_slp;
  auto integrand = [&](double theta, double ph) {
    const Vec3 y = sphere.point(theta, ph);
    const Vec3 d = y - point;
    const double D = norm(d);
    const cplx g = std::exp(cplx(0.0, k * D)) / (4.0 * kPi * D);
    if (slp) return phi(theta, ph) * g;
    const Vec3 nhat = (1.0 / sphere.R) * y;
    const double dn = dot(nhat, d) / D;
    return phi(theta, ph) * g * (cplx(0.0, k) - 1.0 / D) * dn;
  };
  cplx prev = 0.0;
  ReferenceValue rv;
  rv.method = RefMethod::adaptive_direct;
  for (int n = 32; n <= 1024; n *= 2) {
    const SphereRule rule = sphere_rule(n, 2 * n);
    const cplx cur = sphere_integrate(integrand, sphere.R, rule);
    if (n > 32) {
      const double diff = std::abs(cur - prev);
      rv.value = cur;
      rv.est_error = diff + 1e-16 * (1.0 + std::abs(cur));
      if (rv.est_error <= tol) {
        rv.usable = true;
        return rv;
      }
    }
    prev = cur;
  }
  rv.usable = false;
  return rv;
}

// ---------------------------------------------------------------------------
// on-surface references

ReferenceValue onsurface_reference(const KernelSpec& kernel,
                                   const Curve& curve, const Density& phi,
                                   double t0, double tol,
                                   const SweepExtent& extent, Side side) {
  kernel.validate();
  if (has_modal_reference(kernel, curve, phi))
    return modal_reference(kernel, curve, phi, curve.w(t0), side);

  EvalParams fine;
  fine.N = std::min(extent.N + 4, 64);
  fine.r = extent.r / 4.0;
  fine.M = std::min(4 * extent.M, 4096);
  fine.q = std::min(extent.q + 4, 64);
  fine.side = side;
  EvalParams coarse;
  coarse.N = std::min(extent.N + 2, 64);
  coarse.r = extent.r / 2.0;
  coarse.M = std::min(2 * extent.M, 4096);
  coarse.q = std::min(extent.q + 2, 64);
  coarse.side = side;

  const cplx vf = eval_on_surface(kernel, curve, phi, t0, fine);
  const cplx vc = eval_on_surface(kernel, curve, phi, t0, coarse);
  ReferenceValue rv;
  rv.value = vf;
  rv.method = RefMethod::self_convergence;
  rv.est_error = std::abs(vf - vc) + 1e-15 * (1.0 + std::abs(vf));
  rv.usable = rv.est_error <= tol;
  return rv;
}

ReferenceValue onsurface_reference(const KernelSpec& kernel,
                                   const Sphere& sphere, const Density3& phi,
                                   double theta0, double phi0, double tol,
                                   Side side) {
  kernel.validate();
  if (!has_modal_reference(kernel, phi))
    throw validation_error(
        "onsurface_reference: sphere references need a modal density");
  ReferenceValue rv = modal_reference(kernel, sphere, phi,
                                      sphere.point(theta0, phi0), side);
  rv.usable = rv.est_error <= tol;
  return rv;
}

}  // namespace qbx
