#include "qbx/qbx.hpp"

#include <cmath>
#include <string>

#include "qbx/errors.hpp"

namespace qbx {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

// ---------------------------------------------------------------------------
// kernel and density plumbing

void KernelSpec::validate() const {
  const bool helm =
      family == Family::helmholtz_slp || family == Family::helmholtz_dlp;
  if (dimension != 2 && dimension != 3)
    throw validation_error("kernel: dimension must be 2 or 3");
  if (dimension == 3 && !helm)
    throw validation_error("kernel: only Helmholtz layers exist in 3D here");
  if (helm) {
    if (!(k > 0.0) || !std::isfinite(k))
      throw validation_error("kernel: Helmholtz needs a positive wavenumber");
  } else if (k != 0.0) {
    throw validation_error("kernel: wavenumber only applies to Helmholtz");
  }
}

std::string KernelSpec::name() const {
  switch (family) {
    case Family::cauchy: return "cauchy";
    case Family::laplace_slp: return "laplace_slp";
    case Family::laplace_dlp: return "laplace_dlp";
    case Family::helmholtz_slp: return "helmholtz_slp";
    case Family::helmholtz_dlp: return "helmholtz_dlp";
  }
  return "?";
}

KernelSpec make_kernel(const std::string& name, int dimension, double k) {
  KernelSpec s;
  s.dimension = dimension;
  s.k = k;
  if (name == "cauchy") s.family = Family::cauchy;
  else if (name == "laplace_slp") s.family = Family::laplace_slp;
  else if (name == "laplace_dlp") s.family = Family::laplace_dlp;
  else if (name == "helmholtz_slp") s.family = Family::helmholtz_slp;
  else if (name == "helmholtz_dlp") s.family = Family::helmholtz_dlp;
  else throw validation_error("unknown kernel '" + name + "'");
  s.validate();
  return s;
}

Density Density::zero() {
  return {DensityKind::zero, 0, "zero", [](double) { return cplx(0.0); }};
}
Density Density::one() {
  return {DensityKind::one, 0, "one", [](double) { return cplx(1.0); }};
}
Density Density::cos_n(int n) {
  return {DensityKind::cos_n, n, "cos" + std::to_string(n) + "t",
          [n](double t) { return cplx(std::cos(n * t)); }};
}
Density Density::sin_n(int n) {
  return {DensityKind::sin_n, n, "sin" + std::to_string(n) + "t",
          [n](double t) { return cplx(std::sin(n * t)); }};
}
Density Density::exp_in(int n) {
  return {DensityKind::exp_in, n, "exp_i" + std::to_string(n) + "t",
          [n](double t) { return std::polar(1.0, n * t); }};
}
Density Density::custom(std::string label, std::function<cplx(double)> f) {
  return {DensityKind::custom, 0, std::move(label), std::move(f)};
}

namespace {
int parse_mode_index(const std::string& spec, size_t prefix_len) {
  if (spec.size() < prefix_len + 2 || spec.back() != 't')
    throw validation_error("unknown density '" + spec + "'");
  const std::string mid = spec.substr(prefix_len, spec.size() - prefix_len - 1);
  try {
    size_t used = 0;
    const int n = std::stoi(mid, &used);
    if (used != mid.size()) throw std::invalid_argument(mid);
    return n;
  } catch (const std::exception&) {
    throw validation_error("bad mode index in density '" + spec + "'");
  }
}
}  // namespace

Density make_density(const std::string& spec) {
  if (spec == "zero") return Density::zero();
  if (spec == "one") return Density::one();
  if (spec.rfind("cos", 0) == 0) return Density::cos_n(parse_mode_index(spec, 3));
  if (spec.rfind("sin", 0) == 0) return Density::sin_n(parse_mode_index(spec, 3));
  if (spec.rfind("exp_i", 0) == 0)
    return Density::exp_in(parse_mode_index(spec, 5));
  throw validation_error("unknown density '" + spec + "'");
}

Density3 Density3::zero() {
  return {DensityKind::zero, 0, 0, "zero",
          [](double, double) { return cplx(0.0); }};
}
Density3 Density3::one() {
  return {DensityKind::one, 0, 0, "one",
          [](double, double) { return cplx(1.0); }};
}
Density3 Density3::ylm(int l, int m) {
  if (l < 0 || l > 64 || std::abs(m) > l)
    throw validation_error("ylm density: need 0 <= |m| <= l <= 64");
  return {DensityKind::ylm, l, m,
          "ylm_" + std::to_string(l) + "_" + std::to_string(m),
          [l, m](double theta, double phi) {
            return sph_harm(l, m, theta, phi).value;
          }};
}
Density3 Density3::custom(std::string label,
                          std::function<cplx(double, double)> f) {
  return {DensityKind::custom, 0, 0, std::move(label), std::move(f)};
}

Density3 make_density3(const std::string& spec) {
  if (spec == "zero") return Density3::zero();
  if (spec == "one") return Density3::one();
  if (spec.rfind("ylm_", 0) == 0) {
    const auto sep = spec.find('_', 4);
    if (sep != std::string::npos) {
      try {
        size_t u1 = 0, u2 = 0;
        const std::string ls = spec.substr(4, sep - 4);
        const std::string ms = spec.substr(sep + 1);
        const int l = std::stoi(ls, &u1);
        const int m = std::stoi(ms, &u2);
        if (u1 == ls.size() && u2 == ms.size()) return Density3::ylm(l, m);
      } catch (const std::exception&) {
      }
    }
  }
  throw validation_error("unknown sphere density '" + spec + "'");
}

// ---------------------------------------------------------------------------
// coefficient integrals

namespace {

struct CurveNodes {
  std::vector<double> t, wdt;
  std::vector<cplx> y, dy;
};

CurveNodes curve_nodes(const Curve& curve, int M, const GaussRule& rule) {
  if (M < 1 || M > 4096)
    throw validation_error("panel count must be in [1, 4096]");
  const LineNodes ln = composite_nodes(0.0, kTwoPi, M, rule);
  CurveNodes n;
  n.t = ln.t;
  n.wdt = ln.w;
  n.y.resize(n.t.size());
  n.dy.resize(n.t.size());
  for (size_t i = 0; i < n.t.size(); ++i) {
    n.y[i] = curve.w(n.t[i]);
    n.dy[i] = curve.wp(n.t[i]);
  }
  return n;
}

void check_order(int N) {
  if (N < 1 || N > 64)
    throw validation_error("expansion order must be in [1, 64]");
}

void check_clearance(const cplx& zeta, double r) {
  if (!(std::abs(zeta) > r * (1.0 + 1e-12)))
    throw geometry_error(
        "quadrature node touches the expansion ball; shrink r or refine");
}

void require_real_density(const Density& phi) {
  if (phi.kind == DensityKind::exp_in && phi.n != 0)
    throw validation_error("Laplace layers take real densities");
}

}  // namespace

QbxExpansion cauchy_coeffs(const Curve& curve, const Density& phi,
                           const CenterPlacement& c, int N, int M,
                           const GaussRule& rule) {
  check_order(N);
  QbxExpansion e;
  e.kernel = KernelSpec{Family::cauchy, 2, 0.0};
  e.kind = CoeffKind::taylor;
  e.center2 = c.x_c;
  e.r = c.r;
  e.N = N;
  e.coef.assign(N + 1, 0.0);
  const CurveNodes nd = curve_nodes(curve, M, rule);
  const cplx pref = cplx(0.0, -1.0) / kTwoPi;  // 1/(2 pi i)
  for (size_t i = 0; i < nd.t.size(); ++i) {
    const cplx zeta = nd.y[i] - c.x_c;
    check_clearance(zeta, c.r);
    const cplx base = pref * phi(nd.t[i]) * nd.dy[i] * nd.wdt[i];
    const cplx inv = 1.0 / zeta;
    cplx p = inv;
    for (int j = 0; j <= N; ++j) {
      e.coef[j] += base * p;
      p *= inv;
    }
  }
  return e;
}

QbxExpansion laplace_slp_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule) {
  check_order(N);
  require_real_density(phi);
  QbxExpansion e;
  e.kernel = KernelSpec{Family::laplace_slp, 2, 0.0};
  e.kind = CoeffKind::log_series;
  e.center2 = c.x_c;
  e.r = c.r;
  e.N = N;
  e.coef.assign(N + 1, 0.0);
  const CurveNodes nd = curve_nodes(curve, M, rule);
  const double pref = 1.0 / kTwoPi;
  for (size_t i = 0; i < nd.t.size(); ++i) {
    const cplx zeta = nd.y[i] - c.x_c;
    check_clearance(zeta, c.r);
    const cplx f = pref * phi(nd.t[i]) * std::abs(nd.dy[i]) * nd.wdt[i];
    e.coef[0] += f * std::log(std::abs(zeta));
    const cplx inv = 1.0 / zeta;
    cplx p = inv;
    for (int j = 1; j <= N; ++j) {
      e.coef[j] += f * p / static_cast<double>(j);
      p *= inv;
    }
  }
  return e;
}

QbxExpansion laplace_dlp_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule) {
  check_order(N);
  require_real_density(phi);
  QbxExpansion e;
  e.kernel = KernelSpec{Family::laplace_dlp, 2, 0.0};
  e.kind = CoeffKind::taylor;
  e.center2 = c.x_c;
  e.r = c.r;
  e.N = N;
  e.coef.assign(N + 1, 0.0);
  const CurveNodes nd = curve_nodes(curve, M, rule);
  const double pref = 1.0 / kTwoPi;
  for (size_t i = 0; i < nd.t.size(); ++i) {
    const cplx zeta = nd.y[i] - c.x_c;
    check_clearance(zeta, c.r);
    const cplx base = pref * phi(nd.t[i]) * nd.dy[i] * nd.wdt[i];
    const cplx inv = 1.0 / zeta;
    cplx p = inv;
    for (int j = 0; j <= N; ++j) {
      e.coef[j] += base * p;
      p *= inv;
    }
  }
  return e;
}

QbxExpansion helmholtz2d_coeffs(const Curve& curve, const Density& phi,
                                const CenterPlacement& c, int N, int M,
                                const GaussRule& rule, Layer layer, double k) {
  check_order(N);
  if (!(k > 0.0) || !std::isfinite(k))
    throw validation_error("helmholtz: k must be positive");
  QbxExpansion e;
  e.kernel = KernelSpec{
      layer == Layer::slp ? Family::helmholtz_slp : Family::helmholtz_dlp, 2,
      k};
  e.kind = CoeffKind::fourier_bessel;
  e.center2 = c.x_c;
  e.r = c.r;
  e.N = N;
  e.coef.assign(2 * N + 1, 0.0);
  const CurveNodes nd = curve_nodes(curve, M, rule);
  const cplx quarter_i(0.0, 0.25);
  for (size_t i = 0; i < nd.t.size(); ++i) {
    const cplx zeta = nd.y[i] - c.x_c;
    check_clearance(zeta, c.r);
    const double rho = std::abs(zeta);
    const cplx u = zeta / rho;  // e^{i arg zeta}
    const double ds = std::abs(nd.dy[i]) * nd.wdt[i];
    const cplx base = quarter_i * phi(nd.t[i]) * ds;
    const std::vector<cplx> H = hankel1_batch(N, k * rho);
    if (layer == Layer::slp) {
      cplx cp = 1.0, pp = 1.0;  // conj(u)^l, u^l
      for (int l = 0; l <= N; ++l) {
        e.coef[N + l] += base * H[l] * cp;
        if (l > 0) e.coef[N - l] += base * H[l] * pp;
        cp *= std::conj(u);
        pp *= u;
      }
    } else {
      const cplx nhat = cplx(0.0, -1.0) * nd.dy[i] / std::abs(nd.dy[i]);
      const cplx d = std::conj(u) * nhat;  // radial + i azimuthal components
      const double nr = d.real(), npsi = d.imag();
      std::vector<cplx> dH(N + 1);
      dH[0] = -H[1];
      for (int l = 1; l <= N; ++l) dH[l] = H[l - 1] - (l / (k * rho)) * H[l];
      cplx cp = 1.0, pp = 1.0;
      for (int l = 0; l <= N; ++l) {
        const cplx rad = k * dH[l];
        const cplx az = cplx(0.0, -l / rho) * H[l];
        e.coef[N + l] += base * (nr * rad + npsi * az) * cp;
        if (l > 0) e.coef[N - l] += base * (nr * rad - npsi * az) * pp;
        cp *= std::conj(u);
        pp *= u;
      }
    }
  }
  return e;
}

QbxExpansion helmholtz3d_coeffs(const Sphere& sphere, const Density3& phi,
                                const CenterPlacement3& c, int N,
                                const SphereRule& rule, Layer layer,
                                double k) {
  check_order(N);
  if (!(k > 0.0) || !std::isfinite(k))
    throw validation_error("helmholtz: k must be positive");
  QbxExpansion e;
  e.kernel = KernelSpec{
      layer == Layer::slp ? Family::helmholtz_slp : Family::helmholtz_dlp, 3,
      k};
  e.kind = CoeffKind::sph_harm_series;
  e.center3 = c.x_c;
  e.r = c.r;
  e.N = N;
  e.coef.assign((N + 1) * (N + 1), 0.0);
  const cplx ik(0.0, k);
  const double dth = kTwoPi / rule.n_theta;
  for (int ip = 0; ip < rule.n_phi; ++ip) {
    const double phi_s = std::acos(rule.u[ip]);
    for (int jt = 0; jt < rule.n_theta; ++jt) {
      const double theta_s = dth * jt;
      const Vec3 y = sphere.point(theta_s, phi_s);
      const Vec3 zeta = y - c.x_c;
      const double rho = norm(zeta);
      if (!(rho > c.r * (1.0 + 1e-12)))
        throw geometry_error(
            "quadrature node touches the expansion ball; shrink r or refine");
      const double phz = std::acos(std::min(1.0, std::max(-1.0, zeta.z / rho)));
      const double thz = std::atan2(zeta.y, zeta.x);
      const SphericalBessel sb = spherical_bessel_batch(N + 1, k * rho);
      const double wS = sphere.R * sphere.R * rule.wu[ip] * dth;
      const cplx base = ik * phi(theta_s, phi_s) * wS;
      if (layer == Layer::slp) {
        const SphHarmTable tab = sph_harm_table(N, thz, phz, false);
        for (int l = 0; l <= N; ++l) {
          const cplx hl(sb.j[l], sb.y[l]);
          const cplx bh = base * hl;
          for (int m = -l; m <= l; ++m)
            e.coef[l * l + l + m] += bh * tab.value[l * l + l - m];
        }
      } else {
        const SphHarmTable tab = sph_harm_table(N, thz, phz, true);
        const Vec3 nhat = (1.0 / sphere.R) * y;
        const Vec3 rho_hat = (1.0 / rho) * zeta;
        const double cphz = std::cos(phz), sphz = std::sin(phz);
        const double cth = std::cos(thz), sth = std::sin(thz);
        const Vec3 phi_hat{cphz * cth, cphz * sth, -sphz};
        const Vec3 th_hat{-sth, cth, 0.0};
        const double nr = dot(nhat, rho_hat);
        const double nph = dot(nhat, phi_hat);
        const double nth = dot(nhat, th_hat);
        const double x = k * rho;
        for (int l = 0; l <= N; ++l) {
          const cplx hl(sb.j[l], sb.y[l]);
          const cplx hp = l == 0 ? -cplx(sb.j[1], sb.y[1])
                                 : cplx(sb.j[l - 1], sb.y[l - 1]) -
                                       ((l + 1.0) / x) * hl;
          for (int m = -l; m <= l; ++m) {
            const int im = l * l + l - m;  // index of Y_l^{-m}
            cplx grad = nph * tab.d_phi[im];
            if (m != 0)
              grad += nth * cplx(0.0, -m) * tab.value_over_sin[im];
            const cplx dn = nr * k * hp * tab.value[im] + (hl / rho) * grad;
            e.coef[l * l + l + m] += base * dn;
          }
        }
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// expansion evaluation

namespace {
void check_eval(const QbxExpansion& e, CoeffKind want, const char* who) {
  if (e.kind != want)
    throw validation_error(std::string(who) + ": wrong expansion kind");
  if (!(e.r >= 0.0) || !std::isfinite(e.r))
    throw validation_error(std::string(who) + ": bad radius");
}
}  // namespace

cplx cauchy_eval(const QbxExpansion& e, double theta0) {
  check_eval(e, CoeffKind::taylor, "cauchy_eval");
  const cplx z = std::polar(e.r, theta0);
  cplx acc = 0.0;
  for (int j = e.N; j >= 0; --j) acc = acc * z + e.coef[j];
  return acc;
}

cplx laplace_slp_eval(const QbxExpansion& e, double theta0) {
  check_eval(e, CoeffKind::log_series, "laplace_slp_eval");
  const cplx z = std::polar(e.r, theta0);
  cplx acc = 0.0;
  for (int j = e.N; j >= 1; --j) acc = acc * z + e.coef[j];
  acc *= z;
  return cplx(e.coef[0].real() - acc.real(), 0.0);
}

cplx laplace_dlp_eval(const QbxExpansion& e, double theta0) {
  check_eval(e, CoeffKind::taylor, "laplace_dlp_eval");
  const cplx z = std::polar(e.r, theta0);
  cplx acc = 0.0;
  for (int j = e.N; j >= 0; --j) acc = acc * z + e.coef[j];
  return cplx(-acc.imag(), 0.0);
}

cplx helmholtz2d_eval(const QbxExpansion& e, double theta0) {
  check_eval(e, CoeffKind::fourier_bessel, "helmholtz2d_eval");
  const int N = e.N;
  const std::vector<double> J = bessel_j_batch(N, e.kernel.k * e.r);
  // SLP keeps every computed mode; the DLP series is truncated one order
  // short on each side, which is where its r^N rate comes from.
  const int L = e.kernel.family == Family::helmholtz_dlp ? N - 1 : N;
  cplx acc = 0.0;
  for (int l = -L; l <= L; ++l)
    acc += e.coef[N + l] * J[std::abs(l)] * std::polar(1.0, l * theta0);
  return acc;
}

cplx helmholtz3d_eval(const QbxExpansion& e, double theta0, double phi0) {
  check_eval(e, CoeffKind::sph_harm_series, "helmholtz3d_eval");
  const int N = e.N;
  const SphericalBessel sb = spherical_bessel_batch(N, e.kernel.k * e.r);
  const SphHarmTable tab = sph_harm_table(N, theta0, phi0, false);
  cplx acc = 0.0;
  for (int l = 0; l <= N; ++l) {
    cplx inner = 0.0;
    for (int m = -l; m <= l; ++m)
      inner += e.coef[l * l + l + m] * tab.value[l * l + l + m];
    acc += sb.j[l] * inner;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// on-surface pipeline

cplx eval_on_surface(const KernelSpec& kernel, const Curve& curve,
                     const Density& phi, double t0, const EvalParams& p) {
  kernel.validate();
  if (kernel.dimension != 2)
    throw validation_error("eval_on_surface: 2D kernel required for a curve");
  const GaussRule rule = gauss_rule(p.q);
  const CenterPlacement c = place_center(curve, t0, p.r, p.side);
  const double theta0 = std::arg(curve.w(t0) - c.x_c);
  switch (kernel.family) {
    case Family::cauchy:
      return cauchy_eval(cauchy_coeffs(curve, phi, c, p.N, p.M, rule), theta0);
    case Family::laplace_slp:
      return laplace_slp_eval(
          laplace_slp_coeffs(curve, phi, c, p.N, p.M, rule), theta0);
    case Family::laplace_dlp:
      return laplace_dlp_eval(
          laplace_dlp_coeffs(curve, phi, c, p.N, p.M, rule), theta0);
    case Family::helmholtz_slp:
      return helmholtz2d_eval(
          helmholtz2d_coeffs(curve, phi, c, p.N, p.M, rule, Layer::slp,
                             kernel.k),
          theta0);
    case Family::helmholtz_dlp:
      return helmholtz2d_eval(
          helmholtz2d_coeffs(curve, phi, c, p.N, p.M, rule, Layer::dlp,
                             kernel.k),
          theta0);
  }
  throw validation_error("eval_on_surface: unknown kernel");
}

cplx eval_on_surface(const KernelSpec& kernel, const Sphere& sphere,
                     const Density3& phi, double theta0, double phi0,
                     const EvalParams& p) {
  kernel.validate();
  if (kernel.dimension != 3)
    throw validation_error("eval_on_surface: 3D kernel required for a sphere");
  const SphereRule rule = sphere_rule(p.n_phi, p.n_theta);
  const CenterPlacement3 c = place_center(sphere, theta0, phi0, p.r, p.side);
  const Layer layer =
      kernel.family == Family::helmholtz_slp ? Layer::slp : Layer::dlp;
  const QbxExpansion e =
      helmholtz3d_coeffs(sphere, phi, c, p.N, rule, layer, kernel.k);
  const Vec3 d = sphere.point(theta0, phi0) - c.x_c;
  const double rho = norm(d);
  const double ph = std::acos(std::min(1.0, std::max(-1.0, d.z / rho)));
  const double th = std::atan2(d.y, d.x);
  return helmholtz3d_eval(e, th, ph);
}

}  // namespace qbx
