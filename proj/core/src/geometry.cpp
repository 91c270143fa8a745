#include "qbx/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qbx/errors.hpp"
#include "qbx/quadrature.hpp"

namespace qbx {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Curve::Curve(CurveKind kind, double p0, double p1, double p2)
    : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {
  switch (kind_) {
    case CurveKind::circle:
      if (!(p0_ > 0.0) || !std::isfinite(p0_))
        throw validation_error("circle: radius must be positive");
      name_ = "circle(" + fmt_num(p0_) + ")";
      break;
    case CurveKind::ellipse:
      if (!(p0_ > 0.0) || !(p1_ > 0.0) || !std::isfinite(p0_) ||
          !std::isfinite(p1_))
        throw validation_error("ellipse: semi-axes must be positive");
      name_ = "ellipse(" + fmt_num(p0_) + ";" + fmt_num(p1_) + ")";
      break;
    case CurveKind::starfish:
      if (!(p0_ > 0.0) || !std::isfinite(p0_))
        throw validation_error("starfish: radius must be positive");
      if (!(p1_ >= 0.0) || !(p1_ < 1.0))
        throw validation_error("starfish: amplitude must be in [0, 1)");
      if (p2_ < 2.0)
        throw validation_error("starfish: arm count must be >= 2");
      name_ = "starfish(" + fmt_num(p0_) + ";" + fmt_num(p1_) + ";" +
              fmt_num(p2_) + ")";
      break;
  }
  // Smooth periodic integrand, so the composite rule converges far past
  // double precision at this resolution.
  const GaussRule rule = gauss_rule(32);
  arc_ = composite_integrate([this](double t) { return cplx(speed(t), 0.0); },
                             0.0, kTwoPi, 64, rule)
             .real();
}

Curve Curve::circle(double R) { return Curve(CurveKind::circle, R, 0, 0); }
Curve Curve::ellipse(double a, double b) {
  return Curve(CurveKind::ellipse, a, b, 0);
}
Curve Curve::starfish(double R, double amp, int arms) {
  return Curve(CurveKind::starfish, R, amp, arms);
}

cplx Curve::w(double t) const {
  switch (kind_) {
    case CurveKind::circle:
      return std::polar(p0_, t);
    case CurveKind::ellipse:
      return cplx(p0_ * std::cos(t), p1_ * std::sin(t));
    case CurveKind::starfish:
      return p0_ * (1.0 + p1_ * std::cos(p2_ * t)) * std::polar(1.0, t);
  }
  return 0.0;
}

cplx Curve::wp(double t) const {
  switch (kind_) {
    case CurveKind::circle:
      return cplx(0.0, 1.0) * std::polar(p0_, t);
    case CurveKind::ellipse:
      return cplx(-p0_ * std::sin(t), p1_ * std::cos(t));
    case CurveKind::starfish: {
      const double rho = p0_ * (1.0 + p1_ * std::cos(p2_ * t));
      const double drho = -p0_ * p1_ * p2_ * std::sin(p2_ * t);
      return (cplx(drho, rho)) * std::polar(1.0, t);
    }
  }
  return 0.0;
}

cplx Curve::wpp(double t) const {
  switch (kind_) {
    case CurveKind::circle:
      return -std::polar(p0_, t);
    case CurveKind::ellipse:
      return cplx(-p0_ * std::cos(t), -p1_ * std::sin(t));
    case CurveKind::starfish: {
      const double rho = p0_ * (1.0 + p1_ * std::cos(p2_ * t));
      const double drho = -p0_ * p1_ * p2_ * std::sin(p2_ * t);
      const double ddrho = -p0_ * p1_ * p2_ * p2_ * std::cos(p2_ * t);
      return cplx(ddrho - rho, 2.0 * drho) * std::polar(1.0, t);
    }
  }
  return 0.0;
}

double Curve::curvature(double t) const {
  const cplx d1 = wp(t), d2 = wpp(t);
  const double s = std::abs(d1);
  return std::imag(std::conj(d1) * d2) / (s * s * s);
}

cplx Curve::outward_normal(double t) const {
  const cplx d1 = wp(t);
  return cplx(0.0, -1.0) * d1 / std::abs(d1);
}

Curve make_curve(const std::string& spec) {
  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw validation_error("make_curve: cannot parse '" + spec + "'");
  const std::string head = spec.substr(0, open);
  std::string args = spec.substr(open + 1, close - open - 1);
  std::vector<double> p;
  size_t pos = 0;
  while (pos <= args.size() && !args.empty()) {
    size_t sep = args.find_first_of(";,", pos);
    const std::string tok =
        args.substr(pos, sep == std::string::npos ? sep : sep - pos);
    try {
      size_t used = 0;
      p.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw validation_error("make_curve: bad parameter '" + tok + "' in '" +
                             spec + "'");
    }
    if (sep == std::string::npos) break;
    pos = sep + 1;
  }
  if (head == "circle" && p.size() == 1) return Curve::circle(p[0]);
  if (head == "ellipse" && p.size() == 2) return Curve::ellipse(p[0], p[1]);
  if (head == "starfish" && p.size() == 3) {
    const int arms = static_cast<int>(std::lround(p[2]));
    if (std::abs(p[2] - arms) > 1e-9)
      throw validation_error("make_curve: starfish arm count must be integer");
    return Curve::starfish(p[0], p[1], arms);
  }
  throw validation_error("make_curve: unknown curve or wrong arity in '" +
                         spec + "'");
}

Panelization panelize(const Curve& curve, int M) {
  if (M < 1 || M > 4096)
    throw validation_error("panelize: panel count must be in [1, 4096]");
  Panelization p;
  p.M = M;
  p.h = curve.arc_length() / M;
  p.edges.resize(M + 1);
  for (int i = 0; i <= M; ++i) p.edges[i] = kTwoPi * i / M;
  return p;
}

CenterPlacement place_center(const Curve& curve, double t0, double r,
                             Side side) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(t0))
    throw validation_error("place_center: need finite t0 and r > 0");
  const double kappa = std::abs(curve.curvature(t0));
  if (kappa > 0.0 && r > 0.5 / kappa)
    throw geometry_error("place_center: r = " + std::to_string(r) +
                         " exceeds the local curvature bound 0.5/|kappa| = " +
                         std::to_string(0.5 / kappa));
  CenterPlacement c;
  c.t0 = t0;
  c.r = r;
  c.side = side;
  const cplx n = curve.outward_normal(t0);
  c.x_c = curve.w(t0) + (side == Side::interior ? -r : r) * n;
  return c;
}

std::string Sphere::name() const { return "sphere(" + fmt_num(R) + ")"; }

CenterPlacement3 place_center(const Sphere& sphere, double theta0, double phi0,
                              double r, Side side) {
  if (!(sphere.R > 0.0))
    throw validation_error("place_center: sphere radius must be positive");
  if (!(r > 0.0) || !std::isfinite(r))
    throw validation_error("place_center: need r > 0");
  if (side == Side::interior && r > 0.5 * sphere.R)
    throw geometry_error("place_center: r exceeds half the sphere radius");
  CenterPlacement3 c;
  c.theta0 = theta0;
  c.phi0 = phi0;
  c.r = r;
  c.side = side;
  const double scale =
      side == Side::interior ? 1.0 - r / sphere.R : 1.0 + r / sphere.R;
  c.x_c = scale * sphere.point(theta0, phi0);
  return c;
}

}  // namespace qbx
