#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qbx/special.hpp"

namespace qbx {

enum class CurveKind { circle, ellipse, starfish };
enum class Side { interior, exterior };

// Smooth closed curve w(t), t in [0, 2*pi), traversed counterclockwise.
//   circle(R):          w = R e^{it}
//   ellipse(a, b):      w = a cos t + i b sin t
//   starfish(R, c, p):  w = R (1 + c cos(p t)) e^{it}
class Curve {
 public:
  static Curve circle(double R);
  static Curve ellipse(double a, double b);
  static Curve starfish(double R, double amp, int arms);

  cplx w(double t) const;
  cplx wp(double t) const;
  cplx wpp(double t) const;
  double speed(double t) const { return std::abs(wp(t)); }
  double curvature(double t) const;  // signed, positive for a CCW circle
  cplx outward_normal(double t) const;

  double arc_length() const { return arc_; }
  CurveKind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // CSV-safe spelling

 private:
  Curve(CurveKind kind, double p0, double p1, double p2);
  CurveKind kind_;
  double p0_, p1_, p2_;
  double arc_;
  std::string name_;
};

// Parses "circle(1)", "ellipse(2;1)", "starfish(1;0.3;5)"; ',' also accepted
// as the separator so shell-quoted specs and CSV round-trips both work.
Curve make_curve(const std::string& spec);

// M equal parameter panels on [0, 2*pi]; h is the arc-length panel size
// arc_length / M used in coupling laws and reports.
struct Panelization {
  int M = 0;
  double h = 0.0;
  std::vector<double> edges;  // M + 1 parameter values
};
Panelization panelize(const Curve& curve, int M);

// Expansion center a distance r from w(t0) along the normal, on the chosen
// side. r must respect the local osculating circle: r <= 0.5 / |kappa(t0)|.
struct CenterPlacement {
  cplx x_c;
  double t0 = 0.0;
  double r = 0.0;
  Side side = Side::interior;
};
CenterPlacement place_center(const Curve& curve, double t0, double r,
                             Side side);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};
inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// Sphere of radius R about the origin; theta azimuthal in [0, 2*pi),
// phi polar in [0, pi].
struct Sphere {
  double R = 1.0;
  Vec3 point(double theta, double phi) const {
    const double s = std::sin(phi);
    return {R * s * std::cos(theta), R * s * std::sin(theta), R * std::cos(phi)};
  }
  std::string name() const;
};

struct CenterPlacement3 {
  Vec3 x_c;
  double theta0 = 0.0, phi0 = 0.0;
  double r = 0.0;
  Side side = Side::interior;
};
CenterPlacement3 place_center(const Sphere& sphere, double theta0, double phi0,
                              double r, Side side);

}  // namespace qbx
