#pragma once

#include <functional>
#include <string>

#include "qbx/special.hpp"

namespace qbx {

enum class Family {
  cauchy,
  laplace_slp,
  laplace_dlp,
  helmholtz_slp,
  helmholtz_dlp,
};

struct KernelSpec {
  Family family = Family::cauchy;
  int dimension = 2;    // 2 for curves, 3 for the sphere (Helmholtz only)
  double k = 0.0;       // wavenumber, Helmholtz only

  void validate() const;      // throws validation_error
  std::string name() const;   // "cauchy", "laplace_slp", ...
};
KernelSpec make_kernel(const std::string& name, int dimension = 2,
                       double k = 0.0);

enum class DensityKind { zero, one, cos_n, sin_n, exp_in, ylm, custom };

// Boundary density on a curve, phi(t). The modal kinds carry their index so
// reference oracles can use closed forms; custom densities only get the
// numeric path.
struct Density {
  DensityKind kind = DensityKind::custom;
  int n = 0;
  std::string label;
  std::function<cplx(double)> f;

  cplx operator()(double t) const { return f(t); }

  static Density zero();
  static Density one();
  static Density cos_n(int n);
  static Density sin_n(int n);
  static Density exp_in(int n);  // e^{int}
  static Density custom(std::string label, std::function<cplx(double)> f);
};
// "zero" | "one" | "cos3t" | "sin2t" | "exp_i5t" (also "exp_i-2t")
Density make_density(const std::string& spec);

// Density on the sphere, phi(theta, phi).
struct Density3 {
  DensityKind kind = DensityKind::custom;
  int l = 0, m = 0;
  std::string label;
  std::function<cplx(double, double)> f;

  cplx operator()(double theta, double phi) const { return f(theta, phi); }

  static Density3 zero();
  static Density3 one();
  static Density3 ylm(int l, int m);
  static Density3 custom(std::string label,
                         std::function<cplx(double, double)> f);
};
// "zero" | "one" | "ylm_5_2" (also "ylm_3_-1")
Density3 make_density3(const std::string& spec);

}  // namespace qbx
