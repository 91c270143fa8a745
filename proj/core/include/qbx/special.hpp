#pragma once

#include <complex>
#include <vector>

namespace qbx {

using cplx = std::complex<double>;

// Cylindrical Bessel functions of integer order, J_0..J_{n_max}, by Miller's
// downward recurrence normalized with J_0 + 2*sum J_{2k} = 1.
// Preconditions: 0 <= n_max <= 200, x > 0.
std::vector<double> bessel_j_batch(int n_max, double x);

// Y_0..Y_{n_max}. Y_0/Y_1 from the log series for x < 12 and the Hankel
// modulus/phase asymptotics for x >= 12, then the (stable) upward recurrence.
// Preconditions: 0 <= n_max <= 200, x > 0.
std::vector<double> bessel_y_batch(int n_max, double x);

// H^(1)_n = J_n + i Y_n, n = 0..n_max.
std::vector<cplx> hankel1_batch(int n_max, double x);

struct SphericalBessel {
  std::vector<double> j, y;  // j_0..j_{n_max}, y_0..y_{n_max}
};
// j_l by downward recurrence (normalized against j_0 or j_1, whichever is
// safely away from a zero), y_l upward from closed forms.
SphericalBessel spherical_bessel_batch(int n_max, double x);

// Spherical harmonics, fully normalized, *without* the Condon-Shortley phase:
//   Y_l^m(theta, phi) = sqrt((2l+1)/4pi * (l-|m|)!/(l+|m|)!)
//                       * P_l^{|m|}(cos phi) * e^{i m theta},
// theta azimuthal, phi polar. Consequence: Y_l^{-m} = conj(Y_l^m).
struct SphHarm {
  cplx value;
  cplx d_theta;  // = i*m*value, exactly
  cplx d_phi;
};
SphHarm sph_harm(int l, int m, double theta, double phi);

// All (l, m) with l <= l_max at one point; index l*l + l + m.
// d_phi uses the pole-stable two-term recombination (no 1/sin phi), and
// value_over_sin holds Y_l^m / sin(phi) for m != 0 (finite at the poles,
// needed for the azimuthal component of surface gradients); it is 0 at m = 0.
struct SphHarmTable {
  int l_max = -1;
  std::vector<cplx> value, d_phi, value_over_sin;
  const cplx& at(int l, int m) const { return value[l * l + l + m]; }
};
SphHarmTable sph_harm_table(int l_max, double theta, double phi,
                            bool want_grad = false);

}  // namespace qbx
