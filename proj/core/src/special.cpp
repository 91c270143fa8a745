#include "qbx/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qbx/errors.hpp"

namespace qbx {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.5772156649015328606;

void check_bessel_args(const char* who, int n_max, double x) {
  if (n_max < 0 || n_max > 200)
    throw validation_error(std::string(who) + ": order_max " +
                           std::to_string(n_max) + " outside [0, 200]");
  if (!(x > 0.0) || !std::isfinite(x))
    throw validation_error(std::string(who) + ": x must be positive");
}

// Miller's downward recurrence for J. The start order needs a buffer above
// the turning point that scales like x^(1/3), not x.
int miller_start(int n_max, double x) {
  // must begin in the decaying regime, i.e. above both the requested order
  // and the turning point near n = x
  const int above = std::max(n_max, static_cast<int>(std::ceil(x)));
  return above + 20 + static_cast<int>(std::ceil(8.0 * std::cbrt(x)));
}

// Y_0 and Y_1. Power series with the log term below x = 12; Hankel
// modulus/phase asymptotics above (the series loses ~digits/x beyond that,
// the asymptotic error ~e^{-2x} is already below 1e-10 there). The series
// alternates with terms up to ~1e4 times the result near the crossover, so
// it is accumulated in long double: in plain double the ~1e-12 cancellation
// residue is erratic in x, which downstream adaptive quadrature chases into
// pathological subdivision when asked for comparable tolerances.
void bessel_y01(double x, double& y0, double& y1) {
  const std::vector<double> J = bessel_j_batch(1, x);
  if (x < 12.0) {
    const double lg = std::log(0.5 * x) + kEulerGamma;
    const long double q = 0.25L * static_cast<long double>(x) * x;
    long double sum = 0.0L, term = 1.0L, hk = 0.0L;
    for (int k = 1; k <= 80; ++k) {
      term *= q / (static_cast<long double>(k) * k);
      hk += 1.0L / k;
      const long double add = ((k & 1) ? 1.0L : -1.0L) * hk * term;
      sum += add;
      if (k > 4 && std::abs(static_cast<double>(add)) <
                       1e-20 * (std::abs(static_cast<double>(sum)) + 1e-30))
        break;
    }
    y0 = (2.0 / kPi) * (lg * J[0] + static_cast<double>(sum));

    long double S = 0.0L, hcum = 0.0L;
    term = 0.5L * x;  // (x/2)^{2k+1}/(k!(k+1)!) at k = 0
    for (int k = 0; k <= 80; ++k) {
      const long double hsum = 2.0L * hcum + 1.0L / (k + 1);  // H_k + H_{k+1}
      const long double add = ((k & 1) ? -1.0L : 1.0L) * hsum * term;
      S += add;
      hcum += 1.0L / (k + 1);
      term *= q / (static_cast<long double>(k + 1) * (k + 2));
      if (k > 4 && std::abs(static_cast<double>(add)) <
                       1e-20 * (std::abs(static_cast<double>(S)) + 1e-30))
        break;
    }
    y1 = (2.0 / kPi) * lg * J[1] - 2.0 / (kPi * x) -
         static_cast<double>(S) / kPi;
  } else {
    const auto pq = [x](double nu, double& P, double& Q) {
      const double mu = 4.0 * nu * nu;
      P = 1.0;
      Q = 0.0;
      double term = 1.0, prev = std::numeric_limits<double>::max();
      for (int k = 1; k <= 24; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= prev) break;  // asymptotic tail turned
        prev = std::abs(term);
        const double s = ((k / 2) & 1) ? -1.0 : 1.0;
        if (k & 1)
          Q += s * term;
        else
          P += s * term;
        if (std::abs(term) < 1e-18) break;
      }
    };
    const double amp = std::sqrt(2.0 / (kPi * x));
    double P0, Q0, P1, Q1;
    pq(0.0, P0, Q0);
    pq(1.0, P1, Q1);
    const double w0 = x - 0.25 * kPi;
    const double w1 = x - 0.75 * kPi;
    y0 = amp * (P0 * std::sin(w0) + Q0 * std::cos(w0));
    y1 = amp * (P1 * std::sin(w1) + Q1 * std::cos(w1));
  }
}

}  // namespace

std::vector<double> bessel_j_batch(int n_max, double x) {
  check_bessel_args("bessel_j_batch", n_max, x);
  std::vector<double> out(n_max + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = miller_start(n_max, x);
  double bnp1 = 0.0, bn = 1e-30;
  double norm = 0.0;
  for (int n = start; n >= 1; --n) {
    if (n <= n_max) out[n] = bn;
    const double bnm1 = (2.0 * n / x) * bn - bnp1;
    bnp1 = bn;
    bn = bnm1;
    const int order = n - 1;
    if (order >= 2 && (order & 1) == 0) norm += 2.0 * bn;
    if (std::abs(bn) > 1e250) {
      const double s = 1e-250;
      bn *= s;
      bnp1 *= s;
      norm *= s;
      for (double& v : out) v *= s;
    }
  }
  out[0] = bn;
  norm += bn;
  const double scale = 1.0 / norm;
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> bessel_y_batch(int n_max, double x) {
  check_bessel_args("bessel_y_batch", n_max, x);
  if (x == 0.0) throw validation_error("bessel_y_batch: x must be > 0");
  std::vector<double> out(n_max + 1, 0.0);
  double y0, y1;
  bessel_y01(x, y0, y1);
  out[0] = y0;
  if (n_max >= 1) out[1] = y1;
  for (int n = 1; n < n_max; ++n)
    out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1];
  return out;
}

std::vector<cplx> hankel1_batch(int n_max, double x) {
  const auto j = bessel_j_batch(n_max, x);
  const auto y = bessel_y_batch(n_max, x);
  std::vector<cplx> h(n_max + 1);
  for (int n = 0; n <= n_max; ++n) h[n] = cplx(j[n], y[n]);
  return h;
}

SphericalBessel spherical_bessel_batch(int n_max, double x) {
  check_bessel_args("spherical_bessel_batch", n_max, x);
  SphericalBessel out;
  out.j.assign(n_max + 1, 0.0);
  out.y.assign(n_max + 1, -std::numeric_limits<double>::infinity());
  const double sx = std::sin(x), cx = std::cos(x);
  const double j0 = sx / x;
  const double j1 = sx / (x * x) - cx / x;

  const int start = miller_start(n_max, x);
  double bnp1 = 0.0, bn = 1e-30;
  double b0 = 0.0, b1 = 0.0;
  for (int n = start; n >= 1; --n) {
    if (n <= n_max) out.j[n] = bn;
    if (n == 1) b1 = bn;
    const double bnm1 = ((2.0 * n + 1.0) / x) * bn - bnp1;
    bnp1 = bn;
    bn = bnm1;
    if (std::abs(bn) > 1e250) {
      const double s = 1e-250;
      bn *= s;
      bnp1 *= s;
      b1 *= s;
      for (double& v : out.j) v *= s;
    }
  }
  b0 = bn;
  // normalize against whichever of j_0, j_1 is farther from a zero
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / b0 : j1 / b1;
  out.j[0] = b0;
  for (double& v : out.j) v *= scale;

  out.y[0] = -cx / x;
  if (n_max >= 1) out.y[1] = -cx / (x * x) - sx / x;
  for (int n = 1; n < n_max; ++n)
    out.y[n + 1] = ((2.0 * n + 1.0) / x) * out.y[n] - out.y[n - 1];
  return out;
}

SphHarmTable sph_harm_table(int l_max, double theta, double phi,
                            bool want_grad) {
  if (l_max < 0 || l_max > 200)
    throw validation_error("sph_harm_table: l_max outside [0, 200]");
  const double c = std::cos(phi), s = std::sin(phi);
  const int lt = l_max;
  const auto tri = [](int l, int m) { return l * (l + 1) / 2 + m; };

  // p(l,m): normalized so that Y_l^m = p(l,|m|) e^{im theta};
  // q(l,m) = p(l,m)/sin(phi), built by the same recurrence (finite at poles).
  std::vector<double> p(tri(lt, lt) + 1, 0.0), q;
  p[tri(0, 0)] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= lt; ++m) {
    const double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    p[tri(m, m)] = p[tri(m - 1, m - 1)] * s * f;
  }
  for (int m = 0; m < lt; ++m)
    p[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * p[tri(m, m)];
  for (int m = 0; m <= lt; ++m) {
    for (int l = m + 2; l <= lt; ++l) {
      const double a =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double lm1 = l - 1.0;
      const double b = std::sqrt((lm1 * lm1 - m * m) / (4.0 * lm1 * lm1 - 1.0));
      p[tri(l, m)] = a * (c * p[tri(l - 1, m)] - b * p[tri(l - 2, m)]);
    }
  }
  if (want_grad && lt >= 1) {
    q.assign(p.size(), 0.0);
    q[tri(1, 1)] = p[tri(0, 0)] * std::sqrt(1.5);
    for (int m = 2; m <= lt; ++m) {
      const double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      q[tri(m, m)] = q[tri(m - 1, m - 1)] * s * f;
    }
    for (int m = 1; m < lt; ++m)
      q[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * q[tri(m, m)];
    for (int m = 1; m <= lt; ++m) {
      for (int l = m + 2; l <= lt; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) /
                                   (static_cast<double>(l) * l - m * m));
        const double lm1 = l - 1.0;
        const double b =
            std::sqrt((lm1 * lm1 - m * m) / (4.0 * lm1 * lm1 - 1.0));
        q[tri(l, m)] = a * (c * q[tri(l - 1, m)] - b * q[tri(l - 2, m)]);
      }
    }
  }

  SphHarmTable out;
  out.l_max = lt;
  const int n = (lt + 1) * (lt + 1);
  out.value.assign(n, cplx(0.0));
  if (want_grad) {
    out.d_phi.assign(n, cplx(0.0));
    out.value_over_sin.assign(n, cplx(0.0));
  }
  std::vector<cplx> phase(lt + 1);
  for (int m = 0; m <= lt; ++m) phase[m] = std::polar(1.0, m * theta);

  for (int l = 0; l <= lt; ++l) {
    for (int m = 0; m <= l; ++m) {
      const cplx v = p[tri(l, m)] * phase[m];
      out.value[l * l + l + m] = v;
      out.value[l * l + l - m] = std::conj(v);
    }
    if (!want_grad) continue;
    for (int m = 0; m <= l; ++m) {
      // d/dphi of the normalized Legendre part, pole-stable two-term form
      double dp;
      if (m == 0) {
        dp = (l >= 1) ? -std::sqrt(l * (l + 1.0)) * p[tri(l, 1)] : 0.0;
      } else {
        const double lo = std::sqrt((l + m) * (l - m + 1.0)) * p[tri(l, m - 1)];
        const double hi =
            (m + 1 <= l) ? std::sqrt((l - m) * (l + m + 1.0)) * p[tri(l, m + 1)]
                         : 0.0;
        dp = 0.5 * (lo - hi);
      }
      const cplx dv = dp * phase[m];
      out.d_phi[l * l + l + m] = dv;
      out.d_phi[l * l + l - m] = std::conj(dv);
      if (m >= 1) {
        const cplx ov = q[tri(l, m)] * phase[m];
        out.value_over_sin[l * l + l + m] = ov;
        out.value_over_sin[l * l + l - m] = std::conj(ov);
      }
    }
  }
  return out;
}

SphHarm sph_harm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l)
    throw validation_error("sph_harm: need l >= 0 and |m| <= l");
  const SphHarmTable t = sph_harm_table(l, theta, phi, true);
  SphHarm out;
  out.value = t.value[l * l + l + m];
  out.d_theta = cplx(0.0, static_cast<double>(m)) * out.value;
  out.d_phi = t.d_phi[l * l + l + m];
  return out;
}

}  // namespace qbx
