#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qbx/errors.hpp"
#include "qbx/special.hpp"

using namespace qbx;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double relc(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Deterministic uniform in [0,1); mt19937's raw stream is pinned by the
// standard, unlike the distribution adapters.
double urand(std::mt19937& g) { return g() * (1.0 / 4294967296.0); }

// L_{+-} Y assembled from the returned derivatives:
// e^{+-i theta} (d_phi +- i cot(phi) d_theta).
cplx ladder_apply(const SphHarm& y, double theta, double phi, int dir) {
  return std::exp(cplx(0.0, dir * theta)) *
         (y.d_phi + cplx(0.0, dir / std::tan(phi)) * y.d_theta);
}

}  // namespace

TEST_CASE("bessel J: reference values") {
  CHECK(std::abs(bessel_j_batch(0, 1e-8)[0] - 1.0) < 1e-10);
  CHECK(rel(bessel_j_batch(1, 1.0)[0], 0.76519768655796655) < 1e-13);
  CHECK(rel(bessel_j_batch(1, 1.0)[1], 0.44005058574493352) < 1e-13);
  CHECK(rel(bessel_j_batch(5, 2.0)[5], 0.0070396297558716855) < 1e-12);
  // deep in the decaying regime and far past the turning point
  CHECK(rel(bessel_j_batch(10, 0.5)[10], 2.6131773608228031e-13) < 1e-12);
  CHECK(rel(bessel_j_batch(30, 30.0)[30], 0.14393585001030721) < 1e-12);
  CHECK(rel(bessel_j_batch(0, 50.0)[0], 0.055812327669251815) < 1e-12);
}

TEST_CASE("bessel Y: reference values") {
  CHECK(rel(bessel_y_batch(0, 1.0)[0], 0.088256964215676958) < 1e-12);
  CHECK(rel(bessel_y_batch(8, 2.0)[8], -1853.9221751598764) < 1e-12);
  CHECK(rel(bessel_y_batch(10, 0.5)[10], -121963623349.56963) < 1e-12);
  CHECK(rel(bessel_y_batch(5, 0.1)[5], -24461484.502303909) < 1e-12);
}

TEST_CASE("bessel: domain and capability errors") {
  CHECK_THROWS_AS(bessel_j_batch(-1, 1.0), validation_error);
  CHECK_THROWS_AS(bessel_j_batch(201, 1.0), validation_error);
  CHECK_THROWS_AS(bessel_j_batch(3, -1.0), validation_error);
  CHECK_THROWS_AS(bessel_y_batch(3, 0.0), validation_error);
  CHECK_THROWS_AS(hankel1_batch(3, -0.5), validation_error);
  CHECK_THROWS_AS(spherical_bessel_batch(3, 0.0), validation_error);
}

TEST_CASE("hankel: H = J + iY") {
  const auto h0 = hankel1_batch(0, 1.0);
  CHECK(relc(h0[0], cplx(0.76519768655796655, 0.088256964215676958)) < 1e-12);
  const auto h1 = hankel1_batch(1, 1.0);
  CHECK(relc(h1[1], cplx(0.44005058574493352, -0.78121282130028872)) < 1e-12);
  const auto h3 = hankel1_batch(3, 2.0);
  CHECK(relc(h3[3], cplx(0.12894324947440205, -1.1277837768404278)) < 1e-12);
  // logarithmic singularity: Im H_0 ~ (2/pi) ln(x/2) < 0 as x -> 0
  CHECK(hankel1_batch(0, 1e-4)[0].imag() < 0.0);
}

TEST_CASE("bessel: Wronskian and three-term recurrence") {
  for (double x : {0.5, 3.0, 15.0, 40.0}) {
    const int n_max = 11;
    const auto J = bessel_j_batch(n_max, x);
    const auto Y = bessel_y_batch(n_max, x);
    const double w_exact = 2.0 / (kPi * x);
    for (int n = 0; n <= 10; ++n) {
      const double w = J[n + 1] * Y[n] - J[n] * Y[n + 1];
      CHECK(rel(w, w_exact) < 1e-10);
    }
    for (int n = 1; n <= 10; ++n) {
      const double resid = J[n - 1] + J[n + 1] - (2.0 * n / x) * J[n];
      CHECK(std::abs(resid) <= 1e-10 * std::max(1.0, std::abs(J[n])));
    }
  }
}

TEST_CASE("spherical bessel: closed forms and reference values") {
  const auto sb1 = spherical_bessel_batch(0, 1.0);
  CHECK(rel(sb1.j[0], 0.8414709848078965) < 1e-13);     // sin(1)
  CHECK(rel(sb1.y[0], -0.5403023058681398) < 1e-13);    // -cos(1)
  const auto sb05 = spherical_bessel_batch(2, 0.5);
  CHECK(rel(sb05.j[1], 0.16253703063606657) < 1e-12);
  const auto sb10 = spherical_bessel_batch(5, 10.0);
  CHECK(rel(sb10.j[5], -0.055534511621452181) < 1e-12);
  const auto sbq = spherical_bessel_batch(5, 1.0);
  CHECK(rel(sbq.y[5], -999.44034339223641) < 1e-12);
  const auto sbt = spherical_bessel_batch(5, 0.25);
  CHECK(rel(sbt.j[5], 9.3719811237268251e-8) < 1e-12);
  CHECK(rel(sbt.y[3], -3864.1262919319780) < 1e-12);
}

TEST_CASE("spherical bessel: cross-product identity") {
  // j_{n+1} y_n - j_n y_{n+1} = 1/x^2
  for (double x : {0.3, 1.0, 7.0, 25.0}) {
    const auto sb = spherical_bessel_batch(9, x);
    for (int n = 0; n <= 8; ++n) {
      const double w = sb.j[n + 1] * sb.y[n] - sb.j[n] * sb.y[n + 1];
      CHECK(rel(w, 1.0 / (x * x)) < 1e-10);
    }
  }
}

TEST_CASE("sph_harm: anchor values") {
  CHECK(relc(sph_harm(0, 0, 1.7, 0.4).value, cplx(0.28209479177387814)) <
        1e-13);
  // Y_1^0 = sqrt(3/4pi) cos(phi), Y_1^{+-1} = sqrt(3/8pi) sin(phi) e^{+-i t}:
  // the positive m = +-1 sign pins the convention (no Condon-Shortley phase).
  const double th = 0.3, ph = 0.9;
  CHECK(relc(sph_harm(1, 0, th, ph).value,
             cplx(std::sqrt(3.0 / (4.0 * kPi)) * std::cos(ph))) < 1e-13);
  CHECK(relc(sph_harm(1, 1, th, ph).value,
             std::sqrt(3.0 / (8.0 * kPi)) * std::sin(ph) *
                 std::exp(cplx(0.0, th))) < 1e-13);
  const SphHarm y32 = sph_harm(3, 2, 0.7, 1.1);
  CHECK(relc(y32.value, cplx(0.062580144189414692, 0.36283239890837843)) <
        1e-12);
  CHECK(relc(y32.d_phi, cplx(-0.059252347820817985, -0.34353822253444850)) <
        1e-12);
  const SphHarm ybig = sph_harm(10, -7, 2.1, 0.6);
  CHECK(relc(ybig.value, cplx(-0.077257835338117509, -0.12245592461177142)) <
        1e-12);
  CHECK(relc(ybig.d_phi, cplx(-0.60003078039652322, -0.95106630528032336)) <
        1e-12);
  CHECK_THROWS_AS(sph_harm(2, 3, 0.1, 0.1), validation_error);
}

TEST_CASE("sph_harm: conjugation symmetry and exact d_theta") {
  std::mt19937 gen(8811);
  for (int trial = 0; trial < 20; ++trial) {
    const double th = 2.0 * kPi * urand(gen);
    const double ph = 0.15 + (kPi - 0.3) * urand(gen);
    for (int l = 0; l <= 8; ++l)
      for (int m = 0; m <= l; ++m) {
        const SphHarm yp = sph_harm(l, m, th, ph);
        const SphHarm yn = sph_harm(l, -m, th, ph);
        CHECK(std::abs(yn.value - std::conj(yp.value)) <=
              1e-13 * (1.0 + std::abs(yp.value)));
        CHECK(yp.d_theta == cplx(0.0, m) * yp.value);
        CHECK(yn.d_theta == cplx(0.0, -m) * yn.value);
      }
  }
}

TEST_CASE("sph_harm: pointwise sum rule") {
  // l = 3 at the anchor point equals 7/(4 pi)
  double s = 0.0;
  for (int m = -3; m <= 3; ++m) s += std::norm(sph_harm(3, m, 0.7, 1.1).value);
  CHECK(rel(s, 0.55704230082163368) < 1e-13);
  std::mt19937 gen(4432);
  for (int trial = 0; trial < 10; ++trial) {
    const double th = 2.0 * kPi * urand(gen);
    const double ph = 0.1 + (kPi - 0.2) * urand(gen);
    for (int l : {1, 4, 9}) {
      double acc = 0.0;
      for (int m = -l; m <= l; ++m)
        acc += std::norm(sph_harm(l, m, th, ph).value);
      CHECK(std::abs(acc - (2 * l + 1) / (4.0 * kPi)) < 1e-12);
    }
  }
}

TEST_CASE("sph_harm: d_phi matches centered differences at order 2") {
  const double th = 0.8, ph = 1.0;
  for (int l : {2, 4, 7}) {
    for (int m : {0, 1, l}) {
      const SphHarm y = sph_harm(l, m, th, ph);
      auto fd_err = [&](double d) {
        const cplx fd = (sph_harm(l, m, th, ph + d).value -
                         sph_harm(l, m, th, ph - d).value) /
                        (2.0 * d);
        return std::abs(fd - y.d_phi);
      };
      const double e4 = fd_err(1e-4), e5 = fd_err(1e-5);
      const double order = std::log10(e4 / e5);
      CHECK(order >= 1.9);
    }
  }
}

TEST_CASE("sph_harm: ladder steps with magnitude identity") {
  // Raising/lowering moves m by one; the square-root coefficient matches
  // sqrt((l -+ m)(l +- m + 1)) in magnitude always, and in sign with +1 when
  // the step moves toward m = 0 and -1 when it moves away (this convention
  // has no Condon-Shortley phase).
  std::mt19937 gen(90210);
  for (int trial = 0; trial < 8; ++trial) {
    const double th = 2.0 * kPi * urand(gen);
    const double ph = 0.2 + (kPi - 0.4) * urand(gen);
    for (int l = 1; l <= 5; ++l)
      for (int m = -l; m <= l; ++m)
        for (int dir : {+1, -1}) {
          const cplx lhs = ladder_apply(sph_harm(l, m, th, ph), th, ph, dir);
          const int m2 = m + dir;
          const double c = dir > 0 ? std::sqrt(double(l - m) * (l + m + 1))
                                   : std::sqrt(double(l + m) * (l - m + 1));
          cplx expected = 0.0;
          if (std::abs(m2) <= l) {
            const double sign = std::abs(m2) < std::abs(m) ? 1.0 : -1.0;
            expected = sign * c * sph_harm(l, m2, th, ph).value;
          }
          CHECK(std::abs(lhs - expected) < 1e-10 * (1.0 + c));
          const double mag_rhs =
              std::abs(m2) <= l ? c * std::abs(sph_harm(l, m2, th, ph).value)
                                : 0.0;
          CHECK(std::abs(std::abs(lhs) - mag_rhs) < 1e-10 * (1.0 + c));
        }
  }
}

TEST_CASE("sph_harm_table: agrees with single evaluations") {
  const double th = 2.3, ph = 0.85;
  const SphHarmTable tab = sph_harm_table(6, th, ph, true);
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      const SphHarm y = sph_harm(l, m, th, ph);
      CHECK(std::abs(tab.at(l, m) - y.value) < 1e-14 * (1.0 + std::abs(y.value)));
      CHECK(std::abs(tab.d_phi[l * l + l + m] - y.d_phi) <
            1e-13 * (1.0 + std::abs(y.d_phi)));
      if (m != 0)
        CHECK(std::abs(tab.value_over_sin[l * l + l + m] * std::sin(ph) -
                       y.value) < 1e-13);
    }
}
