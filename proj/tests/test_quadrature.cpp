#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qbx/errors.hpp"
#include "qbx/geometry.hpp"
#include "qbx/quadrature.hpp"
#include "qbx/special.hpp"
#include "qbx/sweep.hpp"

using namespace qbx;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("gauss_rule: classical low orders") {
  const GaussRule g1 = gauss_rule(1);
  CHECK(g1.x.size() == 1);
  CHECK(g1.x[0] == 0.0);
  CHECK(g1.w[0] == doctest::Approx(2.0).epsilon(1e-15));
  const GaussRule g2 = gauss_rule(2);
  CHECK(std::abs(g2.x[1] - 0.57735026918962576) < 1e-15);
  CHECK(std::abs(g2.x[0] + 0.57735026918962576) < 1e-15);
  CHECK(std::abs(g2.w[0] - 1.0) < 1e-15);
  CHECK(std::abs(g2.w[1] - 1.0) < 1e-15);
}

TEST_CASE("gauss_rule: weights sum to 2, nodes symmetric and interior") {
  for (int q = 1; q <= 64; ++q) {
    const GaussRule g = gauss_rule(q);
    REQUIRE(int(g.x.size()) == q);
    double sw = 0.0;
    for (double w : g.w) {
      CHECK(w > 0.0);
      sw += w;
    }
    CHECK(std::abs(sw - 2.0) < 1e-14);
    for (int i = 0; i < q; ++i) {
      CHECK(g.x[i] > -1.0);
      CHECK(g.x[i] < 1.0);
      CHECK(std::abs(g.x[i] + g.x[q - 1 - i]) < 1e-15);
      if (i) CHECK(g.x[i] > g.x[i - 1]);
    }
  }
}

TEST_CASE("gauss_rule: exact for monomials up to degree 2q-1") {
  for (int q : {1, 2, 3, 5, 8, 13, 32, 64}) {
    const GaussRule g = gauss_rule(q);
    for (int p = 0; p <= 2 * q - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < q; ++i) s += g.w[i] * std::pow(g.x[i], p);
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("gauss_rule: q=5 integrates x^8 to 2/9") {
  const GaussRule g = gauss_rule(5);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += g.w[i] * std::pow(g.x[i], 8);
  CHECK(std::abs(s - 2.0 / 9.0) < 1e-13);
}

TEST_CASE("gauss_rule: q out of range") {
  CHECK_THROWS_AS(gauss_rule(0), validation_error);
  CHECK_THROWS_AS(gauss_rule(65), validation_error);
}

TEST_CASE("composite_integrate: arc integrals on curves") {
  const GaussRule g3 = gauss_rule(3), g4 = gauss_rule(4), g8 = gauss_rule(8);
  const Curve c1 = Curve::circle(1.0);
  const cplx arc =
      composite_integrate([&](double t) { return cplx(c1.speed(t)); }, 0.0,
                          kTwoPi, 7, g3);
  CHECK(std::abs(arc - cplx(kTwoPi)) < 1e-13);
  const cplx orth = composite_integrate(
      [&](double t) { return std::polar(1.0, t) * c1.speed(t); }, 0.0, kTwoPi,
      8, g4);
  CHECK(std::abs(orth) < 1e-12);
  const Curve c2 = Curve::circle(2.0);
  const cplx sq = composite_integrate(
      [&](double t) { return cplx(std::norm(c2.w(t)) * c2.speed(t)); }, 0.0,
      kTwoPi, 16, g8);
  CHECK(std::abs(sq - cplx(16.0 * kPi)) < 1e-12);
}

TEST_CASE("composite_integrate: periodic analytic integrand") {
  const GaussRule g8 = gauss_rule(8);
  const cplx v = composite_integrate(
      [](double t) { return cplx(std::exp(std::cos(t))); }, 0.0, kTwoPi, 32,
      g8);
  CHECK(std::abs(v - cplx(7.9549265210128453)) < 1e-12);
  // bitwise deterministic
  const cplx v2 = composite_integrate(
      [](double t) { return cplx(std::exp(std::cos(t))); }, 0.0, kTwoPi, 32,
      g8);
  CHECK(v.real() == v2.real());
  CHECK(v.imag() == v2.imag());
}

TEST_CASE("composite_nodes: layout and jacobian weights") {
  const GaussRule g3 = gauss_rule(3);
  const LineNodes ln = composite_nodes(0.0, kTwoPi, 4, g3);
  REQUIRE(ln.t.size() == 12);
  REQUIRE(ln.w.size() == 12);
  const double width = kTwoPi / 4.0;
  double sw = 0.0;
  for (size_t i = 0; i < ln.w.size(); ++i) sw += ln.w[i];
  CHECK(std::abs(sw - kTwoPi) < 1e-13);
  for (int p = 0; p < 4; ++p)
    for (int i = 0; i < 3; ++i) {
      const double expect = (p + 0.5) * width + 0.5 * width * g3.x[i];
      CHECK(std::abs(ln.t[p * 3 + i] - expect) < 1e-15);
      CHECK(ln.t[p * 3 + i] > p * width);
      CHECK(ln.t[p * 3 + i] < (p + 1) * width);
    }
}

TEST_CASE("per-panel Gauss error decays at order 2q") {
  // Coefficient-type integrand with the center at the origin; the composite
  // total telescopes around the closed curve, so the classical rate is only
  // visible in the per-panel errors (summed in l1).
  for (int q : {2, 3}) {
    const GaussRule rule = gauss_rule(q);
    auto f = [](double t) {
      return std::cos(3.0 * t) / (2.0 * std::exp(cplx(0.0, 2.0 * t)));
    };
    std::vector<double> hs, errs;
    for (int M : {8, 16, 32, 64}) {
      const double width = kTwoPi / M;
      double total = 0.0;
      for (int p = 0; p < M; ++p) {
        const cplx g = composite_integrate(f, p * width, (p + 1) * width, 1, rule);
        const AdaptiveResult ex =
            adaptive_integrate(f, p * width, (p + 1) * width, 1e-14);
        total += std::abs(g - ex.value);
      }
      hs.push_back(width);
      errs.push_back(total);
    }
    const FitResult fit = fit_order(hs, errs);
    CHECK(fit.slope > 2.0 * q - 0.5);
    CHECK(fit.slope < 2.0 * q + 0.5);
  }
}

TEST_CASE("adaptive_integrate: smooth and endpoint-singular integrands") {
  const AdaptiveResult s2 = adaptive_integrate(
      [](double t) { return cplx(std::sin(t) * std::sin(t)); }, 0.0, kTwoPi,
      1e-12);
  CHECK(std::abs(s2.value - cplx(kPi)) < 1e-12);
  CHECK(s2.err_est <= 1e-12 * (1.0 + std::abs(s2.value)));

  const AdaptiveResult lg = adaptive_integrate(
      [](double t) { return cplx(std::log(1.0 / t)); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(lg.value - cplx(1.0)) < 1e-10);

  const AdaptiveResult bes = adaptive_integrate(
      [](double t) { return cplx(std::exp(std::cos(t))); }, 0.0, kTwoPi,
      1e-13);
  CHECK(std::abs(bes.value - cplx(7.9549265210128453)) < 1e-12);
}

TEST_CASE("adaptive_integrate: tolerance floor") {
  CHECK_THROWS_AS(adaptive_integrate([](double) { return cplx(1.0); }, 0.0,
                                     1.0, 1e-15),
                  validation_error);
}

TEST_CASE("sphere rule: area, normalization, zero mean") {
  const SphereRule rule = sphere_rule(16, 32);
  const double R = 1.3;
  const cplx area = sphere_integrate(
      [](double, double) { return cplx(1.0); }, R, rule);
  CHECK(std::abs(area - cplx(4.0 * kPi * R * R)) <
        1e-12 * 4.0 * kPi * R * R);
  const cplx nrm = sphere_integrate(
      [](double th, double ph) { return std::norm(sph_harm(2, 1, th, ph).value); },
      1.0, rule);
  CHECK(std::abs(nrm - cplx(1.0)) < 1e-10);
  const cplx zero = sphere_integrate(
      [](double th, double ph) { return sph_harm(3, 0, th, ph).value; }, 1.0,
      rule);
  CHECK(std::abs(zero) < 1e-12);
}

TEST_CASE("sphere rule: node caps and pole avoidance") {
  CHECK_THROWS_AS(sphere_rule(0, 8), validation_error);
  CHECK_THROWS_AS(sphere_rule(8, 0), validation_error);
  CHECK_THROWS_AS(sphere_rule(4097, 8), validation_error);
  CHECK_THROWS_AS(sphere_rule(8, 8193), validation_error);
  const SphereRule rule = sphere_rule(48, 96);
  for (double u : rule.u) {
    CHECK(u > -1.0);
    CHECK(u < 1.0);
  }
}
