#include <doctest.h>

#include <numbers>

#include "dirloc/quadrature.hpp"

using namespace dirloc;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre exactness") {
    const auto rule = gauss_legendre(10, 0.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 19);
    CHECK(s == doctest::Approx(1.0 / 20.0).epsilon(1e-14));

    const auto r20 = gauss_legendre(20, 0.0, 1.0);
    double e = 0.0;
    for (std::size_t i = 0; i < r20.size(); ++i) e += r20.weights[i] * std::exp(r20.nodes[i]);
    CHECK(e == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-15));

    CHECK_THROWS(gauss_legendre(0));
  }

  TEST_CASE("composite rule covers all panels") {
    const auto rule = composite_gauss_legendre({0.0, 0.5, 2.0, 3.0}, 8);
    CHECK(rule.size() == 24);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    CHECK(s == doctest::Approx(9.0).epsilon(1e-14));
  }

  TEST_CASE("graded edges") {
    const auto e = graded_edges(20.0, 0.25, 4.0);
    CHECK(e.front() == 0.0);
    CHECK(e.back() == doctest::Approx(20.0));
    CHECK(e[1] == doctest::Approx(0.25));
    for (std::size_t i = 1; i < e.size(); ++i) {
      CHECK(e[i] > e[i - 1]);
      CHECK(e[i] - e[i - 1] <= 4.0 + 1e-12);
    }
  }

  TEST_CASE("spherical rule integrates radial and angular moments") {
    const auto rule = spherical_rule(momentum_edges(10.0, 1.0), {});
    double gauss = 0.0, z2 = 0.0, xy = 0.0, ball = 0.0;
    rule.for_each([&](const Vec3& p, double w) {
      const double g = std::exp(-p.squaredNorm());
      gauss += w * g;
      z2 += w * g * p[2] * p[2];
      xy += w * g * p[0] * p[1];
    });
    const auto unit = spherical_rule({0.0, 2.0}, {});
    unit.for_each([&](const Vec3&, double w) { ball += w; });
    const double pi32 = std::pow(std::numbers::pi, 1.5);
    CHECK(std::abs(gauss / pi32 - 1.0) < 1e-12);
    CHECK(z2 == doctest::Approx(pi32 / 2.0).epsilon(1e-13));
    CHECK(std::abs(xy) < 1e-14);
    CHECK(ball == doctest::Approx(32.0 * std::numbers::pi / 3.0).epsilon(1e-13));
    CHECK(rule.size() == rule.radial.size() * 64 * 64);
  }

  TEST_CASE("refined spec doubles node counts") {
    const SphericalRuleSpec s{8, 16, 32};
    const auto r = s.refined();
    CHECK(r.radial_order == 16);
    CHECK(r.polar == 32);
    CHECK(r.azimuth == 64);
  }
}
