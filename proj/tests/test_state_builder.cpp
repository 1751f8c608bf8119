#include <doctest.h>

#include <numbers>

#include "dirloc/errors.hpp"
#include "dirloc/state_builder.hpp"

using namespace dirloc;

// Shifts solving int |f|^2 p/|p| = v for a Gaussian of width sigma, from an
// independent 2-D (|p|, cos theta) Gauss-Legendre integration plus Brent root search.
constexpr double kKappaHalf = 0.7360084600746389;      // v = 0.5, sigma = 1
constexpr double kKappaPointThree = 0.20616362765292628;  // v = 0.3, sigma = 0.5

TEST_SUITE("state_builder") {
  TEST_CASE("Gaussian profile normalization and shape") {
    const auto f = gaussian_profile(1.0);
    CHECK(f(Vec3::Zero()) == doctest::Approx(std::pow(std::numbers::pi, -0.75)));
    CHECK(f.radial(1.0) == doctest::Approx(f(Vec3(0, 1, 0))));
    CHECK(f.spherically_symmetric());
    const auto c = check_profile_conditions(f);
    CHECK(c.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.mean_direction.norm() < 1e-14);
    CHECK_THROWS_AS(gaussian_profile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_profile(-1.0), std::invalid_argument);
  }

  TEST_CASE("profile gradient matches differences") {
    const auto f = boosted_gaussian_profile(Vec3(0.1, 0.2, 0.3), 0.7);
    const Vec3 p(0.3, -0.4, 0.9);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      const Vec3 dp = h * Vec3::Unit(k);
      CHECK(f.gradient(p)[k] == doctest::Approx((f(p + dp) - f(p - dp)) / (2 * h)).epsilon(1e-8));
    }
  }

  TEST_CASE("boosted profile shift against the independent oracle") {
    const auto f = boosted_gaussian_profile(Vec3(0, 0, 0.5), 1.0);
    CHECK(f.center[2] == doctest::Approx(kKappaHalf).epsilon(1e-10));
    CHECK(std::abs(f.center[0]) + std::abs(f.center[1]) == 0.0);
    const auto g = boosted_gaussian_profile(Vec3(0.3, 0, 0), 0.5);
    CHECK(g.center[0] == doctest::Approx(kKappaPointThree).epsilon(1e-10));
    CHECK(gaussian_mean_direction(kKappaHalf, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gaussian_mean_direction(0.0, 1.0) == 0.0);
  }

  TEST_CASE("boosted profile satisfies both conditions in 3-D") {
    for (const Vec3& v : {Vec3(0, 0, 0.5), Vec3(0.2, -0.4, 0.1), Vec3(0, 0.9, 0)}) {
      const auto c = check_profile_conditions(boosted_gaussian_profile(v, 1.0));
      CHECK(c.norm == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((c.mean_direction - v).norm() < 1e-8);
    }
  }

  TEST_CASE("boosted profile rejects |v| >= 1 and the unsupported band") {
    CHECK_THROWS_AS(boosted_gaussian_profile(Vec3(0, 0, 1.0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(boosted_gaussian_profile(Vec3(0, 0, 0.995), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(boosted_gaussian_profile(Vec3(0, 0, 0.5), 0.0), std::invalid_argument);
  }

  TEST_CASE("label validation") {
    LocalizationLabel l;
    CHECK_NOTHROW(l.validate());
    l.n = 0;
    CHECK_THROWS_AS(l.validate(), std::invalid_argument);
    l.n = 1;
    l.v = Vec3(0, 0, 1.0);
    CHECK_THROWS_AS(l.validate(), std::invalid_argument);
  }

  TEST_CASE("phi_n at the origin and its scaling") {
    LocalizationLabel l;
    l.n = 4;
    const auto phi = make_localizing_state(l);
    const Spinor4 v = phi(Vec3::Zero());
    const double expected = std::pow(4.0, -1.5) * std::pow(std::numbers::pi, -0.75);
    CHECK(v[0].real() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(std::abs(v[1]) + std::abs(v[2]) + std::abs(v[3]) == 0.0);
    CHECK(phi.p_max() == doctest::Approx(32.0));
    CHECK(phi.p_nyquist() == doctest::Approx(24.0));
  }

  TEST_CASE("translation and time phases") {
    LocalizationLabel l;
    l.a = Vec3(1.0, -0.5, 0.25);
    l.n = 2;
    const auto phi = make_localizing_state(l);
    LocalizationLabel l0 = l;
    l0.a = Vec3::Zero();
    const auto phi0 = make_localizing_state(l0);
    const Vec3 p(0.7, 0.1, -1.3);
    const Complex phase = std::polar(1.0, -l.a.dot(p));
    CHECK((phi(p) - phase * phi0(p)).norm() < 1e-15);
    const auto later = phi.evolved(0.75);
    CHECK(later.time() == 0.75);
    CHECK((later(p) - std::polar(1.0, -energy(p) * 0.75) * phi(p)).norm() < 1e-15);
  }

  TEST_CASE("state gradient matches differences") {
    LocalizationLabel l;
    l.a = Vec3(0.5, 0, -1);
    l.v = Vec3(0, 0.3, 0.2);
    l.n = 3;
    l.spin = SpinLabel::Down;
    const auto phi = make_localizing_state(l).evolved(0.4);
    const Vec3 p(1.1, -0.6, 2.0);
    const auto g = phi.gradient(p);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      const Vec3 dp = h * Vec3::Unit(k);
      CHECK((g[k] - (phi(p + dp) - phi(p - dp)) / (2 * h)).norm() < 1e-8);
    }
  }
}
