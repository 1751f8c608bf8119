#include <doctest.h>

#include <numbers>

#include "dirloc/errors.hpp"
#include "dirloc/observables.hpp"

using namespace dirloc;

TEST_SUITE("transform") {
  TEST_CASE("spherical Bessel functions") {
    for (double x : {0.0, 1e-4, 0.05, 0.0999, 0.1, 0.1001, 0.5, 3.0, 25.0}) {
      // closed forms cancel badly for small x; use six series terms there
      const double x2 = x * x;
      const double j0 = x < 0.2 ? 1 - x2 / 6 * (1 - x2 / 20 * (1 - x2 / 42 * (1 - x2 / 72 * (1 - x2 / 110))))
                                : std::sin(x) / x;
      const double j1 = x < 0.2 ? x / 3 * (1 - x2 / 10 * (1 - x2 / 28 * (1 - x2 / 54 * (1 - x2 / 88))))
                                : std::sin(x) / x2 - std::cos(x) / x;
      CHECK(spherical_j0(x) == doctest::Approx(j0).epsilon(1e-13));
      CHECK(std::abs(spherical_j1(x) - j1) < 1e-13);
    }
  }

  // Reference densities from adaptive quadrature (scipy.integrate.quad with
  // scipy.special.spherical_jn) of the same radial integrals.
  TEST_CASE("radial density against the quadrature oracle") {
    const auto f = gaussian_profile(1.0);
    CHECK(RadialTransform(f, 5).density(0.0) == doctest::Approx(12.92998614898287).epsilon(1e-10));
    CHECK(RadialTransform(f, 5).density(0.5) == doctest::Approx(0.21632958151752704).epsilon(1e-10));
    CHECK(RadialTransform(f, 7).density(0.25) == doctest::Approx(4.012058838290965).epsilon(1e-10));
    CHECK(RadialTransform(f, 10).density(1.0) == doctest::Approx(9.30483838173143e-05).epsilon(1e-8));
  }

  TEST_CASE("radial route rejects asymmetric profiles") {
    CHECK_THROWS_AS(RadialTransform(boosted_gaussian_profile(Vec3(0, 0, 0.2), 1.0), 2), std::invalid_argument);
    CHECK_THROWS_AS(RadialTransform(gaussian_profile(1.0), 0), std::invalid_argument);
  }

  TEST_CASE("radial summary and CSV round trip") {
    const auto table = radial_density(gaussian_profile(1.0), 5, RadialGrid::uniform(6.0, 601));
    const auto s = summarize(table);
    CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.rho0 == doctest::Approx(12.92998614898287).epsilon(1e-10));
    // Delta_x from the momentum-space oracle (0.3243419349485) up to the r > 6 tail
    CHECK(s.delta_x == doctest::Approx(0.3243419349485).epsilon(1e-5));
    CHECK(s.inside_unit_radius > 0.99);
    CHECK(s.inside_unit_radius < 1.0);
    const auto back = radial_table_from_csv(to_csv(table), 5);
    REQUIRE(back.rho.size() == table.rho.size());
    for (std::size_t i = 0; i < table.rho.size(); ++i) {
      CHECK(back.rho[i] == table.rho[i]);
      CHECK(back.grid.r[i] == table.grid.r[i]);
    }
    CHECK_THROWS(radial_table_from_csv("x,y\n1,2\n", 5));
  }

  TEST_CASE("grid validation and fitting") {
    CHECK_THROWS_AS((CartesianGrid{16.0, 100}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CartesianGrid{0.0, 64}.validate()), std::invalid_argument);
    LocalizationLabel l;
    l.n = 5;
    const auto phi = make_localizing_state(l);
    const auto g = CartesianGrid::fitted(phi, 128);
    CHECK(g.extent == doctest::Approx(std::numbers::pi * 128 / 30.0));
    CHECK(g.nyquist() >= phi.p_nyquist() - 1e-12);
    CHECK_THROWS_AS(position_state_cartesian(phi, CartesianGrid{16.0, 64}), NyquistError);
  }

  TEST_CASE("3-D route reproduces the radial density on grid points") {
    LocalizationLabel l;
    l.n = 2;
    const auto phi = make_localizing_state(l);
    const CartesianGrid g{12.0, 64};
    const auto psi = position_state_cartesian(phi, g);
    const auto rho = density(psi);
    CHECK(grid_integral(g, rho) == doctest::Approx(1.0).epsilon(1e-9));
    const RadialTransform rt(phi.profile(), 2);
    for (int i : {32, 33, 36, 40}) {
      const std::size_t idx = g.index(i, 32, 32);
      CHECK(rho[idx] == doctest::Approx(rt.density(std::abs(g.coordinate(i)))).epsilon(1e-7));
    }
    // spin up: lower components follow the i x3/r, i (x1 + i x2)/r structure
    const auto [g0, g1] = rt.components(g.coordinate(40));
    const Spinor4 at = psi.at(g.index(32, 32, 40));
    CHECK(std::abs(at[0] - g0) < 1e-7);
    CHECK(std::abs(at[2] - Complex(0, 1) * g1) < 1e-7);
  }
}
