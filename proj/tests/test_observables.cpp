#include <doctest.h>

#include <numbers>

#include "dirloc/errors.hpp"
#include "dirloc/observables.hpp"

using namespace dirloc;

namespace {

MomentumState state(int n, Vec3 a = Vec3::Zero(), Vec3 v = Vec3::Zero(), SpinLabel s = SpinLabel::Up,
                    double sigma = 1.0) {
  LocalizationLabel l;
  l.a = a;
  l.v = v;
  l.n = n;
  l.spin = s;
  return make_localizing_state(l, sigma);
}

}  // namespace

// Oracle values: numpy tensor Gauss-Legendre integrations in (|p|, cos theta)
// or (r_perp, r_z) with a symbolic (sympy) gradient of the eigenspinor.
TEST_SUITE("observables") {
  TEST_CASE("momentum-space moments against the oracle") {
    const auto m2 = momentum_moments(state(2));
    const auto m4 = momentum_moments(state(4));
    CHECK(m2.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m2.delta_x == doctest::Approx(0.7362237264663469).epsilon(1e-9));
    CHECK(m4.delta_x == doctest::Approx(0.3970191324072046).epsilon(1e-9));
    CHECK(momentum_moments(state(16)).delta_x == doctest::Approx(0.1095996142929095).epsilon(1e-8));
    CHECK(m2.mean_x.norm() < 1e-12);
    CHECK(m2.mean_velocity.norm() < 1e-12);
    const auto shifted = momentum_moments(state(4, Vec3(1, 0, 0)));
    CHECK((shifted.mean_x - Vec3(1, 0, 0)).norm() < 1e-10);
    CHECK(shifted.delta_x == doctest::Approx(m4.delta_x).epsilon(1e-9));
  }

  TEST_CASE("grid moments agree with momentum moments") {
    const auto phi = state(2, Vec3(0.5, 0, 0), Vec3(0, 0, 0.3));
    const auto grid = moments(position_state_cartesian(phi, CartesianGrid::fitted(phi, 64)));
    const auto mom = momentum_moments(phi);
    CHECK(grid.norm == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((grid.mean_x - mom.mean_x).norm() < 1e-6);
    CHECK(grid.delta_x == doctest::Approx(mom.delta_x).epsilon(1e-5));
    CHECK((grid.mean_velocity - mom.mean_velocity).norm() < 1e-8);
  }

  TEST_CASE("mean velocity two ways") {
    for (const Vec3& v : {Vec3(0, 0, 0), Vec3(0, 0, 0.3), Vec3(0.4, -0.2, 0.1)}) {
      const auto f = mean_velocity_two_ways(state(3, Vec3::Zero(), v));
      CHECK((f.spinor_form - f.scalar_form).norm() < 1e-12);
    }
  }

  TEST_CASE("overlap closed form for Gaussians") {
    // |(psi_n, psi'_n)| = exp(-n^2 sigma^2 |a' - a|^2 / 4) for equal spins
    for (int n : {1, 2, 3}) {
      const auto ov = overlap(state(n), state(n, Vec3(2, 0, 0)));
      CHECK(std::abs(ov) == doctest::Approx(std::exp(-n * n)).epsilon(1e-9));
    }
    const auto narrow = overlap(state(8, Vec3::Zero(), Vec3::Zero(), SpinLabel::Up, 0.25),
                               state(8, Vec3(2, 0, 0), Vec3::Zero(), SpinLabel::Up, 0.25));
    CHECK(std::abs(narrow) == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));
    // exp(-256) is zero to roundoff; a fixed 64 x 64 angular rule returned ~5e-3 here
    CHECK(std::abs(overlap(state(16), state(16, Vec3(2, 0, 0)))) < 1e-12);
    CHECK(std::abs(overlap(state(2), state(2, Vec3::Zero(), Vec3::Zero(), SpinLabel::Down))) < 1e-15);
    CHECK(overlap(state(2), state(2)).real() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("R_n against the oracle") {
    const auto f = gaussian_profile(1.0);
    CHECK(convolution_rn(f, 2, Vec3(0, 0, 2), Observable::Identity).real() ==
          doctest::Approx(0.702886920993733).epsilon(1e-8));
    CHECK(convolution_rn(f, 4, Vec3(0, 0, 2), Observable::Identity).real() ==
          doctest::Approx(0.9020444696635492).epsilon(1e-8));
    CHECK(std::abs(convolution_rn(f, 3, Vec3::Zero(), Observable::Identity) - 1.0) < 1e-10);
    const auto b = boosted_gaussian_profile(Vec3(0, 0, 0.5), 1.0);
    CHECK(convolution_rn(b, 2, Vec3::Zero(), Observable::Alpha3).real() ==
          doctest::Approx(0.4620509424042051).epsilon(1e-8));
    CHECK(convolution_rn(b, 4, Vec3(0, 0, 2), Observable::Alpha3).real() ==
          doctest::Approx(0.4487296296320718).epsilon(1e-8));
    CHECK(std::abs(convolution_rn(b, 2, Vec3::Zero(), Observable::Alpha1)) < 1e-12);
  }

  TEST_CASE("R_n doubling check reports non-convergence") {
    const auto f = gaussian_profile(1.0);
    CHECK_THROWS_AS(convolution_rn(f, 2, Vec3(0, 0, 2), Observable::Identity, SpinLabel::Up, {2, 4, 4}, 1e-6),
                    ConvergenceError);
  }

  TEST_CASE("A_n against the oracle and R_n(0) = A_n") {
    const auto b = boosted_gaussian_profile(Vec3(0, 0, 0.5), 1.0);
    CHECK(a_n_limit(b, 1, 2) == doctest::Approx(0.3954371622207505).epsilon(1e-9));
    CHECK(a_n_limit(b, 2, 2) == doctest::Approx(0.46205094240419764).epsilon(1e-9));
    CHECK(a_n_limit(b, 8, 2) == doctest::Approx(0.49696325721588397).epsilon(1e-9));
    CHECK(std::abs(a_n_limit(b, 8, 0)) < 1e-14);
    CHECK(convolution_rn(b, 2, Vec3::Zero(), Observable::Alpha3).real() == doctest::Approx(a_n_limit(b, 2, 2)).epsilon(1e-9));
  }

  TEST_CASE("causality margin, Fourier transform of rho, ball probability") {
    const auto phi = state(2, Vec3::Zero(), Vec3(0.3, 0, 0.2));
    const auto d = four_vector_density(position_state_cartesian(phi, CartesianGrid::fitted(phi, 64)));
    CHECK(causality_margin(d) <= 1e-12);
    CHECK(density_fourier(d, Vec3::Zero()).real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(probability_within(d.grid, d.rho, Vec3::Zero(), 100.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(probability_within(d.grid, d.rho, Vec3::Zero(), 0.0) == 0.0);
  }

  TEST_CASE("shell averages pair field and reference") {
    const CartesianGrid g{8.0, 16};
    std::vector<double> field(g.size());
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 16; ++k) field[g.index(i, j, k)] = g.position(i, j, k).squaredNorm();
    const auto s = shell_average(g, field, Vec3::Zero(), 0.5, 3.0, [](double r) { return r * r; });
    for (std::size_t b = 0; b < s.count.size(); ++b)
      if (s.count[b] > 0) CHECK(s.field_mean[b] == doctest::Approx(s.reference_mean[b]).epsilon(1e-14));
  }
}
