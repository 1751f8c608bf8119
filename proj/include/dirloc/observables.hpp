#pragma once

// Observable densities, moments, overlaps and the momentum-space convolution
// R_n(p) whose limit certifies delta-convergence of (rho, j).

#include <array>
#include <span>
#include <vector>

#include "dirloc/transform.hpp"

namespace dirloc {

/// (rho, j) sampled on a Cartesian grid, c = 1.
struct FourVectorDensity {
  CartesianGrid grid;
  std::vector<double> rho;
  std::array<std::vector<double>, 3> j;
  double time = 0.0;
};

/// rho(x) = psi^dagger psi.
std::vector<double> density(const PositionState& psi);
/// j_i(x) = psi^dagger alpha_i psi.
std::array<std::vector<double>, 3> current(const PositionState& psi);
FourVectorDensity four_vector_density(const PositionState& psi);

/// Riemann sum of a grid field times the cell volume.
double grid_integral(const CartesianGrid& grid, std::span<const double> field);

struct MomentSet {
  double norm = 0.0;
  Vec3 mean_x = Vec3::Zero();
  double delta_x = 0.0;
  Vec3 mean_velocity = Vec3::Zero();
};

/// Grid moments: <x> = int x rho, Delta_x^2 = <|x|^2> - |<x>|^2, <xdot> = int j,
/// each divided by the grid norm.
MomentSet moments(const FourVectorDensity& d);
MomentSet moments(const PositionState& psi);

/// The same moments from momentum space: <x_k> = int phi^dagger i d_k phi,
/// <|x|^2> = sum_k int |d_k phi|^2, <xdot> = int phi^dagger alpha phi.
MomentSet momentum_moments(const MomentumState& phi, const SphericalRuleSpec& spec = {});

double momentum_norm(const MomentumState& phi, const SphericalRuleSpec& spec = {});

struct VelocityForms {
  Vec3 spinor_form = Vec3::Zero();  // int phi^dagger alpha phi
  Vec3 scalar_form = Vec3::Zero();  // int (p / E) phi^dagger phi
};

/// Both sides of <xdot> = <p / E> on one shared quadrature.
VelocityForms mean_velocity_two_ways(const MomentumState& phi, const SphericalRuleSpec& spec = {});

/// (phi, phi') = int phi^dagger phi' d^3p. Node counts grow with n |a' - a| to resolve the phase.
Complex overlap(const MomentumState& phi, const MomentumState& phi_prime,
                const SphericalRuleSpec& spec = {});

enum class Observable { Identity, Alpha1, Alpha2, Alpha3 };

const Matrix4& observable_matrix(Observable q);

/// R_n(p) = int f*(r - p/n) f(r) u^dagger(n r - p) Q u(n r) d^3r, integrated by
/// spherical Gauss-Legendre at `spec` and at `spec.refined()`. Throws
/// ConvergenceError when the two disagree by more than `doubling_tol`.
Complex convolution_rn(const MomentumProfile& f, int n, const Vec3& p, Observable q,
                       SpinLabel spin = SpinLabel::Up, const SphericalRuleSpec& spec = {},
                       double doubling_tol = 1e-6);

/// One evaluation of R_n(p) without the doubling check.
Complex convolution_rn_single(const MomentumProfile& f, int n, const Vec3& p, Observable q,
                              SpinLabel spin, const SphericalRuleSpec& spec);

/// A_n = int |f(r)|^2 r_i / sqrt(|r|^2 + 1/n^2) d^3r (i = 0..2).
double a_n_limit(const MomentumProfile& f, int n, int axis, const SphericalRuleSpec& spec = {});

/// max over the grid of |j(x)| - rho(x); causal flow requires this to be <= 0.
double causality_margin(const FourVectorDensity& d);

/// int rho(x) exp(-i p.x) d^3x by direct sum over the grid.
Complex density_fourier(const FourVectorDensity& d, const Vec3& p);

/// Probability in the ball |x - center| < radius (grid sum).
double probability_within(const CartesianGrid& grid, std::span<const double> rho, const Vec3& center,
                          double radius);

/// Shell averages of a grid field around `center`, paired with the average of a
/// reference radial function over the same grid points.
struct ShellAverages {
  std::vector<double> r_mean;
  std::vector<double> field_mean;
  std::vector<double> reference_mean;
  std::vector<std::size_t> count;
};

template <class RadialFn>
ShellAverages shell_average(const CartesianGrid& grid, std::span<const double> field,
                            const Vec3& center, double shell_width, double r_max,
                            RadialFn&& reference) {
  const auto shells = static_cast<std::size_t>(std::ceil(r_max / shell_width));
  ShellAverages s;
  s.r_mean.assign(shells, 0.0);
  s.field_mean.assign(shells, 0.0);
  s.reference_mean.assign(shells, 0.0);
  s.count.assign(shells, 0);
  const int n = grid.points;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double r = (grid.position(i, j, k) - center).norm();
        if (r >= r_max) continue;
        const auto b = static_cast<std::size_t>(r / shell_width);
        s.r_mean[b] += r;
        s.field_mean[b] += field[grid.index(i, j, k)];
        s.reference_mean[b] += reference(r);
        ++s.count[b];
      }
  for (std::size_t b = 0; b < shells; ++b) {
    if (s.count[b] == 0) continue;
    const double c = static_cast<double>(s.count[b]);
    s.r_mean[b] /= c;
    s.field_mean[b] /= c;
    s.reference_mean[b] /= c;
  }
  return s;
}

}  // namespace dirloc
