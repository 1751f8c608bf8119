#pragma once

// Free evolution of positive-energy states and the nonrelativistic
// comparison suite (Gaussian localizing states, spreading, Green function).

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dirloc/observables.hpp"

namespace dirloc {

/// phi_t(p) = exp(-i E(p) t) phi(p).
MomentumState evolve_free(const MomentumState& phi, double t);

/// P(|x - center| >= r0 + t at time t) - P(|x - center| >= r0 at time 0).
/// Causal evolution keeps this at or below the grid discretization error.
double lightcone_leakage(const CartesianGrid& grid, std::span<const double> rho0,
                         std::span<const double> rho_t, const Vec3& center, double r0, double t);

struct EvolutionSample {
  double time = 0.0;
  double norm = 0.0;
  Vec3 mean_x = Vec3::Zero();
  double delta_x = 0.0;
  Vec3 mean_velocity = Vec3::Zero();
  double causality_margin = 0.0;
  double leakage = 0.0;
};

struct EvolutionReport {
  LocalizationLabel label;
  CartesianGrid grid;
  double r0 = 3.0;
  std::vector<EvolutionSample> samples;

  /// max |norm(t) - norm(t_first)| over the samples.
  double norm_drift() const;
};

/// Evolves on `grid` and records moments, causality margin and leakage (sphere
/// around label.a) at each time. `on_density` (if set) sees every sampled field.
EvolutionReport evolve_report(
    const MomentumState& phi, const CartesianGrid& grid, std::span<const double> times, double r0,
    const std::function<void(const FourVectorDensity&)>& on_density = {});

/// CSV "x,y,rho,j1,j2,j3" for the grid plane through the point closest to z.
std::string density_slice_csv(const FourVectorDensity& d, double z);

// ---------------------------------------------------------------------------
// Nonrelativistic comparison (m = hbar = 1)

struct NRPacketParams {
  int n = 1;
  double sigma = 1.0;
  Vec3 a = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  void validate() const;
};

/// chi_n(q) = (n / sigma sqrt(pi))^{3/2} exp(-n^2 (q - a)^2 / 2 sigma^2) exp(i v.q).
Complex nr_gaussian_state(const NRPacketParams& params, const Vec3& q);

/// Closed-form |chi_n(q, t)|^2 = n^3 sigma^3 / [pi (sigma^4 + n^4 t^2)]^{3/2}
///   exp(-n^2 sigma^2 (q - a - v t)^2 / (sigma^4 + n^4 t^2)).
double nr_density_analytic(const NRPacketParams& params, const Vec3& q, double t);

/// RMS radius sqrt(<|q - <q>|^2>) of the closed-form density at time t.
double nr_width(const NRPacketParams& params, double t);

/// Complex scalar field sampled on an open (non-periodic) cube.
struct ScalarField {
  Vec3 origin = Vec3::Zero();  // position of index (0,0,0)
  double spacing = 0.1;
  int points = 16;
  std::vector<Complex> values;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * points + j) * points + k;
  }
  Vec3 position(int i, int j, int k) const { return origin + spacing * Vec3(i, j, k); }

  template <class Fn>
  static ScalarField sample(const Vec3& origin, double spacing, int points, Fn&& fn) {
    ScalarField f{origin, spacing, points, {}};
    f.values.resize(static_cast<std::size_t>(points) * points * points);
    for (int i = 0; i < points; ++i)
      for (int j = 0; j < points; ++j)
        for (int k = 0; k < points; ++k) f.values[f.index(i, j, k)] = fn(f.position(i, j, k));
    return f;
  }
};

/// j = -(i/2)(chi* grad chi - chi grad chi*) = Im(chi* grad chi), second-order
/// centered differences inside, second-order one-sided stencils on the faces.
std::array<std::vector<double>, 3> nr_current(const ScalarField& chi);

/// max |j_k - v_k |chi_n|^2| over a cube of `points`^3 samples with half-width
/// `half_width` around a (t = 0, where the exact current is v |chi_n|^2).
double nr_current_max_error(const NRPacketParams& params, double half_width, int points);

/// G(q, t) = (1 / 2 pi i t)^{3/2} exp(i (q - a)^2 / 2t), t > 0.
Complex nr_green(const Vec3& q, const Vec3& a, double t);

/// int G(q - q', t) chi_n(q', 0) d^3q' by tensor Gauss-Legendre on a cube
/// of half-width 9 sigma/n around a (`nodes` per axis).
Complex nr_green_convolution(const NRPacketParams& params, const Vec3& q, double t, int nodes = 96);

/// One axis of a separable spectral evolution: periodic grid of `points`
/// samples on [center - extent/2, center + extent/2).
struct SpectralLine {
  double center = 0.0;
  double extent = 10.0;
  int points = 256;
  std::vector<Complex> values;

  double coordinate(int i) const { return center + (i - points / 2) * (extent / points); }
};

/// chi_n(q, t) on a tensor-product grid: each axis factor evolved by FFT,
/// multiplication with exp(-i k^2 t / 2), inverse FFT. The Gaussian chi_n is a
/// product of 1-D factors, and so is its free evolution.
struct NRSpectralEvolution {
  std::array<SpectralLine, 3> axes;
  double time = 0.0;

  Complex value(int i, int j, int k) const {
    return axes[0].values[i] * axes[1].values[j] * axes[2].values[k];
  }
};

/// Grid per axis sized from the packet: the box holds the evolved packet to
/// 1e-12 relative amplitude and the Nyquist momentum covers |v| + 9 n/sigma.
NRSpectralEvolution nr_spectral_evolve(const NRPacketParams& params, double t);

/// Max |spectral density - closed form| over the evolved grid, sampled with
/// at most `max_per_axis` points per axis.
double nr_spectral_max_error(const NRPacketParams& params, double t, int max_per_axis = 64);

}  // namespace dirloc
