#pragma once

// Momentum space -> position space.
//
// Two routes: a 3-D discrete Fourier transform on a periodic Cartesian grid
// (general states), and a 1-D spherical Bessel reduction for the spherically
// symmetric case a = 0, v = 0.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dirloc/state_builder.hpp"

namespace dirloc {

/// Periodic cube [-L/2, L/2)^3 sampled with N points per axis.
struct CartesianGrid {
  double extent = 16.0;  // L
  int points = 128;      // N

  double spacing() const { return extent / points; }
  double cell_volume() const { return std::pow(spacing(), 3); }
  double momentum_spacing() const;  // 2 pi / L
  double nyquist() const;           // pi N / L
  double coordinate(int j) const { return (j - points / 2) * spacing(); }
  std::size_t size() const {
    return static_cast<std::size_t>(points) * points * points;
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * points + j) * points + k;
  }
  Vec3 position(int i, int j, int k) const { return {coordinate(i), coordinate(j), coordinate(k)}; }

  /// Throws std::invalid_argument unless N >= 8 is a power of two and L > 0.
  void validate() const;

  /// Largest extent (capped at `max_extent`) whose Nyquist radius still covers
  /// the state's momentum support, at N points per axis.
  static CartesianGrid fitted(const MomentumState& state, int points = 128, double max_extent = 16.0);
};

/// Position-space spinor samples psi_a(x) on a Cartesian grid.
struct PositionState {
  CartesianGrid grid;
  std::array<std::vector<Complex>, 4> psi;
  LocalizationLabel label;
  double time = 0.0;

  Spinor4 at(std::size_t idx) const { return {psi[0][idx], psi[1][idx], psi[2][idx], psi[3][idx]}; }
};

/// psi(x) = (2 pi)^{-3/2} int phi(p) exp(i x.p) d^3p by 3-D inverse DFT of phi
/// sampled on the reciprocal grid. Throws NyquistError when pi N / L is below
/// the state's momentum support.
PositionState position_state_cartesian(const MomentumState& state, const CartesianGrid& grid);

/// Spherical Bessel functions of order 0 and 1 (series below x = 0.1).
double spherical_j0(double x);
double spherical_j1(double x);

/// Radial profiles of the upper component (g0) and the lower pair (g1) of psi_n
/// for a spherically symmetric profile, a = 0, v = 0:
///   g0(r) = sqrt(2/pi) int F(p) (E+1)/norm(p) j0(pr) p^2 dp
///   g1(r) = sqrt(2/pi) int F(p) p/norm(p)     j1(pr) p^2 dp,   F(p) = n^{-3/2} f(p/n).
/// psi_1 = g0, psi_3 = i x3/r g1, psi_4 = i (x1 + i x2)/r g1 for spin up.
class RadialTransform {
 public:
  RadialTransform(const MomentumProfile& profile, int n, std::size_t nodes = 2048);

  std::pair<Complex, Complex> components(double r) const;
  double density(double r) const;
  int n() const { return n_; }

 private:
  int n_ = 1;
  std::vector<double> p_, w0_, w1_;
};

std::pair<Complex, Complex> radial_components(const MomentumProfile& profile, int n, double r);

struct RadialGrid {
  std::vector<double> r;

  /// `count` uniform samples on [0, r_max].
  static RadialGrid uniform(double r_max, std::size_t count);
  void validate() const;
};

struct RadialDensityTable {
  RadialGrid grid;
  std::vector<double> rho;
  int n = 1;
};

RadialDensityTable radial_density(const MomentumProfile& profile, int n, const RadialGrid& grid);

/// Scalar summaries of a uniform radial table, computed from the table alone.
struct RadialSummary {
  double norm_table = 0.0;  // int_0^{r_max} 4 pi r^2 rho
  double tail_estimate = 0.0;
  double norm = 0.0;  // table + tail
  double rho0 = 0.0;
  double delta_x = 0.0;  // sqrt(<r^2>) since <x> = 0
  double inside_unit_radius = 0.0;  // probability in r < 1
  double tail_slope = 0.0;  // least-squares slope of log rho on [3, 6] (0 if out of range)
};

RadialSummary summarize(const RadialDensityTable& table);

/// int_0^{r_upper} 4 pi r^2 rho dr on the table (Simpson, trapezoid on a leftover interval,
/// linear interpolation for a partial last interval).
double radial_probability(const RadialDensityTable& table, double r_upper, int moment = 0);

/// Least-squares slope of log rho over [r_lo, r_hi].
double log_density_slope(const RadialDensityTable& table, double r_lo, double r_hi);

/// CSV with header "r,rho"; values printed with 17 significant digits.
std::string to_csv(const RadialDensityTable& table);
RadialDensityTable radial_table_from_csv(const std::string& text, int n);

}  // namespace dirloc
