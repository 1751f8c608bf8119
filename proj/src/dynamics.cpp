#include "dirloc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"

namespace dirloc {

MomentumState evolve_free(const MomentumState& phi, double t) { return phi.evolved(t); }

namespace {

double probability_outside(const CartesianGrid& grid, std::span<const double> rho, const Vec3& center,
                           double radius) {
  double total = 0.0;
  for (double v : rho) total += v;
  return total * grid.cell_volume() - probability_within(grid, rho, center, radius);
}

}  // namespace

double lightcone_leakage(const CartesianGrid& grid, std::span<const double> rho0,
                         std::span<const double> rho_t, const Vec3& center, double r0, double t) {
  if (t < 0.0) throw std::invalid_argument("lightcone_leakage needs t >= 0");
  if (rho0.size() != grid.size() || rho_t.size() != grid.size())
    throw std::invalid_argument("lightcone_leakage: fields do not match the grid");
  return probability_outside(grid, rho_t, center, r0 + t) - probability_outside(grid, rho0, center, r0);
}

double EvolutionReport::norm_drift() const {
  double drift = 0.0;
  for (const auto& s : samples) drift = std::max(drift, std::abs(s.norm - samples.front().norm));
  return drift;
}

EvolutionReport evolve_report(const MomentumState& phi, const CartesianGrid& grid,
                              std::span<const double> times, double r0,
                              const std::function<void(const FourVectorDensity&)>& on_density) {
  EvolutionReport report;
  report.label = phi.label();
  report.grid = grid;
  report.r0 = r0;
  const Vec3 center = phi.label().a;
  const std::vector<double> rho0 = density(position_state_cartesian(phi, grid));
  for (double t : times) {
    if (t < 0.0) throw std::invalid_argument("evolve_report: times must be >= 0");
    const FourVectorDensity d = four_vector_density(position_state_cartesian(evolve_free(phi, t), grid));
    const MomentSet m = moments(d);
    EvolutionSample s;
    s.time = t;
    s.norm = m.norm;
    s.mean_x = m.mean_x;
    s.delta_x = m.delta_x;
    s.mean_velocity = m.mean_velocity;
    s.causality_margin = causality_margin(d);
    s.leakage = lightcone_leakage(grid, rho0, d.rho, center, r0, t);
    report.samples.push_back(s);
    if (on_density) on_density(d);
  }
  return report;
}

std::string density_slice_csv(const FourVectorDensity& d, double z) {
  const auto& g = d.grid;
  int plane = 0;
  for (int k = 1; k < g.points; ++k)
    if (std::abs(g.coordinate(k) - z) < std::abs(g.coordinate(plane) - z)) plane = k;
  std::ostringstream out;
  out.precision(17);
  out << "x,y,rho,j1,j2,j3\n";
  for (int i = 0; i < g.points; ++i)
    for (int j = 0; j < g.points; ++j) {
      const std::size_t idx = g.index(i, j, plane);
      out << g.coordinate(i) << ',' << g.coordinate(j) << ',' << d.rho[idx] << ',' << d.j[0][idx] << ','
          << d.j[1][idx] << ',' << d.j[2][idx] << '\n';
    }
  return out.str();
}

void NRPacketParams::validate() const {
  if (n < 1) throw std::invalid_argument("NR packet needs n >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("NR packet needs sigma > 0");
}

Complex nr_gaussian_state(const NRPacketParams& params, const Vec3& q) {
  const double n = params.n, s = params.sigma;
  const double amp = std::pow(n / (s * std::sqrt(std::numbers::pi)), 1.5);
  return amp * std::exp(-n * n * (q - params.a).squaredNorm() / (2.0 * s * s)) *
         std::polar(1.0, params.v.dot(q));
}

double nr_density_analytic(const NRPacketParams& params, const Vec3& q, double t) {
  if (t < 0.0) throw std::invalid_argument("nr_density_analytic needs t >= 0");
  const double n = params.n, s = params.sigma;
  const double s4 = std::pow(s, 4);
  const double spread = s4 + std::pow(n, 4) * t * t;
  const double pref = n * n * n * s * s * s / std::pow(std::numbers::pi * spread, 1.5);
  const Vec3 c = params.a + params.v * t;
  return pref * std::exp(-n * n * s * s * (q - c).squaredNorm() / spread);
}

double nr_width(const NRPacketParams& params, double t) {
  const double n = params.n, s = params.sigma;
  const double s2 = (std::pow(s, 4) + std::pow(n, 4) * t * t) / (n * n * s * s);
  return std::sqrt(1.5 * s2);
}

std::array<std::vector<double>, 3> nr_current(const ScalarField& chi) {
  const int n = chi.points;
  if (n < 3) throw std::invalid_argument("nr_current needs at least 3 points per axis");
  const double h = chi.spacing;
  std::array<std::vector<double>, 3> j;
  for (auto& c : j) c.assign(chi.values.size(), 0.0);

  auto at = [&](int axis, int i, int jj, int k, int offset) -> Complex {
    std::array<int, 3> idx{i, jj, k};
    idx[axis] += offset;
    return chi.values[chi.index(idx[0], idx[1], idx[2])];
  };

  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        const std::array<int, 3> pos{i, jj, k};
        const std::size_t idx = chi.index(i, jj, k);
        const Complex c = chi.values[idx];
        for (int axis = 0; axis < 3; ++axis) {
          Complex d;
          if (pos[axis] == 0) {
            d = (-3.0 * c + 4.0 * at(axis, i, jj, k, 1) - at(axis, i, jj, k, 2)) / (2.0 * h);
          } else if (pos[axis] == n - 1) {
            d = (3.0 * c - 4.0 * at(axis, i, jj, k, -1) + at(axis, i, jj, k, -2)) / (2.0 * h);
          } else {
            d = (at(axis, i, jj, k, 1) - at(axis, i, jj, k, -1)) / (2.0 * h);
          }
          j[axis][idx] = (std::conj(c) * d).imag();
        }
      }
  return j;
}

double nr_current_max_error(const NRPacketParams& params, double half_width, int points) {
  params.validate();
  if (points < 3) throw std::invalid_argument("nr_current_max_error needs at least 3 points");
  const double h = 2.0 * half_width / (points - 1);
  const Vec3 origin = params.a - Vec3::Constant(half_width);
  const auto chi = ScalarField::sample(origin, h, points, [&](const Vec3& q) { return nr_gaussian_state(params, q); });
  const auto j = nr_current(chi);
  double err = 0.0;
  for (std::size_t i = 0; i < chi.values.size(); ++i) {
    const double rho = std::norm(chi.values[i]);
    for (int axis = 0; axis < 3; ++axis) err = std::max(err, std::abs(j[axis][i] - params.v[axis] * rho));
  }
  return err;
}

Complex nr_green(const Vec3& q, const Vec3& a, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("nr_green needs t > 0");
  const Complex pref = std::pow(Complex(0.0, 2.0 * std::numbers::pi * t), -1.5);
  return pref * std::polar(1.0, (q - a).squaredNorm() / (2.0 * t));
}

Complex nr_green_convolution(const NRPacketParams& params, const Vec3& q, double t, int nodes) {
  params.validate();
  const double half = 8.0 * params.sigma / params.n;
  std::array<QuadratureRule1D, 3> rules;
  for (int axis = 0; axis < 3; ++axis)
    rules[axis] = gauss_legendre(nodes, params.a[axis] - half, params.a[axis] + half);
  Complex sum{};
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      for (int k = 0; k < nodes; ++k) {
        const Vec3 qp(rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k]);
        const double w = rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[k];
        sum += w * nr_green(q, qp, t) * nr_gaussian_state(params, qp);
      }
  return sum;
}

namespace {

int next_pow2(double x) {
  int n = 64;
  while (n < x) n *= 2;
  return n;
}

}  // namespace

NRSpectralEvolution nr_spectral_evolve(const NRPacketParams& params, double t) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("nr_spectral_evolve needs t >= 0");
  const double n = params.n, s = params.sigma;
  const double s0 = s / n;  // initial amplitude width
  const double st = s0 * std::sqrt(1.0 + t * t / std::pow(s0, 4));
  const double amp1d = std::pow(n / (s * std::sqrt(std::numbers::pi)), 0.5);

  NRSpectralEvolution out;
  out.time = t;
  for (int axis = 0; axis < 3; ++axis) {
    const double a = params.a[axis], v = params.v[axis];
    SpectralLine& line = out.axes[axis];
    // amplitude exp(-x^2 / 2 s^2) < 1e-12 beyond 7.5 s on either end of the path
    line.center = a + 0.5 * v * t;
    line.extent = std::abs(v) * t + 2.0 * 7.5 * std::max(s0, st);
    line.points = next_pow2(line.extent * (std::abs(v) + 9.0 / s0) / std::numbers::pi);
    const int np = line.points;
    line.values.resize(np);
    for (int i = 0; i < np; ++i) {
      const double x = line.coordinate(i);
      line.values[i] = amp1d * std::exp(-(x - a) * (x - a) / (2.0 * s0 * s0)) * std::polar(1.0, v * x);
    }
    detail::FftPlan forward(line.values.data(), np, FFTW_FORWARD);
    detail::FftPlan backward(line.values.data(), np, FFTW_BACKWARD);
    forward.execute();
    const double dk = 2.0 * std::numbers::pi / line.extent;
    for (int m = 0; m < np; ++m) {
      const double k = (m < np / 2 ? m : m - np) * dk;
      line.values[m] *= std::polar(1.0 / np, -0.5 * k * k * t);
    }
    backward.execute();
  }
  return out;
}

double nr_spectral_max_error(const NRPacketParams& params, double t, int max_per_axis) {
  const auto evo = nr_spectral_evolve(params, t);
  std::array<int, 3> stride;
  for (int axis = 0; axis < 3; ++axis)
    stride[axis] = std::max(1, evo.axes[axis].points / max_per_axis);
  double err = 0.0;
  for (int i = 0; i < evo.axes[0].points; i += stride[0])
    for (int j = 0; j < evo.axes[1].points; j += stride[1])
      for (int k = 0; k < evo.axes[2].points; k += stride[2]) {
        const Vec3 q(evo.axes[0].coordinate(i), evo.axes[1].coordinate(j), evo.axes[2].coordinate(k));
        err = std::max(err, std::abs(std::norm(evo.value(i, j, k)) - nr_density_analytic(params, q, t)));
      }
  return err;
}

}  // namespace dirloc
