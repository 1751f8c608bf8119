#include "dirloc/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dirloc/errors.hpp"
#include "fft.hpp"

namespace dirloc {

double CartesianGrid::momentum_spacing() const { return 2.0 * std::numbers::pi / extent; }
double CartesianGrid::nyquist() const { return std::numbers::pi * points / extent; }

void CartesianGrid::validate() const {
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw std::invalid_argument("Cartesian grid extent must be positive");
  if (points < 8 || (points & (points - 1)) != 0)
    throw std::invalid_argument("Cartesian grid needs a power-of-two point count >= 8");
}

CartesianGrid CartesianGrid::fitted(const MomentumState& state, int points, double max_extent) {
  CartesianGrid g{max_extent, points};
  g.extent = std::min(max_extent, std::numbers::pi * points / state.p_nyquist());
  g.validate();
  return g;
}

PositionState position_state_cartesian(const MomentumState& state, const CartesianGrid& grid) {
  grid.validate();
  if (grid.nyquist() < state.p_nyquist()) {
    std::ostringstream msg;
    msg << "grid Nyquist momentum " << grid.nyquist() << " below state support "
        << state.p_nyquist() << " (N=" << grid.points << ", L=" << grid.extent << ")";
    throw NyquistError(msg.str());
  }

  const int n = grid.points;
  const double dp = grid.momentum_spacing();
  // x_j p_k = 2 pi jk / N - pi j - pi k + pi N / 2: the checkerboard sign on both
  // sides centers the DFT; exp(i pi N/2) = 1 because N is a multiple of 4.
  const double scale = std::pow(2.0 * std::numbers::pi, -1.5) * dp * dp * dp;

  PositionState out;
  out.grid = grid;
  out.label = state.label();
  out.time = state.time();
  for (auto& c : out.psi) c.assign(grid.size(), Complex{});

  for (int i = 0; i < n; ++i) {
    const double p1 = (i - n / 2) * dp;
    for (int j = 0; j < n; ++j) {
      const double p2 = (j - n / 2) * dp;
      for (int k = 0; k < n; ++k) {
        const double p3 = (k - n / 2) * dp;
        const double sign = ((i + j + k) % 2 == 0) ? 1.0 : -1.0;
        const Spinor4 phi = state(Vec3(p1, p2, p3));
        const std::size_t idx = grid.index(i, j, k);
        for (int a = 0; a < 4; ++a) out.psi[a][idx] = phi[a] * sign;
      }
    }
  }

  for (auto& comp : out.psi) {
    detail::FftPlan plan(comp.data(), n, n, n, FFTW_BACKWARD);
    plan.execute();
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double sign = ((i + j + k) % 2 == 0) ? scale : -scale;
        const std::size_t idx = grid.index(i, j, k);
        for (auto& comp : out.psi) comp[idx] *= sign;
      }
  return out;
}

double spherical_j0(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return std::sin(x) / x;
}

double spherical_j1(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0))));
  }
  return (std::sin(x) / x - std::cos(x)) / x;
}

RadialTransform::RadialTransform(const MomentumProfile& profile, int n, std::size_t nodes)
    : n_(n) {
  if (!profile.spherically_symmetric())
    throw std::invalid_argument("radial transform needs a spherically symmetric profile");
  if (n < 1) throw std::invalid_argument("radial transform needs n >= 1");
  const double p_max = n * profile.support_radius();
  const auto rule = gauss_legendre(nodes, 0.0, p_max);
  const double pref = std::sqrt(2.0 / std::numbers::pi) * std::pow(static_cast<double>(n), -1.5);
  p_.resize(nodes);
  w0_.resize(nodes);
  w1_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double p = rule.nodes[i];
    const double e = std::sqrt(p * p + 1.0);
    const double norm = std::sqrt(2.0 * e * (e + 1.0));
    const double common = pref * rule.weights[i] * profile.radial(p / n) * p * p / norm;
    p_[i] = p;
    w0_[i] = common * (e + 1.0);
    w1_[i] = common * p;
  }
}

std::pair<Complex, Complex> RadialTransform::components(double r) const {
  if (r < 0.0) throw std::invalid_argument("radial transform needs r >= 0");
  double g0 = 0.0, g1 = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    const double x = p_[i] * r;
    g0 += w0_[i] * spherical_j0(x);
    g1 += w1_[i] * spherical_j1(x);
  }
  return {Complex(g0, 0.0), Complex(g1, 0.0)};
}

double RadialTransform::density(double r) const {
  const auto [g0, g1] = components(r);
  return std::norm(g0) + std::norm(g1);
}

std::pair<Complex, Complex> radial_components(const MomentumProfile& profile, int n, double r) {
  return RadialTransform(profile, n).components(r);
}

RadialGrid RadialGrid::uniform(double r_max, std::size_t count) {
  if (!(r_max > 0.0) || count < 3) throw std::invalid_argument("radial grid needs r_max > 0, count >= 3");
  RadialGrid g;
  g.r.resize(count);
  for (std::size_t i = 0; i < count; ++i) g.r[i] = r_max * static_cast<double>(i) / (count - 1);
  return g;
}

void RadialGrid::validate() const {
  if (r.empty() || r.front() < 0.0) throw std::invalid_argument("radial grid must start at r >= 0");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw std::invalid_argument("radial grid must be strictly increasing");
}

RadialDensityTable radial_density(const MomentumProfile& profile, int n, const RadialGrid& grid) {
  grid.validate();
  const RadialTransform rt(profile, n);
  RadialDensityTable table;
  table.grid = grid;
  table.n = n;
  table.rho.reserve(grid.r.size());
  for (double r : grid.r) table.rho.push_back(rt.density(r));
  return table;
}

namespace {

double moment_integrand(const RadialDensityTable& t, std::size_t i, int moment) {
  const double r = t.grid.r[i];
  return 4.0 * std::numbers::pi * std::pow(r, 2 + moment) * t.rho[i];
}

}  // namespace

double radial_probability(const RadialDensityTable& table, double r_upper, int moment) {
  const auto& r = table.grid.r;
  std::size_t last = 0;  // largest node index with r <= r_upper
  while (last + 1 < r.size() && r[last + 1] <= r_upper) ++last;

  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= last; i += 2) {
    const double h = 0.5 * (r[i + 2] - r[i]);
    sum += h / 3.0 *
           (moment_integrand(table, i, moment) + 4.0 * moment_integrand(table, i + 1, moment) +
            moment_integrand(table, i + 2, moment));
  }
  if (i < last) {
    sum += 0.5 * (r[last] - r[i]) *
           (moment_integrand(table, i, moment) + moment_integrand(table, last, moment));
  }
  if (last + 1 < r.size() && r_upper > r[last]) {
    const double frac = (r_upper - r[last]) / (r[last + 1] - r[last]);
    const double a = moment_integrand(table, last, moment);
    const double b = moment_integrand(table, last + 1, moment);
    const double end = a + frac * (b - a);
    sum += 0.5 * (r_upper - r[last]) * (a + end);
  }
  return sum;
}

double log_density_slope(const RadialDensityTable& table, double r_lo, double r_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < table.rho.size(); ++i) {
    const double r = table.grid.r[i];
    if (r < r_lo || r > r_hi || !(table.rho[i] > 0.0)) continue;
    const double y = std::log(table.rho[i]);
    sx += r;
    sy += y;
    sxx += r * r;
    sxy += r * y;
    ++m;
  }
  if (m < 2) return 0.0;
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

RadialSummary summarize(const RadialDensityTable& table) {
  RadialSummary s;
  const auto& r = table.grid.r;
  const double r_max = r.back();
  s.norm_table = radial_probability(table, r_max, 0);
  s.rho0 = table.rho.front();
  s.inside_unit_radius = radial_probability(table, 1.0, 0);
  s.delta_x = std::sqrt(radial_probability(table, r_max, 2) / s.norm_table);

  // exponential tail beyond r_max with the rate fitted on the last fifth of the table
  const double lambda = -log_density_slope(table, 0.8 * r_max, r_max);
  if (lambda > 0.0) {
    const double rm = r_max;
    s.tail_estimate = 4.0 * std::numbers::pi * table.rho.back() *
                      (rm * rm / lambda + 2.0 * rm / (lambda * lambda) + 2.0 / std::pow(lambda, 3));
  }
  s.norm = s.norm_table + s.tail_estimate;
  if (r_max >= 6.0) s.tail_slope = log_density_slope(table, 3.0, 6.0);
  return s;
}

std::string to_csv(const RadialDensityTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "r,rho\n";
  for (std::size_t i = 0; i < table.rho.size(); ++i) out << table.grid.r[i] << ',' << table.rho[i] << '\n';
  return out.str();
}

RadialDensityTable radial_table_from_csv(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "r,rho")
    throw std::invalid_argument("radial CSV must start with header r,rho");
  RadialDensityTable table;
  table.n = n;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed radial CSV row: " + line);
    table.grid.r.push_back(std::stod(line.substr(0, comma)));
    table.rho.push_back(std::stod(line.substr(comma + 1)));
  }
  table.grid.validate();
  return table;
}

}  // namespace dirloc
