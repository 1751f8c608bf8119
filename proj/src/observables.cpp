#include "dirloc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dirloc/errors.hpp"

namespace dirloc {

std::vector<double> density(const PositionState& psi) {
  std::vector<double> rho(psi.grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    rho[i] = std::norm(psi.psi[0][i]) + std::norm(psi.psi[1][i]) + std::norm(psi.psi[2][i]) +
             std::norm(psi.psi[3][i]);
  return rho;
}

// alpha_i couples upper (0,1) and lower (2,3) components through sigma_i:
// psi^dagger alpha_i psi = 2 Re(upper^dagger sigma_i lower).
std::array<std::vector<double>, 3> current(const PositionState& psi) {
  const std::size_t size = psi.grid.size();
  std::array<std::vector<double>, 3> j;
  for (auto& c : j) c.resize(size);
  const auto& c0 = psi.psi[0];
  const auto& c1 = psi.psi[1];
  const auto& c2 = psi.psi[2];
  const auto& c3 = psi.psi[3];
  for (std::size_t i = 0; i < size; ++i) {
    const Complex a = std::conj(c0[i]), b = std::conj(c1[i]);
    // sigma_1 (c2, c3) = (c3, c2); sigma_2 = (-i c3, i c2); sigma_3 = (c2, -c3)
    j[0][i] = 2.0 * (a * c3[i] + b * c2[i]).real();
    j[1][i] = 2.0 * (a * Complex(0, -1) * c3[i] + b * Complex(0, 1) * c2[i]).real();
    j[2][i] = 2.0 * (a * c2[i] - b * c3[i]).real();
  }
  return j;
}

FourVectorDensity four_vector_density(const PositionState& psi) {
  FourVectorDensity d;
  d.grid = psi.grid;
  d.rho = density(psi);
  d.j = current(psi);
  d.time = psi.time;
  return d;
}

double grid_integral(const CartesianGrid& grid, std::span<const double> field) {
  double sum = 0.0;
  for (double v : field) sum += v;
  return sum * grid.cell_volume();
}

MomentSet moments(const FourVectorDensity& d) {
  const auto& g = d.grid;
  const int n = g.points;
  double norm = 0.0, x2 = 0.0;
  Vec3 mx = Vec3::Zero(), vel = Vec3::Zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = g.index(i, j, k);
        const Vec3 x = g.position(i, j, k);
        const double r = d.rho[idx];
        norm += r;
        mx += r * x;
        x2 += r * x.squaredNorm();
        vel += Vec3(d.j[0][idx], d.j[1][idx], d.j[2][idx]);
      }
  MomentSet m;
  m.norm = norm * g.cell_volume();
  m.mean_x = mx / norm;
  m.delta_x = std::sqrt(std::max(0.0, x2 / norm - m.mean_x.squaredNorm()));
  m.mean_velocity = vel / norm;
  return m;
}

MomentSet moments(const PositionState& psi) { return moments(four_vector_density(psi)); }

MomentSet momentum_moments(const MomentumState& phi, const SphericalRuleSpec& spec) {
  const auto rule = phi.quadrature(spec);
  const auto& d = dirac_matrices();
  double norm = 0.0, x2 = 0.0;
  Vec3 mx = Vec3::Zero(), vel = Vec3::Zero();
  rule.for_each([&](const Vec3& p, double w) {
    const Spinor4 v = phi(p);
    const auto g = phi.gradient(p);
    norm += w * v.squaredNorm();
    for (int k = 0; k < 3; ++k) {
      // phi^dagger i d_k phi; the real part is the expectation value
      mx[k] += w * (v.dot(g[k]) * Complex(0.0, 1.0)).real();
      x2 += w * g[k].squaredNorm();
      vel[k] += w * v.dot(d.alpha[k] * v).real();
    }
  });
  MomentSet m;
  m.norm = norm;
  m.mean_x = mx / norm;
  m.delta_x = std::sqrt(std::max(0.0, x2 / norm - m.mean_x.squaredNorm()));
  m.mean_velocity = vel / norm;
  return m;
}

double momentum_norm(const MomentumState& phi, const SphericalRuleSpec& spec) {
  double norm = 0.0;
  phi.quadrature(spec).for_each([&](const Vec3& p, double w) { norm += w * phi(p).squaredNorm(); });
  return norm;
}

VelocityForms mean_velocity_two_ways(const MomentumState& phi, const SphericalRuleSpec& spec) {
  const auto& d = dirac_matrices();
  VelocityForms out;
  phi.quadrature(spec).for_each([&](const Vec3& p, double w) {
    const Spinor4 v = phi(p);
    const double rho = v.squaredNorm();
    for (int k = 0; k < 3; ++k) out.spinor_form[k] += w * v.dot(d.alpha[k] * v).real();
    out.scalar_form += (w * rho / energy(p)) * p;
  });
  return out;
}

Complex overlap(const MomentumState& phi, const MomentumState& phi_prime, const SphericalRuleSpec& spec) {
  const double p_max = std::max(phi.p_max(), phi_prime.p_max());
  // exp(-i (a' - a).p) winds up to |a' - a| p_max radians; the fixed 64 x 64
  // angular rule aliases that badly once n |a' - a| is large
  const double shift = (phi_prime.label().a - phi.label().a).norm();
  const auto edges = momentum_edges(p_max, 1.0);
  double widest = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i) widest = std::max(widest, edges[i] - edges[i - 1]);
  SphericalRuleSpec s = spec;
  const auto angular = static_cast<std::size_t>(std::ceil(shift * p_max)) + 32;
  s.polar = std::max(s.polar, angular);
  s.azimuth = std::max(s.azimuth, angular);
  s.radial_order = std::max(s.radial_order, static_cast<std::size_t>(std::ceil(shift * widest / 2.0)) + 16);
  const auto rule = spherical_rule(edges, s);
  Complex sum{};
  rule.for_each([&](const Vec3& p, double w) { sum += w * phi(p).dot(phi_prime(p)); });
  return sum;
}

const Matrix4& observable_matrix(Observable q) {
  static const Matrix4 identity = Matrix4::Identity();
  const auto& d = dirac_matrices();
  switch (q) {
    case Observable::Alpha1: return d.alpha[0];
    case Observable::Alpha2: return d.alpha[1];
    case Observable::Alpha3: return d.alpha[2];
    case Observable::Identity: break;
  }
  return identity;
}

Complex convolution_rn_single(const MomentumProfile& f, int n, const Vec3& p, Observable q,
                              SpinLabel spin, const SphericalRuleSpec& spec) {
  if (n < 1) throw std::invalid_argument("convolution_rn needs n >= 1");
  const double nd = n;
  const Vec3 shift = p / nd;
  const Matrix4& Q = observable_matrix(q);
  // u varies on the scale 1/n in r near the origin and near r = p/n
  const double r_max = f.support_radius();
  const auto rule = spherical_rule(momentum_edges(r_max, std::min(1.0, 1.0 / nd)), spec);
  Complex sum{};
  rule.for_each([&](const Vec3& r, double w) {
    const double fr = f(r);
    if (fr == 0.0) return;
    const double weight = f(r - shift) * fr;  // f is real for the Gaussian class
    const Spinor4 u_left = spin_eigenspinor(nd * r - p, spin);
    const Spinor4 u_right = spin_eigenspinor(nd * r, spin);
    sum += (w * weight) * u_left.dot(Q * u_right);
  });
  return sum;
}

Complex convolution_rn(const MomentumProfile& f, int n, const Vec3& p, Observable q, SpinLabel spin,
                       const SphericalRuleSpec& spec, double doubling_tol) {
  const Complex coarse = convolution_rn_single(f, n, p, q, spin, spec);
  const Complex fine = convolution_rn_single(f, n, p, q, spin, spec.refined());
  if (std::abs(fine - coarse) > doubling_tol) {
    std::ostringstream msg;
    msg << "convolution_rn: node doubling changed R_" << n << " by " << std::abs(fine - coarse);
    throw ConvergenceError(msg.str());
  }
  return fine;
}

double a_n_limit(const MomentumProfile& f, int n, int axis, const SphericalRuleSpec& spec) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("a_n_limit: axis must be 0, 1 or 2");
  const double m2 = 1.0 / (static_cast<double>(n) * n);
  const auto rule = spherical_rule(momentum_edges(f.support_radius(), 1.0 / n), spec);
  double sum = 0.0;
  rule.for_each([&](const Vec3& r, double w) {
    sum += w * std::pow(f(r), 2) * r[axis] / std::sqrt(r.squaredNorm() + m2);
  });
  return sum;
}

double causality_margin(const FourVectorDensity& d) {
  double margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.rho.size(); ++i) {
    const double jn = std::sqrt(d.j[0][i] * d.j[0][i] + d.j[1][i] * d.j[1][i] + d.j[2][i] * d.j[2][i]);
    margin = std::max(margin, jn - d.rho[i]);
  }
  return margin;
}

Complex density_fourier(const FourVectorDensity& d, const Vec3& p) {
  const auto& g = d.grid;
  const int n = g.points;
  // separable phases
  std::array<std::vector<Complex>, 3> ph;
  for (int axis = 0; axis < 3; ++axis) {
    ph[axis].resize(n);
    for (int i = 0; i < n; ++i) ph[axis][i] = std::polar(1.0, -p[axis] * g.coordinate(i));
  }
  Complex sum{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex pij = ph[0][i] * ph[1][j];
      for (int k = 0; k < n; ++k) sum += d.rho[g.index(i, j, k)] * pij * ph[2][k];
    }
  return sum * g.cell_volume();
}

double probability_within(const CartesianGrid& grid, std::span<const double> rho, const Vec3& center,
                          double radius) {
  const int n = grid.points;
  const double r2 = radius * radius;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if ((grid.position(i, j, k) - center).squaredNorm() < r2) sum += rho[grid.index(i, j, k)];
  return sum * grid.cell_volume();
}

}  // namespace dirloc
