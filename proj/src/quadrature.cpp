#include "dirloc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dirloc {

namespace {

// Newton iteration on P_n with the three-term recurrence; Tricomi initial guess.
QuadratureRule1D legendre_reference(std::size_t n) {
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const QuadratureRule1D& cached_reference(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, QuadratureRule1D> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, legendre_reference(n)).first;
  return it->second;
}

}  // namespace

QuadratureRule1D gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  if (n == 1) return {{0.5 * (a + b)}, {b - a}};
  const auto& ref = cached_reference(n);
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

QuadratureRule1D composite_gauss_legendre(const std::vector<double>& edges, std::size_t order) {
  if (edges.size() < 2) throw std::invalid_argument("composite rule needs at least one panel");
  QuadratureRule1D rule;
  rule.nodes.reserve((edges.size() - 1) * order);
  rule.weights.reserve((edges.size() - 1) * order);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto panel = gauss_legendre(order, edges[i], edges[i + 1]);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

std::vector<double> graded_edges(double r_max, double first, double max_width) {
  if (!(r_max > 0.0) || !(first > 0.0) || !(max_width > 0.0))
    throw std::invalid_argument("graded_edges: nonpositive extent");
  std::vector<double> edges{0.0};
  double width = std::min(first, max_width);
  double r = 0.0;
  while (r < r_max) {
    r = std::min(r + width, r_max);
    edges.push_back(r);
    width = std::min(2.0 * width, max_width);
  }
  return edges;
}

std::vector<double> momentum_edges(double r_max, double core) {
  return graded_edges(r_max, std::min(core, r_max), std::max(core, r_max / 8.0));
}

SphericalRule spherical_rule(const std::vector<double>& radial_edges, const SphericalRuleSpec& spec) {
  SphericalRule rule;
  rule.radial = composite_gauss_legendre(radial_edges, spec.radial_order);
  rule.polar = gauss_legendre(spec.polar, -1.0, 1.0);
  const std::size_t nphi = spec.azimuth;
  rule.dphi = 2.0 * std::numbers::pi / static_cast<double>(nphi);
  rule.cos_phi.resize(nphi);
  rule.sin_phi.resize(nphi);
  for (std::size_t k = 0; k < nphi; ++k) {
    const double phi = (static_cast<double>(k) + 0.5) * rule.dphi;
    rule.cos_phi[k] = std::cos(phi);
    rule.sin_phi[k] = std::sin(phi);
  }
  return rule;
}

}  // namespace dirloc
