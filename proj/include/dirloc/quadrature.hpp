#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dirloc/spinor.hpp"

namespace dirloc {

struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes on [-1, 1] are cached per n.
QuadratureRule1D gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre rule: `order` points on each panel [edges[i], edges[i+1]].
QuadratureRule1D composite_gauss_legendre(const std::vector<double>& edges, std::size_t order);

/// Panel edges on [0, r_max]: geometric from `first` (doubling) until `max_width`,
/// then uniform panels of width at most `max_width`.
std::vector<double> graded_edges(double r_max, double first, double max_width);

/// Node counts of a spherical product rule.
struct SphericalRuleSpec {
  std::size_t radial_order = 16;
  std::size_t polar = 64;    // Gauss-Legendre in cos(theta)
  std::size_t azimuth = 64;  // trapezoid in phi (exact for trigonometric polynomials)

  SphericalRuleSpec refined() const {
    SphericalRuleSpec s = *this;
    s.radial_order *= 2;
    s.polar *= 2;
    s.azimuth *= 2;
    return s;
  }
};

/// Product rule for integrals over a ball centered at the origin: composite
/// Gauss-Legendre in r x Gauss-Legendre in cos(theta) x uniform azimuth.
/// Stored factored; `for_each` visits (point, weight) with r^2 folded into the weight.
struct SphericalRule {
  QuadratureRule1D radial;
  QuadratureRule1D polar;
  std::vector<double> cos_phi, sin_phi;
  double dphi = 0.0;

  std::size_t size() const { return radial.size() * polar.size() * cos_phi.size(); }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double r = radial.nodes[i];
      const double wr = radial.weights[i] * r * r * dphi;
      for (std::size_t j = 0; j < polar.size(); ++j) {
        const double mu = polar.nodes[j];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        const double w = wr * polar.weights[j];
        for (std::size_t k = 0; k < cos_phi.size(); ++k)
          fn(Vec3(r * st * cos_phi[k], r * st * sin_phi[k], r * mu), w);
      }
    }
  }
};

SphericalRule spherical_rule(const std::vector<double>& radial_edges, const SphericalRuleSpec& spec);

/// Default radial panelling for momentum integrands with a kink-free core of size
/// `core` at the origin and support radius r_max.
std::vector<double> momentum_edges(double r_max, double core);

}  // namespace dirloc
