#include "dirloc/state_builder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirloc/errors.hpp"

namespace dirloc {

namespace {

double gaussian_amplitude(double sigma) {
  return std::pow(sigma * std::sqrt(std::numbers::pi), -1.5);
}

}  // namespace

MomentumProfile gaussian_profile(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("gaussian_profile: width must be positive");
  MomentumProfile f;
  f.kind = ProfileKind::Gaussian;
  f.sigma = sigma;
  f.amplitude = gaussian_amplitude(sigma);
  return f;
}

double gaussian_mean_direction(double kappa, double sigma) {
  if (kappa <= 0.0) return 0.0;
  const double s2 = sigma * sigma;
  const double pref = 2.0 * std::numbers::pi * std::pow(std::numbers::pi * s2, -1.5);
  const auto rule =
      composite_gauss_legendre(graded_edges(kappa + 10.0 * sigma, 0.25 * sigma, 0.5 * sigma), 16);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double p = rule.nodes[i];
    const double b = 2.0 * kappa * p / s2;
    double angular;  // exp(-(p^2 + kappa^2)/s2) * int_{-1}^{1} mu exp(b mu) dmu
    if (b < 1e-3) {
      angular = (2.0 * b / 3.0 + b * b * b / 15.0) * std::exp(-(p * p + kappa * kappa) / s2);
    } else {
      angular = ((b - 1.0) * std::exp(-(p - kappa) * (p - kappa) / s2) +
                 (b + 1.0) * std::exp(-(p + kappa) * (p + kappa) / s2)) /
                (b * b);
    }
    sum += rule.weights[i] * p * p * angular;
  }
  return pref * sum;
}

MomentumProfile boosted_gaussian_profile(const Vec3& v_target, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("boosted_gaussian_profile: width must be positive");
  const double speed = v_target.norm();
  if (!(speed < 1.0)) throw std::invalid_argument("boosted_gaussian_profile: |v| must be < 1");
  if (speed > 0.99)
    throw std::invalid_argument("boosted_gaussian_profile: |v| > 0.99 needs an unbounded shift");
  if (speed == 0.0) {
    MomentumProfile f = gaussian_profile(sigma);
    f.kind = ProfileKind::BoostedGaussian;
    return f;
  }

  // mean direction is increasing in kappa; bracket then bisect
  double lo = 0.0, hi = sigma;
  int grow = 0;
  while (gaussian_mean_direction(hi, sigma) < speed) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 60) throw ConvergenceError("boosted_gaussian_profile: could not bracket shift");
  }
  constexpr int max_iter = 100;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_mean_direction(mid, sigma) < speed)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * hi) break;
  }
  const double kappa = 0.5 * (lo + hi);
  if (iter == max_iter || std::abs(gaussian_mean_direction(kappa, sigma) - speed) > 1e-9)
    throw ConvergenceError("boosted_gaussian_profile: root-finder did not converge in 100 iterations");

  MomentumProfile f;
  f.kind = ProfileKind::BoostedGaussian;
  f.sigma = sigma;
  f.center = kappa * v_target / speed;
  f.amplitude = gaussian_amplitude(sigma);
  f.target_velocity = v_target;
  return f;
}

ProfileConditions check_profile_conditions(const MomentumProfile& f) {
  SphericalRuleSpec spec;
  const double spread = f.center.norm() / f.sigma;
  spec.polar = std::max<std::size_t>(64, static_cast<std::size_t>(16.0 * spread));
  spec.azimuth = 32;
  const auto rule = spherical_rule(momentum_edges(f.support_radius(), 0.5 * f.sigma), spec);
  ProfileConditions out;
  rule.for_each([&](const Vec3& p, double w) {
    const double f2 = std::pow(f(p), 2);
    out.norm += w * f2;
    const double pn = p.norm();
    if (pn > 0.0) out.mean_direction += (w * f2 / pn) * p;
  });
  return out;
}

void LocalizationLabel::validate() const {
  if (!a.allFinite() || !v.allFinite())
    throw std::invalid_argument("localization label has non-finite components");
  if (!(v.norm() < 1.0)) throw std::invalid_argument("localization label needs |v| < 1");
  if (n < 1) throw std::invalid_argument("localization label needs n >= 1");
}

MomentumState::MomentumState(LocalizationLabel label, MomentumProfile profile, double time)
    : label_(std::move(label)), profile_(std::move(profile)), time_(time) {
  label_.validate();
}

Spinor4 build_phi(const LocalizationLabel& label, const MomentumProfile& f, const Vec3& p) {
  const double n = label.n;
  const double amp = std::pow(n, -1.5) * f(p / n);
  const Complex phase = std::polar(1.0, -label.a.dot(p));
  return spin_eigenspinor(p, label.spin) * (amp * phase);
}

Spinor4 MomentumState::operator()(const Vec3& p) const {
  Spinor4 phi = build_phi(label_, profile_, p);
  if (time_ != 0.0) phi *= std::polar(1.0, -energy(p) * time_);
  return phi;
}

std::array<Spinor4, 3> MomentumState::gradient(const Vec3& p) const {
  const double n = label_.n;
  const double scale = std::pow(n, -1.5);
  const Vec3 r = p / n;
  const double f = profile_(r);
  const Vec3 df = profile_.gradient(r) / n;
  const Spinor4 u = spin_eigenspinor(p, label_.spin);
  const auto du = spin_eigenspinor_gradient(p, label_.spin);
  const double e = energy(p);
  const Complex phase = std::polar(1.0, -label_.a.dot(p) - e * time_);
  std::array<Spinor4, 3> g;
  for (int k = 0; k < 3; ++k) {
    // d/dp_k of the phase exp(-i a.p - i E t) is -i (a_k + t p_k / E)
    const Complex dphase(0.0, -(label_.a[k] + time_ * p[k] / e));
    g[k] = (u * df[k] + du[k] * f + u * (f * dphase)) * (scale * phase);
  }
  return g;
}

SphericalRule MomentumState::quadrature(const SphericalRuleSpec& spec) const {
  return spherical_rule(momentum_edges(p_max(), 1.0), spec);
}

MomentumState make_localizing_state(const LocalizationLabel& label, double sigma) {
  label.validate();
  const MomentumProfile f =
      label.v.norm() == 0.0 ? gaussian_profile(sigma) : boosted_gaussian_profile(label.v, sigma);
  return MomentumState(label, f);
}

}  // namespace dirloc
