#pragma once

// Momentum-space localizing states
//
//   phi_n(p) = n^{-3/2} f(p/n) u_s(p) exp(-i a.p)
//
// built from a Gaussian profile f with  int |f|^2 = 1  and
// int |f|^2 p/|p| = v,  and the Pryce spin eigenspinor u_s.

#include <array>

#include "dirloc/quadrature.hpp"
#include "dirloc/spinor.hpp"

namespace dirloc {

enum class ProfileKind { Gaussian, BoostedGaussian };

/// f(p) = c exp(-|p - k|^2 / (2 sigma^2)), c = (sigma sqrt(pi))^{-3/2} when normalized.
struct MomentumProfile {
  ProfileKind kind = ProfileKind::Gaussian;
  double sigma = 1.0;
  Vec3 center = Vec3::Zero();
  double amplitude = 0.0;
  Vec3 target_velocity = Vec3::Zero();

  double operator()(const Vec3& p) const {
    return amplitude * std::exp(-(p - center).squaredNorm() / (2.0 * sigma * sigma));
  }
  Vec3 gradient(const Vec3& p) const { return -(p - center) / (sigma * sigma) * (*this)(p); }

  /// f as a function of |p|; only meaningful when the center is zero.
  double radial(double p) const {
    return amplitude * std::exp(-p * p / (2.0 * sigma * sigma));
  }
  bool spherically_symmetric() const { return center.squaredNorm() == 0.0; }

  /// |f|^2 is below 1e-28 of its peak beyond this radius.
  double support_radius() const { return center.norm() + 8.0 * sigma; }

  /// Same shape, amplitude multiplied by `factor` (norm scales by factor^2).
  MomentumProfile scaled(double factor) const {
    MomentumProfile f = *this;
    f.amplitude *= factor;
    return f;
  }
};

MomentumProfile gaussian_profile(double sigma);

/// Gaussian shifted to k = kappa v_hat with kappa >= 0 solved so that the
/// mean direction of |f|^2 equals v_target. |v_target| must not exceed 0.99.
MomentumProfile boosted_gaussian_profile(const Vec3& v_target, double sigma);

/// int |f|^2 p/|p| d^3p for a normalized Gaussian shifted by kappa along an axis,
/// reduced analytically over angles and integrated in |p|.
double gaussian_mean_direction(double kappa, double sigma);

struct ProfileConditions {
  double norm = 0.0;
  Vec3 mean_direction = Vec3::Zero();
};

/// Both profile integrals by 3-D spherical quadrature.
ProfileConditions check_profile_conditions(const MomentumProfile& f);

struct LocalizationLabel {
  Vec3 a = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  SpinLabel spin = SpinLabel::Up;
  int n = 1;

  /// Throws std::invalid_argument unless |v| < 1 and n >= 1.
  void validate() const;
};

/// phi_n(p) for one label and profile, optionally evolved freely to `time`.
class MomentumState {
 public:
  MomentumState(LocalizationLabel label, MomentumProfile profile, double time = 0.0);

  const LocalizationLabel& label() const { return label_; }
  const MomentumProfile& profile() const { return profile_; }
  double time() const { return time_; }

  Spinor4 operator()(const Vec3& p) const;

  /// d phi / d p_k for k = 0..2.
  std::array<Spinor4, 3> gradient(const Vec3& p) const;

  /// Quadrature cutoff n(|k| + 8 sigma).
  double p_max() const { return label_.n * profile_.support_radius(); }
  /// Momentum radius a Cartesian grid must resolve, n(|k| + 6 sigma).
  double p_nyquist() const { return label_.n * (profile_.center.norm() + 6.0 * profile_.sigma); }

  MomentumState evolved(double t) const { return MomentumState(label_, profile_, time_ + t); }

  /// Quadrature nodes adapted to this state (radius p_max, core ~1 in mc units).
  SphericalRule quadrature(const SphericalRuleSpec& spec = {}) const;

 private:
  LocalizationLabel label_;
  MomentumProfile profile_;
  double time_ = 0.0;
};

Spinor4 build_phi(const LocalizationLabel& label, const MomentumProfile& f, const Vec3& p);

/// Profile for `label.v` (plain Gaussian when v = 0) and the resulting state.
MomentumState make_localizing_state(const LocalizationLabel& label, double sigma = 1.0);

}  // namespace dirloc
