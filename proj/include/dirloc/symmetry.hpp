#pragma once

// Poincare transformations of localization labels and of the limiting point
// densities (1, v) delta(x - a), plus the field-level check of the boost law.

#include <span>
#include <vector>

#include "dirloc/observables.hpp"

namespace dirloc {

using Matrix3 = Eigen::Matrix3d;

// Label maps. The spin label is carried through unchanged: how it should
// transform under rotations and boosts is left open.
LocalizationLabel translate(const LocalizationLabel& label, const Vec3& b);
/// Throws std::invalid_argument unless R^T R = I and det R = 1 (to 1e-12).
LocalizationLabel rotate(const LocalizationLabel& label, const Matrix3& R);
LocalizationLabel parity(const LocalizationLabel& label);
LocalizationLabel time_reverse(const LocalizationLabel& label);

/// Rotation by `angle` about coordinate axis `axis` (0, 1, 2).
Matrix3 axis_rotation(int axis, double angle);

struct BoostParams {
  double rapidity = 0.0;  // boost along the 3-axis
};

/// Classical point source: charge `weight` passing through the event
/// (time, point) with velocity v, described on the slice
/// t = x3 tanh(hyperplane_rapidity) + const through that event.
struct PointDensityLimit {
  double weight = 1.0;
  double time = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double hyperplane_rapidity = 0.0;

  /// Coefficients (rho, j1, j2, j3) of delta^3 on the slice:
  /// weight (1, v) / (1 - v3 tanh(eta)). For eta = 0 this is weight (1, v).
  Eigen::Vector4d four_current() const;

  static PointDensityLimit from_label(const LocalizationLabel& label);
};

/// Relativistic addition of a 3-axis boost to v:
/// v' = (v1, v2, v3 cosh s + sinh s) / (cosh s + v3 sinh s).
Vec3 boost_velocity(const Vec3& v, double rapidity);

/// Event (t, x) -> (t cosh s + x3 sinh s, x1, x2, x3 cosh s + t sinh s),
/// velocity by boost_velocity, slice rapidity increased by s. At t = 0 the
/// point goes to (a1, a2, a3 cosh s) on the slice t' = x3' tanh s.
PointDensityLimit boost_label(const PointDensityLimit& limit, const BoostParams& boost);

struct BoostFieldReport {
  double weight = 0.0;        // int rho' d^3x' over the boosted slice
  double time_factor = 0.0;   // weight / cosh s
  double predicted_time_factor = 0.0;  // cosh s + v3 sinh s
  Vec3 first_moment = Vec3::Zero();    // int x' rho' / int rho'
  Vec3 predicted_point = Vec3::Zero();
  double factor_error() const { return std::abs(time_factor - predicted_time_factor); }
  double moment_error() const { return (first_moment - predicted_point).norm(); }
};

/// Applies rho' = cosh s rho + sinh s j3, j3' = sinh s rho + cosh s j3 to the
/// t = 0 field and places each sample at x' = (x1, x2, x3 cosh s) on the slice
/// t' = x3' tanh s; compares the integrated weight and first moment with the
/// limit predicted by boost_label.
BoostFieldReport verify_boost_against_field(const FourVectorDensity& d, const PointDensityLimit& limit,
                                            const BoostParams& boost);

/// rho(R^{-1} x) for a grid-preserving rotation (signed permutation matrix).
std::vector<double> rotate_field(const CartesianGrid& grid, std::span<const double> field, const Matrix3& R);
/// rho(-x).
std::vector<double> parity_field(const CartesianGrid& grid, std::span<const double> field);

}  // namespace dirloc
