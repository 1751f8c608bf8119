#include "dirloc/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace dirloc {

LocalizationLabel translate(const LocalizationLabel& label, const Vec3& b) {
  LocalizationLabel out = label;
  out.a += b;
  return out;
}

LocalizationLabel rotate(const LocalizationLabel& label, const Matrix3& R) {
  if (!R.allFinite() || (R.transpose() * R - Matrix3::Identity()).norm() > 1e-12 ||
      std::abs(R.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("rotate: matrix is not a proper rotation");
  LocalizationLabel out = label;
  out.a = R * label.a;
  out.v = R * label.v;
  return out;
}

LocalizationLabel parity(const LocalizationLabel& label) {
  LocalizationLabel out = label;
  out.a = -label.a;
  out.v = -label.v;
  return out;
}

LocalizationLabel time_reverse(const LocalizationLabel& label) {
  LocalizationLabel out = label;
  out.v = -label.v;
  return out;
}

Matrix3 axis_rotation(int axis, double angle) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis_rotation: axis must be 0, 1 or 2");
  return Eigen::AngleAxisd(angle, Vec3::Unit(axis)).toRotationMatrix();
}

Eigen::Vector4d PointDensityLimit::four_current() const {
  const double slope = 1.0 - velocity[2] * std::tanh(hyperplane_rapidity);
  return weight / slope * Eigen::Vector4d(1.0, velocity[0], velocity[1], velocity[2]);
}

PointDensityLimit PointDensityLimit::from_label(const LocalizationLabel& label) {
  PointDensityLimit limit;
  limit.point = label.a;
  limit.velocity = label.v;
  return limit;
}

Vec3 boost_velocity(const Vec3& v, double rapidity) {
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  return Vec3(v[0], v[1], v[2] * ch + sh) / (ch + v[2] * sh);
}

PointDensityLimit boost_label(const PointDensityLimit& limit, const BoostParams& boost) {
  if (!(limit.velocity.norm() < 1.0)) throw std::invalid_argument("boost_label needs |v| < 1");
  const double s = boost.rapidity;
  const double ch = std::cosh(s), sh = std::sinh(s);
  PointDensityLimit out = limit;
  out.time = limit.time * ch + limit.point[2] * sh;
  out.point[2] = limit.point[2] * ch + limit.time * sh;
  out.velocity = boost_velocity(limit.velocity, s);
  out.hyperplane_rapidity = limit.hyperplane_rapidity + s;
  return out;
}

BoostFieldReport verify_boost_against_field(const FourVectorDensity& d, const PointDensityLimit& limit,
                                            const BoostParams& boost) {
  const double s = boost.rapidity;
  const double ch = std::cosh(s), sh = std::sinh(s);
  const auto& g = d.grid;
  const int n = g.points;
  double weight = 0.0;
  Vec3 moment = Vec3::Zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = g.index(i, j, k);
        const double rho_b = ch * d.rho[idx] + sh * d.j[2][idx];
        Vec3 x = g.position(i, j, k);
        x[2] *= ch;
        weight += rho_b;
        moment += rho_b * x;
      }
  BoostFieldReport r;
  // d^3x' = cosh s d^3x on the slice
  r.weight = weight * g.cell_volume() * ch;
  r.time_factor = r.weight / ch;
  r.first_moment = moment / weight;
  const auto boosted = boost_label(limit, boost);
  r.predicted_point = boosted.point;
  r.predicted_time_factor = ch + limit.velocity[2] * sh;
  return r;
}

namespace {

// Index map for a signed permutation: new axis a takes old axis perm[a] with sign sign[a].
void check_grid_rotation(const Matrix3& R, std::array<int, 3>& perm, std::array<int, 3>& sign) {
  for (int a = 0; a < 3; ++a) {
    int found = -1;
    for (int b = 0; b < 3; ++b) {
      const double v = R(a, b);
      if (std::abs(std::abs(v) - 1.0) < 1e-12) {
        if (found >= 0) found = 3;
        else found = b;
      } else if (std::abs(v) > 1e-12) {
        found = 3;
      }
    }
    if (found < 0 || found > 2)
      throw std::invalid_argument("rotate_field: rotation does not map the grid onto itself");
    perm[a] = found;
    sign[a] = R(a, found) > 0 ? 1 : -1;
  }
}

}  // namespace

std::vector<double> rotate_field(const CartesianGrid& grid, std::span<const double> field, const Matrix3& R) {
  std::array<int, 3> perm{}, sign{};
  check_grid_rotation(R, perm, sign);
  const int n = grid.points;
  std::vector<double> out(field.size());
  // new(x') = old(R^T x'): old coordinate b = sum_a R(a, b) x'_a
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::array<int, 3> dst{i, j, k};
        std::array<int, 3> src{};
        for (int a = 0; a < 3; ++a) {
          const int centered = dst[a] - n / 2;
          src[perm[a]] = ((sign[a] * centered + n / 2) % n + n) % n;
        }
        out[grid.index(i, j, k)] = field[grid.index(src[0], src[1], src[2])];
      }
  return out;
}

std::vector<double> parity_field(const CartesianGrid& grid, std::span<const double> field) {
  return rotate_field(grid, field, -Matrix3::Identity());
}

}  // namespace dirloc
