#pragma once

// Dirac-matrix algebra and free-particle kinematics in momentum space.
//
// Units: hbar = c = m = 1 throughout the library. Lengths are in Compton
// wavelengths, momenta in mc, energies in mc^2, times in lambda_C / c.
// Conversion to physical units happens only at the CLI boundary.

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dirloc {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Spinor4 = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4cd;

/// Third component of the Pryce spin, +1/2 or -1/2.
enum class SpinLabel { Up, Down };

inline double spin_value(SpinLabel s) { return s == SpinLabel::Up ? 0.5 : -0.5; }
inline SpinLabel flip(SpinLabel s) { return s == SpinLabel::Up ? SpinLabel::Down : SpinLabel::Up; }
SpinLabel spin_from_value(double s);

/// Standard Dirac-Pauli representation: beta = diag(1,1,-1,-1),
/// alpha_i = [[0, sigma_i], [sigma_i, 0]].
struct DiracMatrices {
  std::array<Matrix4, 3> alpha;
  Matrix4 beta;
};

const DiracMatrices& dirac_matrices();

/// E(p) = sqrt(|p|^2 + 1).
inline double energy(const Vec3& p) { return std::sqrt(p.squaredNorm() + 1.0); }

/// Normalization of the Pryce rotation, sqrt(2E(E+m)).
inline double pryce_norm(const Vec3& p) {
  const double e = energy(p);
  return std::sqrt(2.0 * e * (e + 1.0));
}

/// H(p) = alpha . p + beta.
Matrix4 hamiltonian_matrix(const Vec3& p);

/// P+(p) = (E + H) / 2E.
Matrix4 positive_projector(const Vec3& p);

/// U(p) = (E I + H beta) / sqrt(2E(E+1)); unitary, with H U = E U beta.
Matrix4 pryce_u_matrix(const Vec3& p);

/// Pryce spin S3(p) = U (-i/2 alpha_1 alpha_2) U^dagger.
Matrix4 pryce_spin3(const Vec3& p);

/// Positive-energy eigenspinor of the Pryce spin: U(p) e1 for +1/2, U(p) e2 for -1/2.
Spinor4 spin_eigenspinor(const Vec3& p, SpinLabel s);

/// Analytic gradient d u_s / d p_k, k = 0..2.
std::array<Spinor4, 3> spin_eigenspinor_gradient(const Vec3& p, SpinLabel s);

/// One momentum sample that broke a first-order bound on the components of u^dagger.
struct BoundViolation {
  Vec3 p;
  std::string bound;
  double value = 0.0;
  double limit = 0.0;
};

struct DerivativeBoundReport {
  std::size_t samples = 0;
  double max_component = 0.0;      // max |u_a|, must be <= 1
  double max_derivative = 0.0;     // max |d_k u_a|, must be < 2/m
  double max_scaled_derivative = 0.0;  // max |p| |d_k u_a|, must be < 2
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks |u_a| <= 1, |d_k u_a| < 2 and |d_k u_a| < 2/|p| by central finite
/// differences (step 1e-5) on the spin +1/2 eigenspinor. `slack` is added to
/// the two derivative limits to absorb truncation error.
DerivativeBoundReport spinor_derivative_bounds(std::span<const Vec3> samples,
                                               SpinLabel s = SpinLabel::Up,
                                               double slack = 1e-3);

}  // namespace dirloc
