#include "dirloc/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace dirloc {

namespace {

DiracMatrices build_dirac_matrices() {
  const Complex I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;

  DiracMatrices m;
  const std::array<Eigen::Matrix2cd, 3> pauli{s1, s2, s3};
  for (int i = 0; i < 3; ++i) {
    m.alpha[i].setZero();
    m.alpha[i].block<2, 2>(0, 2) = pauli[i];
    m.alpha[i].block<2, 2>(2, 0) = pauli[i];
  }
  m.beta.setZero();
  m.beta.diagonal() << 1, 1, -1, -1;
  return m;
}

}  // namespace

SpinLabel spin_from_value(double s) {
  if (s == 0.5) return SpinLabel::Up;
  if (s == -0.5) return SpinLabel::Down;
  throw std::invalid_argument("spin label must be +0.5 or -0.5");
}

const DiracMatrices& dirac_matrices() {
  static const DiracMatrices m = build_dirac_matrices();
  return m;
}

Matrix4 hamiltonian_matrix(const Vec3& p) {
  const auto& d = dirac_matrices();
  return d.alpha[0] * p[0] + d.alpha[1] * p[1] + d.alpha[2] * p[2] + d.beta;
}

Matrix4 positive_projector(const Vec3& p) {
  const double e = energy(p);
  return (Matrix4::Identity() * e + hamiltonian_matrix(p)) / (2.0 * e);
}

Matrix4 pryce_u_matrix(const Vec3& p) {
  const double e = energy(p);
  return (Matrix4::Identity() * e + hamiltonian_matrix(p) * dirac_matrices().beta) /
         pryce_norm(p);
}

Matrix4 pryce_spin3(const Vec3& p) {
  const auto& d = dirac_matrices();
  const Matrix4 s3 = Complex(0.0, -0.5) * d.alpha[0] * d.alpha[1];
  const Matrix4 u = pryce_u_matrix(p);
  return u * s3 * u.adjoint();
}

// Columns 1 and 2 of U(p), written out. For spin up this is the conjugate of
// (E+1, 0, p3, p1 - i p2) / norm.
Spinor4 spin_eigenspinor(const Vec3& p, SpinLabel s) {
  const double e = energy(p);
  const double norm = std::sqrt(2.0 * e * (e + 1.0));
  Spinor4 u;
  if (s == SpinLabel::Up) {
    u << e + 1.0, 0.0, p[2], Complex(p[0], p[1]);
  } else {
    u << 0.0, e + 1.0, Complex(p[0], -p[1]), -p[2];
  }
  return u / norm;
}

std::array<Spinor4, 3> spin_eigenspinor_gradient(const Vec3& p, SpinLabel s) {
  const double e = energy(p);
  const double norm = std::sqrt(2.0 * e * (e + 1.0));
  const Spinor4 u = spin_eigenspinor(p, s);
  std::array<Spinor4, 3> grad;
  for (int k = 0; k < 3; ++k) {
    const double de = p[k] / e;
    // d(norm)/dp_k = (2E + 1) dE / norm
    const double dnorm = (2.0 * e + 1.0) * de / norm;
    Spinor4 dnum = Spinor4::Zero();
    if (s == SpinLabel::Up) {
      dnum[0] = de;
      if (k == 2) dnum[2] = 1.0;
      if (k == 0) dnum[3] = 1.0;
      if (k == 1) dnum[3] = Complex(0.0, 1.0);
    } else {
      dnum[1] = de;
      if (k == 0) dnum[2] = 1.0;
      if (k == 1) dnum[2] = Complex(0.0, -1.0);
      if (k == 2) dnum[3] = -1.0;
    }
    grad[k] = dnum / norm - u * (dnorm / norm);
  }
  return grad;
}

DerivativeBoundReport spinor_derivative_bounds(std::span<const Vec3> samples, SpinLabel s,
                                               double slack) {
  if (samples.empty()) throw std::invalid_argument("derivative bounds need at least one sample");
  constexpr double h = 1e-5;
  DerivativeBoundReport report;
  report.samples = samples.size();
  for (const Vec3& p : samples) {
    const Spinor4 u = spin_eigenspinor(p, s);
    const double pabs = p.norm();
    for (int a = 0; a < 4; ++a) {
      const double c = std::abs(u[a]);
      report.max_component = std::max(report.max_component, c);
      if (c > 1.0 + 1e-14) report.violations.push_back({p, "|u_a| <= 1", c, 1.0});
    }
    for (int k = 0; k < 3; ++k) {
      Vec3 dp = Vec3::Zero();
      dp[k] = h;
      const Spinor4 du = (spin_eigenspinor(p + dp, s) - spin_eigenspinor(p - dp, s)) / (2.0 * h);
      for (int a = 0; a < 4; ++a) {
        // |d conj(u_a)| = |d u_a|
        const double d = std::abs(du[a]);
        report.max_derivative = std::max(report.max_derivative, d);
        if (d >= 2.0 + slack) report.violations.push_back({p, "|d_k u_a| < 2/m", d, 2.0});
        if (pabs > 0.0) {
          report.max_scaled_derivative = std::max(report.max_scaled_derivative, d * pabs);
          if (d >= 2.0 / pabs + slack)
            report.violations.push_back({p, "|d_k u_a| < 2/|p|", d, 2.0 / pabs});
        }
      }
    }
  }
  return report;
}

}  // namespace dirloc
