// Copyright 2026 The thermal-jc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "thermal_jc/errors.hpp"

namespace thermal_jc {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

namespace tol {
inline constexpr double kTrace = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
// Denominator magnitude below which the closed-form discord switches to its limit.
inline constexpr double kDegenerate = 1e-12;
}  // namespace tol

namespace pauli {
inline Matrix2c identity() { return Matrix2c::Identity(); }
inline Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline Matrix2c y() {
  Matrix2c m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
inline Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
// sigma_1, sigma_2, sigma_3 indexed from zero.
inline Matrix2c by_index(int j) {
  switch (j) {
    case 0: return x();
    case 1: return y();
    default: return z();
  }
}
}  // namespace pauli

inline Matrix4c kron(const Matrix2c& lhs, const Matrix2c& rhs) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = lhs(i, j) * rhs;
  return out;
}

/// Two-qubit X-form density matrix in the basis {|ee>, |eg>, |ge>, |gg>}:
///
///     | a   0   0   w |
///     | 0   b   z   0 |
///     | 0   z*  c   0 |
///     | w*  0   0   d |
///
/// `trace_slack` records how much probability is knowingly missing (e.g. a
/// truncated thermal series) and widens the unit-trace check by that amount.
struct XState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Complex w{0.0, 0.0};
  Complex z{0.0, 0.0};
  double trace_slack = 0.0;

  double trace() const { return a + b + c + d; }

  Matrix4c matrix() const {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    m(0, 3) = w;
    m(3, 0) = std::conj(w);
    m(1, 2) = z;
    m(2, 1) = std::conj(z);
    return m;
  }

  // Throws InvalidArgument when the populations or coherences cannot belong to a state.
  void validate() const {
    const std::array<double, 4> pops{a, b, c, d};
    for (double p : pops) {
      if (!std::isfinite(p) || p < -tol::kPsd) {
        std::ostringstream os;
        os << "XState: population " << p << " is negative or non-finite";
        throw InvalidArgument(os.str());
      }
    }
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || !std::isfinite(z.real()) ||
        !std::isfinite(z.imag()))
      throw InvalidArgument("XState: non-finite coherence");
    if (std::abs(trace() - 1.0) > tol::kTrace + trace_slack) {
      std::ostringstream os;
      os.precision(17);
      os << "XState: trace " << trace() << " differs from 1";
      throw InvalidArgument(os.str());
    }
    if (std::norm(w) > a * d + tol::kPsd) throw InvalidArgument("XState: |w|^2 > a*d (not PSD)");
    if (std::norm(z) > b * c + tol::kPsd) throw InvalidArgument("XState: |z|^2 > b*c (not PSD)");
  }
};

/// Local Bloch vectors and correlation matrix of a two-qubit state,
/// rho = 1/4 [I + x.sigma (x) I + I (x) y.sigma + sum t_jk sigma_j (x) sigma_k].
struct BlochForm {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();

  double x3() const { return x(2); }
  double y3() const { return y(2); }
  double t11() const { return t(0, 0); }
  double t22() const { return t(1, 1); }
  double t33() const { return t(2, 2); }

  Matrix4c reconstruct() const {
    Matrix4c rho = kron(pauli::identity(), pauli::identity());
    for (int j = 0; j < 3; ++j) {
      rho += x(j) * kron(pauli::by_index(j), pauli::identity());
      rho += y(j) * kron(pauli::identity(), pauli::by_index(j));
      for (int k = 0; k < 3; ++k) rho += t(j, k) * kron(pauli::by_index(j), pauli::by_index(k));
    }
    return 0.25 * rho;
  }
};

/// General two-qubit density matrix (standard basis ordering as XState).
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Matrix4c& m, double trace_slack = 0.0) : m_(m) {
    validate(trace_slack);
  }

  static DensityMatrix4 embed(const XState& s) {
    s.validate();
    return DensityMatrix4(s.matrix(), s.trace_slack);
  }

  const Matrix4c& matrix() const { return m_; }

 private:
  void validate(double trace_slack) const {
    if (!m_.allFinite()) throw InvalidArgument("DensityMatrix4: non-finite entry");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian)
      throw InvalidArgument("DensityMatrix4: matrix is not Hermitian");
    const Complex tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > tol::kTrace + trace_slack || std::abs(tr.imag()) > tol::kTrace)
      throw InvalidArgument("DensityMatrix4: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::kPsd)
      throw InvalidArgument("DensityMatrix4: matrix has a negative eigenvalue");
  }

  Matrix4c m_;
};

// x3 = a+b-c-d, y3 = a-b+c-d, t33 = a-b-c+d; the transverse block follows from w and z.
inline BlochForm bloch_decompose(const XState& s) {
  s.validate();
  BlochForm f;
  f.x(2) = s.a + s.b - s.c - s.d;
  f.y(2) = s.a - s.b + s.c - s.d;
  f.t(0, 0) = 2.0 * (s.w + s.z).real();
  f.t(0, 1) = 2.0 * (s.z - s.w).imag();
  f.t(1, 0) = -2.0 * (s.w + s.z).imag();
  f.t(1, 1) = 2.0 * (s.z - s.w).real();
  f.t(2, 2) = s.a - s.b - s.c + s.d;
  return f;
}

/// Pauli-trace decomposition of an arbitrary 4x4 matrix: x_j = tr(rho sigma_j (x) I), etc.
inline BlochForm bloch_components(const Matrix4c& rho) {
  BlochForm f;
  for (int j = 0; j < 3; ++j) {
    f.x(j) = (rho * kron(pauli::by_index(j), pauli::identity())).trace().real();
    f.y(j) = (rho * kron(pauli::identity(), pauli::by_index(j))).trace().real();
    for (int k = 0; k < 3; ++k)
      f.t(j, k) = (rho * kron(pauli::by_index(j), pauli::by_index(k))).trace().real();
  }
  return f;
}

/// Trace-norm geometric discord of an X state, reported in the doubled
/// convention (a Bell state scores 1).
///
/// Local z-rotations on each qubit remove the phases of w and z without
/// changing the discord, so the closed form is applied to |w| and |z|; that
/// leaves T diagonal with |t11| >= |t22|. When the denominator vanishes the
/// limit |t11| (doubled) is returned.
inline double discord_1norm_xstate(const XState& s) {
  s.validate();
  XState real_form = s;
  real_form.w = std::abs(s.w);
  real_form.z = std::abs(s.z);
  const BlochForm f = bloch_decompose(real_form);

  const double t11_sq = f.t11() * f.t11();
  const double t22_sq = f.t22() * f.t22();
  const double t33_sq = f.t33() * f.t33();
  const double x3_sq = f.x3() * f.x3();

  const double f1 = std::max(t33_sq, t22_sq + x3_sq);
  const double f2 = std::min(t33_sq, t11_sq);
  const double den = f1 - f2 + t11_sq - t22_sq;

  if (std::abs(t11_sq - t22_sq) < tol::kDegenerate || std::abs(den) < tol::kDegenerate)
    return std::abs(f.t11());

  const double radicand = (t11_sq * f1 - t22_sq * f2) / den;
  if (radicand < -tol::kDegenerate) {
    std::ostringstream os;
    os << "discord_1norm_xstate: negative radicand " << radicand;
    throw ComputationError(os.str());
  }
  return std::sqrt(std::max(0.0, radicand));
}

/// Signed X-state concurrence before clamping at zero: 2 max(|z|-sqrt(ad), |w|-sqrt(bc)).
/// A non-positive value means the state is separable.
inline double concurrence_margin(const XState& s) {
  const double via_z = std::abs(s.z) - std::sqrt(std::max(0.0, s.a * s.d));
  const double via_w = std::abs(s.w) - std::sqrt(std::max(0.0, s.b * s.c));
  return 2.0 * std::max(via_z, via_w);
}

inline double concurrence_xstate(const XState& s) {
  s.validate();
  return std::max(0.0, concurrence_margin(s));
}

/// Wootters concurrence of a general two-qubit state.
///
/// The lambda_j (square roots of the spectrum of rho (sy(x)sy) rho* (sy(x)sy))
/// are taken as the singular values of sqrt(rho) sqrt(rho~), which avoids
/// square-rooting eigenvalues that are zero up to roundoff.
inline double concurrence_general(const DensityMatrix4& rho) {
  const Matrix4c& m = rho.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
  if (es.eigenvalues().minCoeff() < -tol::kPsd)
    throw InvalidArgument("concurrence_general: negative eigenvalue");

  // Eigenvalues at roundoff level are treated as exact zeros.
  const double floor = 8.0 * std::numeric_limits<double>::epsilon();
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    const double mu = es.eigenvalues()(i);
    roots(i) = mu > floor ? std::sqrt(mu) : 0.0;
  }
  const Matrix4c sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix4c flip = kron(pauli::y(), pauli::y());
  const Matrix4c sqrt_tilde = flip * sqrt_rho.conjugate() * flip;

  Eigen::JacobiSVD<Matrix4c> svd(sqrt_rho * sqrt_tilde);
  const Eigen::Vector4d lambda = svd.singularValues();  // decreasing
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

}  // namespace thermal_jc
