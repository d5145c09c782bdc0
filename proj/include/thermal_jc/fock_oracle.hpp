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
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "thermal_jc/errors.hpp"
#include "thermal_jc/jc_thermal.hpp"
#include "thermal_jc/xstate.hpp"

namespace thermal_jc {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

/// Tail tolerance behind the default oracle cutoffs.
inline constexpr double kCutoffEpsilon = 1e-12;

/// Truncated product basis |s1 s2> (x) |m> (x) |n>, s in {e, g}, with the atomic
/// pair as the slowest index so that the atomic ordering matches XState.
struct FockBasis {
  enum Level : int { kExcited = 0, kGround = 1 };

  int ncut1 = 1;
  int ncut2 = 1;

  struct Label {
    int s1, s2, m, n;
    friend bool operator==(const Label&, const Label&) = default;
  };

  FockBasis(int cut1, int cut2) : ncut1(cut1), ncut2(cut2) {
    if (ncut1 < 1 || ncut2 < 1) throw InvalidArgument("FockBasis: cutoffs must be >= 1");
  }

  /// Cutoffs large enough that the neglected thermal weight per mode is at
  /// most epsilon, plus two levels of headroom for the extra photon the
  /// dynamics can create.
  static FockBasis for_params(const ModelParams& p, double epsilon = kCutoffEpsilon) {
    return FockBasis(truncation_order(p.nbar1, epsilon) + 2, truncation_order(p.nbar2, epsilon) + 2);
  }

  int dim() const { return 4 * ncut1 * ncut2; }

  int index(int s1, int s2, int m, int n) const { return ((s1 * 2 + s2) * ncut1 + m) * ncut2 + n; }
  int index(const Label& l) const { return index(l.s1, l.s2, l.m, l.n); }

  Label label(int idx) const {
    Label l{};
    l.n = idx % ncut2;
    idx /= ncut2;
    l.m = idx % ncut1;
    idx /= ncut1;
    l.s2 = idx % 2;
    l.s1 = idx / 2;
    return l;
  }

  // Position of the atomic pair in the {ee, eg, ge, gg} ordering.
  static int atomic_index(const Label& l) { return l.s1 * 2 + l.s2; }
};

/// Resonant two-cavity Jaynes-Cummings Hamiltonian sum_j g_j (sigma_j^+ a_j + h.c.).
inline SparseMatrixC build_hamiltonian(const ModelParams& p, const FockBasis& basis) {
  p.validate();
  using L = FockBasis;
  std::vector<Eigen::Triplet<Complex>> entries;
  for (int s_other = 0; s_other < 2; ++s_other) {
    for (int m = 0; m + 1 < basis.ncut1; ++m) {
      for (int n = 0; n < basis.ncut2; ++n) {
        // <e, m| sigma+ a |g, m+1> = sqrt(m+1) on atom/cavity 1
        const int upper = basis.index(L::kExcited, s_other, m, n);
        const int lower = basis.index(L::kGround, s_other, m + 1, n);
        const double amp = p.g1 * std::sqrt(m + 1.0);
        entries.emplace_back(upper, lower, amp);
        entries.emplace_back(lower, upper, amp);
      }
    }
    for (int m = 0; m < basis.ncut1; ++m) {
      for (int n = 0; n + 1 < basis.ncut2; ++n) {
        const int upper = basis.index(s_other, L::kExcited, m, n);
        const int lower = basis.index(s_other, L::kGround, m, n + 1);
        const double amp = p.g2 * std::sqrt(n + 1.0);
        entries.emplace_back(upper, lower, amp);
        entries.emplace_back(lower, upper, amp);
      }
    }
  }
  SparseMatrixC h(basis.dim(), basis.dim());
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

/// Total excitation number sum_j (sigma_j^+ sigma_j^- + a_j^dag a_j), diagonal.
inline SparseMatrixC excitation_operator(const FockBasis& basis) {
  std::vector<Eigen::Triplet<Complex>> entries;
  for (int i = 0; i < basis.dim(); ++i) {
    const auto l = basis.label(i);
    const int count = (l.s1 == FockBasis::kExcited) + (l.s2 == FockBasis::kExcited) + l.m + l.n;
    if (count != 0) entries.emplace_back(i, i, static_cast<double>(count));
  }
  SparseMatrixC op(basis.dim(), basis.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

/// Atom-cavity density operator, stored sparse.
struct DensityOp {
  FockBasis basis;
  SparseMatrixC matrix;
  // Thermal weight retained by the truncated basis.
  double captured_weight = 1.0;
  // Weight on the highest retained photon level of either cavity; that level
  // lacks its coupling partner and so evolves inexactly.
  double boundary_weight = 0.0;

  Complex trace() const {
    Complex tr = 0.0;
    for (int k = 0; k < matrix.outerSize(); ++k)
      for (SparseMatrixC::InnerIterator it(matrix, k); it; ++it)
        if (it.row() == it.col()) tr += it.value();
    return tr;
  }

  Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(matrix); }

  /// Reduced atomic state: trace over both cavities.
  Matrix4c partial_trace_cavities() const {
    Matrix4c out = Matrix4c::Zero();
    for (int k = 0; k < matrix.outerSize(); ++k) {
      for (SparseMatrixC::InnerIterator it(matrix, k); it; ++it) {
        const auto row = basis.label(static_cast<int>(it.row()));
        const auto col = basis.label(static_cast<int>(it.col()));
        if (row.m == col.m && row.n == col.n)
          out(FockBasis::atomic_index(row), FockBasis::atomic_index(col)) += it.value();
      }
    }
    return out;
  }
};

inline constexpr double kMinCapturedWeight = 1.0 - 1e-6;

/// Thermal (x) thermal (x) |phi><phi| with |phi> = (|ee> + |gg>)/sqrt(2), restricted
/// to the basis and not renormalised. Throws when the basis keeps less than
/// `min_captured` of the thermal weight; pass 0 to only report it.
inline DensityOp initial_state(const ModelParams& p, const FockBasis& basis,
                               double min_captured = kMinCapturedWeight) {
  p.validate();
  using L = FockBasis;
  std::vector<double> w1(basis.ncut1), w2(basis.ncut2);
  for (int m = 0; m < basis.ncut1; ++m) w1[m] = thermal_weight(p.nbar1, m);
  for (int n = 0; n < basis.ncut2; ++n) w2[n] = thermal_weight(p.nbar2, n);
  const double sum1 = std::accumulate(w1.begin(), w1.end(), 0.0);
  const double sum2 = std::accumulate(w2.begin(), w2.end(), 0.0);

  DensityOp op{basis, SparseMatrixC(basis.dim(), basis.dim()), sum1 * sum2, 0.0};
  op.boundary_weight = w1.back() * sum2 + w2.back() * sum1 - w1.back() * w2.back();
  if (op.captured_weight < min_captured) {
    std::ostringstream os;
    os << "initial_state: basis " << basis.ncut1 << "x" << basis.ncut2 << " captures only "
       << op.captured_weight << " of the thermal weight";
    throw ComputationError(os.str());
  }

  std::vector<Eigen::Triplet<Complex>> entries;
  for (int m = 0; m < basis.ncut1; ++m) {
    for (int n = 0; n < basis.ncut2; ++n) {
      const double weight = 0.5 * w1[m] * w2[n];
      if (weight == 0.0) continue;
      const int ee = basis.index(L::kExcited, L::kExcited, m, n);
      const int gg = basis.index(L::kGround, L::kGround, m, n);
      entries.emplace_back(ee, ee, weight);
      entries.emplace_back(ee, gg, weight);
      entries.emplace_back(gg, ee, weight);
      entries.emplace_back(gg, gg, weight);
    }
  }
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

/// Numerically exact propagator exp(-iHt) for the truncated Hamiltonian.
///
/// H is split into its invariant subspaces (connected components of the
/// coupling graph) and each block is diagonalised densely, so the propagator
/// at any time is assembled from the stored spectral decompositions.
class FockPropagator {
 public:
  FockPropagator(const ModelParams& p, const FockBasis& basis) : basis_(basis) {
    const SparseMatrixC h = build_hamiltonian(p, basis);
    const int dim = basis.dim();

    std::vector<int> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (int k = 0; k < h.outerSize(); ++k)
      for (SparseMatrixC::InnerIterator it(h, k); it; ++it) {
        const int a = find(static_cast<int>(it.row()));
        const int b = find(static_cast<int>(it.col()));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

    std::vector<int> block_of(dim, -1);
    for (int i = 0; i < dim; ++i) {
      const int root = find(i);
      if (block_of[root] < 0) {
        block_of[root] = static_cast<int>(blocks_.size());
        blocks_.emplace_back();
      }
      blocks_[block_of[root]].indices.push_back(i);
    }

    for (auto& block : blocks_) {
      const auto size = static_cast<Eigen::Index>(block.indices.size());
      Eigen::MatrixXcd sub = Eigen::MatrixXcd::Zero(size, size);
      for (Eigen::Index r = 0; r < size; ++r)
        for (Eigen::Index c = 0; c < size; ++c) sub(r, c) = h.coeff(block.indices[r], block.indices[c]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
      block.energies = es.eigenvalues();
      block.vectors = es.eigenvectors();
    }
  }

  const FockBasis& basis() const { return basis_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t largest_block() const {
    std::size_t out = 0;
    for (const auto& b : blocks_) out = std::max(out, b.indices.size());
    return out;
  }

  SparseMatrixC unitary(double t) const {
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(static_cast<std::size_t>(basis_.dim()) * 4);
    for (const auto& block : blocks_) {
      Eigen::VectorXcd phases(block.energies.size());
      for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -block.energies(k) * t);
      const Eigen::MatrixXcd u = block.vectors * phases.asDiagonal() * block.vectors.adjoint();
      for (Eigen::Index r = 0; r < u.rows(); ++r)
        for (Eigen::Index c = 0; c < u.cols(); ++c)
          if (u(r, c) != Complex(0.0, 0.0)) entries.emplace_back(block.indices[r], block.indices[c], u(r, c));
    }
    SparseMatrixC u(basis_.dim(), basis_.dim());
    u.setFromTriplets(entries.begin(), entries.end());
    return u;
  }

  DensityOp evolve(const DensityOp& rho0, double t) const {
    const SparseMatrixC u = unitary(t);
    DensityOp out = rho0;
    const SparseMatrixC u_adj = u.adjoint();
    out.matrix = (u * rho0.matrix * u_adj).pruned();
    return out;
  }

 private:
  struct Block {
    std::vector<int> indices;
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;
  };

  FockBasis basis_;
  std::vector<Block> blocks_;
};

inline constexpr double kXFormTolerance = 1e-10;

/// Largest modulus among the eight entries an X state must have zero.
inline double off_x_pattern(const Matrix4c& m) {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

inline XState xstate_from(const DensityMatrix4& rho, double trace_slack = 0.0) {
  const Matrix4c& m = rho.matrix();
  XState s;
  s.a = m(0, 0).real();
  s.b = m(1, 1).real();
  s.c = m(2, 2).real();
  s.d = m(3, 3).real();
  s.w = m(0, 3);
  s.z = m(1, 2);
  s.trace_slack = trace_slack;
  return s;
}

namespace detail {
inline DensityMatrix4 reduce_checked(const DensityOp& evolved) {
  const Matrix4c reduced = evolved.partial_trace_cavities();
  const double off = off_x_pattern(reduced);
  if (off > kXFormTolerance) {
    std::ostringstream os;
    os << "evolve_and_reduce: reduced state leaves X form (off-pattern " << off << ")";
    throw ComputationError(os.str());
  }
  return DensityMatrix4(reduced, 1.0 - evolved.captured_weight + tol::kTrace);
}
}  // namespace detail

/// rho_A(t) = tr_cavities[U rho_S(0) U^dag] by brute-force evolution in the truncated space.
inline DensityMatrix4 evolve_and_reduce(const ModelParams& p, double t, const FockBasis& basis) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolve_and_reduce: time must be finite and >= 0");
  const FockPropagator prop(p, basis);
  return detail::reduce_checked(prop.evolve(initial_state(p, basis), t));
}

struct CoefficientDeviation {
  double max_abs = 0.0;
  double at_time = 0.0;
};

struct OracleReport {
  int ncut1 = 0;
  int ncut2 = 0;
  std::size_t points = 0;
  // Missing thermal weight plus weight on the top retained level.
  double leakage_bound = 0.0;
  double max_off_x_pattern = 0.0;
  CoefficientDeviation a, b, c, d, w, z;

  double worst() const { return std::max({a.max_abs, b.max_abs, c.max_abs, d.max_abs, w.max_abs, z.max_abs}); }
};

/// Sweeps `times`, comparing the analytic series with the brute-force oracle.
/// The basis defaults to FockBasis::for_params; a starved basis is reported
/// through the deviations rather than rejected.
inline OracleReport compare_with_analytic(const ModelParams& p, const std::vector<double>& times,
                                          const TruncationSpec& tr = {},
                                          std::optional<FockBasis> basis_override = std::nullopt) {
  p.validate();
  const FockBasis basis = basis_override ? *basis_override : FockBasis::for_params(p);
  const FockPropagator prop(p, basis);
  const DensityOp rho0 = initial_state(p, basis, 0.0);

  OracleReport report;
  report.ncut1 = basis.ncut1;
  report.ncut2 = basis.ncut2;
  report.points = times.size();
  report.leakage_bound = (1.0 - rho0.captured_weight) + rho0.boundary_weight;

  auto track = [](CoefficientDeviation& dev, double value, double t) {
    if (value > dev.max_abs) {
      dev.max_abs = value;
      dev.at_time = t;
    }
  };
  for (double t : times) {
    const XState analytic = atomic_xstate(p, t, tr);
    const Matrix4c reduced = prop.evolve(rho0, t).partial_trace_cavities();
    report.max_off_x_pattern = std::max(report.max_off_x_pattern, off_x_pattern(reduced));
    track(report.a, std::abs(analytic.a - reduced(0, 0).real()), t);
    track(report.b, std::abs(analytic.b - reduced(1, 1).real()), t);
    track(report.c, std::abs(analytic.c - reduced(2, 2).real()), t);
    track(report.d, std::abs(analytic.d - reduced(3, 3).real()), t);
    track(report.w, std::abs(analytic.w - reduced(0, 3)), t);
    track(report.z, std::abs(analytic.z - reduced(1, 2)), t);
  }
  return report;
}

}  // namespace thermal_jc
