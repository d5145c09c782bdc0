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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thermal_jc/fock_oracle.hpp"

namespace thermal_jc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int E = FockBasis::kExcited;
constexpr int G = FockBasis::kGround;

TEST(FockBasis, IndexIsBijective) {
  const FockBasis basis(3, 5);
  EXPECT_EQ(basis.dim(), 60);
  for (int i = 0; i < basis.dim(); ++i) EXPECT_EQ(basis.index(basis.label(i)), i);
  EXPECT_THROW(FockBasis(0, 3), InvalidArgument);
}

TEST(Hamiltonian, SmallestNontrivialCutoff) {
  // Two levels per mode: only |g,1> <-> |e,0> is coupled in each cavity.
  const ModelParams p{0.0, 0.0, 0.7, 1.3};
  const FockBasis basis(2, 2);
  const Eigen::MatrixXcd h(build_hamiltonian(p, basis));
  EXPECT_DOUBLE_EQ(h(basis.index(E, G, 0, 0), basis.index(G, G, 1, 0)).real(), 0.7);
  EXPECT_DOUBLE_EQ(h(basis.index(G, E, 0, 0), basis.index(G, G, 0, 1)).real(), 1.3);
  // |e,1>|g,0> would need |g,2> or a photon in cavity 2 below n=0: it is uncoupled.
  EXPECT_EQ(h.row(basis.index(E, G, 1, 0)).cwiseAbs().maxCoeff(), 0.0);
  // Four |e,0><->|g,1> pairs per cavity, each entered twice.
  EXPECT_EQ((h.array() != Complex(0.0)).count(), 16);
  EXPECT_EQ((h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hamiltonian, LadderMatrixElements) {
  const ModelParams p{0.0, 0.0, 0.9, 1.1};
  const FockBasis basis(6, 5);
  const Eigen::MatrixXcd h(build_hamiltonian(p, basis));
  for (int m = 0; m + 1 < basis.ncut1; ++m)
    for (int n = 0; n < basis.ncut2; ++n)
      for (int s2 : {E, G}) EXPECT_NEAR(h(basis.index(E, s2, m, n), basis.index(G, s2, m + 1, n)).real(), 0.9 * std::sqrt(m + 1.0), 1e-15);
  for (int m = 0; m < basis.ncut1; ++m)
    for (int n = 0; n + 1 < basis.ncut2; ++n)
      EXPECT_NEAR(h(basis.index(G, E, m, n), basis.index(G, G, m, n + 1)).real(), 1.1 * std::sqrt(n + 1.0), 1e-15);
}

TEST(Hamiltonian, ConservesExcitationNumber) {
  const FockBasis basis(7, 6);
  const SparseMatrixC h = build_hamiltonian({0.0, 0.0, 1.0, 0.8}, basis);
  const SparseMatrixC n = excitation_operator(basis);
  const Eigen::MatrixXcd comm(SparseMatrixC(h * n - n * h));
  EXPECT_LT(comm.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Propagator, MatchesDenseExponentialOfFullHamiltonian) {
  const ModelParams p{0.3, 0.6, 1.0, 0.85};
  const FockBasis basis(4, 3);
  const Eigen::MatrixXcd h(build_hamiltonian(p, basis));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const double t = 1.7;
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
  const Eigen::MatrixXcd dense_u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  const FockPropagator prop(p, basis);
  const Eigen::MatrixXcd u(prop.unitary(t));
  EXPECT_LT((u - dense_u).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(InitialState, VacuumIsPureBellProjector) {
  const FockBasis basis(3, 3);
  const DensityOp rho = initial_state({0.0, 0.0}, basis);
  const Eigen::MatrixXcd m = rho.to_dense();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
  psi(basis.index(E, E, 0, 0)) = psi(basis.index(G, G, 0, 0)) = 1.0 / std::sqrt(2.0);
  EXPECT_LT((m - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR((m * m).trace().real(), 1.0, 1e-15);
}

TEST(InitialState, TraceIsProductOfTruncatedSums) {
  const ModelParams p{0.8, 0.4};
  const FockBasis basis(30, 25);
  const DensityOp rho = initial_state(p, basis);
  double s1 = 0.0, s2 = 0.0;
  for (int m = 0; m < 30; ++m) s1 += thermal_weight(0.8, m);
  for (int n = 0; n < 25; ++n) s2 += thermal_weight(0.4, n);
  EXPECT_NEAR(rho.trace().real(), s1 * s2, 1e-14);
  EXPECT_NEAR(rho.captured_weight, s1 * s2, 1e-14);
}

TEST(InitialState, GeometricTailAtFortyLevels) {
  const DensityOp rho = initial_state({1.0, 0.0}, FockBasis(40, 1));
  EXPECT_GE(rho.trace().real(), 1.0 - 1e-12);
}

TEST(InitialState, RejectsStarvedBasis) {
  EXPECT_THROW(initial_state({1.0, 1.0}, FockBasis(2, 2)), ComputationError);
  EXPECT_NO_THROW(initial_state({1.0, 1.0}, FockBasis(2, 2), 0.0));
}

TEST(EvolveAndReduce, InitialTimeGivesBellState) {
  const ModelParams p{0.7, 0.2};
  const DensityMatrix4 rho = evolve_and_reduce(p, 0.0, FockBasis::for_params(p));
  Matrix4c bell = Matrix4c::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  EXPECT_LT((rho.matrix() - bell).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(EvolveAndReduce, VacuumQuarterPeriod) {
  const ModelParams p{0.0, 0.0};
  const XState s = xstate_from(evolve_and_reduce(p, kPi / 4, FockBasis::for_params(p)));
  EXPECT_NEAR(s.a, 0.125, 1e-12);
  EXPECT_NEAR(s.b, 0.125, 1e-12);
  EXPECT_NEAR(s.c, 0.125, 1e-12);
  EXPECT_NEAR(s.d, 0.625, 1e-12);
  EXPECT_NEAR(std::abs(s.w - Complex(0.25)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.z), 0.0, 1e-12);
}

void expect_matches_analytic(const ModelParams& p, double gt) {
  const XState oracle = xstate_from(evolve_and_reduce(p, gt, FockBasis::for_params(p)));
  const XState analytic = atomic_xstate(p, gt);
  EXPECT_NEAR(oracle.a, analytic.a, 1e-8);
  EXPECT_NEAR(oracle.b, analytic.b, 1e-8);
  EXPECT_NEAR(oracle.c, analytic.c, 1e-8);
  EXPECT_NEAR(oracle.d, analytic.d, 1e-8);
  EXPECT_NEAR(std::abs(oracle.w - analytic.w), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(oracle.z), 0.0, 1e-8);
}

TEST(EvolveAndReduce, MatchesAnalyticSeries) {
  expect_matches_analytic({0.5, 1.0}, 2.0);
  expect_matches_analytic({0.5, 0.5}, kPi);
  expect_matches_analytic({1.3, 0.1, 1.0, 0.6}, 5.5);
}

TEST(EvolveAndReduce, MeasuresMatchGeneralFormulasOnOracleState) {
  const ModelParams p{0.5, 0.5};
  const DensityMatrix4 rho = evolve_and_reduce(p, 1.0, FockBasis::for_params(p));
  const Measures m = measures_at(p, 1.0);
  EXPECT_NEAR(concurrence_general(rho), m.concurrence, 1e-8);
  EXPECT_NEAR(discord_1norm_xstate(xstate_from(rho, 1e-11)), m.discord, 1e-8);
}

TEST(Evolution, ConservesTraceExcitationsAndPurity) {
  const ModelParams p{0.6, 0.9, 1.0, 1.2};
  const FockBasis basis = FockBasis::for_params(p);
  const FockPropagator prop(p, basis);
  const DensityOp rho0 = initial_state(p, basis);
  const SparseMatrixC n = excitation_operator(basis);
  const double n0 = SparseMatrixC(rho0.matrix * n).diagonal().sum().real();
  for (double t : {0.5, 3.0, 11.0}) {
    const DensityOp rho = prop.evolve(rho0, t);
    EXPECT_NEAR(rho.trace().real(), rho0.trace().real(), 1e-12);
    EXPECT_NEAR(SparseMatrixC(rho.matrix * n).diagonal().sum().real(), n0, 1e-10);
  }

  // A single pure component stays pure.
  SparseMatrixC single(basis.dim(), basis.dim());
  const int ee = basis.index(E, E, 3, 2), gg = basis.index(G, G, 3, 2);
  single.insert(ee, ee) = 0.5;
  single.insert(ee, gg) = 0.5;
  single.insert(gg, ee) = 0.5;
  single.insert(gg, gg) = 0.5;
  DensityOp pure{basis, single, 1.0, 0.0};
  const DensityOp evolved = prop.evolve(pure, 7.3);
  const SparseMatrixC sq = evolved.matrix * evolved.matrix;
  EXPECT_NEAR(sq.diagonal().sum().real(), 1.0, 1e-12);
}

TEST(Evolution, ReducedStateHasXForm) {
  for (double nb1 : {0.0, 0.4, 1.2})
    for (double nb2 : {0.0, 0.9})
      for (double t : {0.3, 2.9, 8.1}) {
        const ModelParams p{nb1, nb2, 1.0, 0.7};
        const FockBasis basis = FockBasis::for_params(p);
        const FockPropagator prop(p, basis);
        const Matrix4c r = prop.evolve(initial_state(p, basis), t).partial_trace_cavities();
        EXPECT_LT(off_x_pattern(r), 1e-10);
      }
}

TEST(CompareWithAnalytic, VacuumGrid) {
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(0.1 * i);
  const OracleReport r = compare_with_analytic({0.0, 0.0}, times);
  EXPECT_LT(r.worst(), 1e-12);
  EXPECT_EQ(r.points, times.size());
  EXPECT_EQ(r.leakage_bound, 0.0);
}

TEST(CompareWithAnalytic, ThermalGridOverFourPeriods) {
  std::vector<double> times;
  for (int i = 0; i * 0.1 <= 4 * kPi; ++i) times.push_back(0.1 * i);
  const OracleReport r = compare_with_analytic({1.0, 1.0}, times);
  EXPECT_LT(r.worst(), 1e-8);
  EXPECT_LT(r.max_off_x_pattern, 1e-10);
  EXPECT_GT(r.leakage_bound, 0.0);
  EXPECT_LT(r.leakage_bound, 1e-11);
  EXPECT_EQ(r.ncut1, truncation_order(1.0, 1e-12) + 2);
}

TEST(CompareWithAnalytic, StarvedBasisShowsDeviation) {
  const OracleReport r = compare_with_analytic({1.0, 1.0}, {0.5, 1.0, 2.0}, {}, FockBasis(2, 2));
  EXPECT_GT(r.worst(), 1e-2);
  EXPECT_GT(r.leakage_bound, 0.5);
}

}  // namespace
}  // namespace thermal_jc
