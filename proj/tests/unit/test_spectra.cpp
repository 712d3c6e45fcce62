// Copyright 2026 The ddprep Authors
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

#include <Eigen/Dense>

#include "ddprep/errors.hpp"
#include "ddprep/models.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/spectra.hpp"

using namespace ddprep;

TEST(Assemble, MatchesDenseHamiltonian) {
  for (const auto& m : {build_heisenberg_chain(8, true, 4), build_fredkin(8), build_qdm(4, 4)}) {
    const auto h = assemble(m);
    EXPECT_EQ(h.dimension(), m.basis->size());
    EXPECT_LT(h.hermiticity_error(), 1e-14);
    const Eigen::MatrixXcd dense = dense_hamiltonian(m);
    EXPECT_LT((Eigen::MatrixXcd(h.matrix) - dense).norm(), 1e-12) << m.label();
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(dense.rows());
    EXPECT_NEAR(h.quadratic_form(v), (v.adjoint() * dense * v)(0, 0).real(), 1e-10);
  }
}

TEST(Assemble, BudgetIsEnforced) {
  EXPECT_THROW(assemble(build_heisenberg_chain(12, true, 6), 100), CapacityError);
}

TEST(LowestPair, IterativeAgreesWithDense) {
  for (const auto& m : {build_heisenberg_chain(12, true, 6), build_fredkin(12), build_cluster_ising(9)}) {
    const auto h = assemble(m);
    const auto dense = lowest_pair(h);
    SolverOptions it;
    it.force_iterative = true;
    const auto lan = lowest_pair(h, it);
    EXPECT_NE(dense.method, lan.method);
    EXPECT_NEAR(lan.e0, dense.e0, 1e-9) << m.label();
    EXPECT_NEAR(lan.gap, dense.gap, 1e-8) << m.label();
    EXPECT_EQ(lan.degeneracy, dense.degeneracy) << m.label();
    EXPECT_LT(lan.residual, 1e-6);
  }
}

TEST(LowestPair, AnalyticGaps) {
  // one magnon on a ring and on an open 4x4 square
  for (std::size_t n : {8u, 10u, 12u}) {
    const auto g = lowest_pair(assemble(build_heisenberg_chain(n, true, n / 2)));
    EXPECT_NEAR(g.gap, 1 - std::cos(2 * std::numbers::pi / n), 1e-9) << n;
    EXPECT_EQ(g.degeneracy, 1u);
  }
  const auto sq = lowest_pair(assemble(build_heisenberg_2d(4, 4, true, 1)));
  EXPECT_NEAR(sq.gap, 1 - std::cos(std::numbers::pi / 4), 1e-9);
  const auto qdm = lowest_pair(assemble(build_qdm(2, 2)));
  EXPECT_NEAR(qdm.gap, 1.0, 1e-12);
}

TEST(LowestPair, DegenerateGroundStates) {
  const auto g = lowest_pair(assemble(build_cluster_ising(12)));
  EXPECT_EQ(g.degeneracy, 2u);
  EXPECT_NEAR(g.e0, 0.0, 1e-9);
  EXPECT_GT(g.gap, 0.01);
}

TEST(LowestPair, GroundVectorIsAnEigenvector) {
  const auto m = build_fredkin(10);
  const auto h = assemble(m);
  SolverOptions it;
  it.force_iterative = true;
  const auto g = lowest_pair(h, it);
  const Eigen::VectorXcd r = h.matrix * g.ground - g.e0 * g.ground;
  EXPECT_LT(r.norm(), 1e-6);
  EXPECT_NEAR(g.ground.norm(), 1.0, 1e-10);
}

TEST(GapScaling, RecoversSyntheticExponent) {
  const std::vector<double> n = {8, 10, 12, 14, 16};
  std::vector<double> g;
  for (double s : n) g.push_back(3.0 * std::pow(s, -8.0 / 3.0));
  const auto f = gap_scaling_fit(n, g, 1);
  EXPECT_NEAR(f.z, 8.0 / 3.0, 1e-12);
  EXPECT_LT(f.ci.hi - f.ci.lo, 1e-9);
  ASSERT_EQ(f.residuals.size(), 5u);
  // with d = 2 the fit is in linear size
  const auto f2 = gap_scaling_fit({16, 36, 64, 100}, {1.0 / 16, 1.0 / 36, 1.0 / 64, 1.0 / 100}, 2);
  EXPECT_NEAR(f2.z, 2.0, 1e-12);
}

TEST(GapScaling, NeedsEnoughSizes) {
  EXPECT_THROW(gap_scaling_fit({8, 10, 12}, {0.1, 0.06, 0.04}, 1), FitError);
  EXPECT_THROW(gap_scaling_fit({10, 11, 12, 13}, {0.1, 0.09, 0.08, 0.07}, 1), FitError);
}
