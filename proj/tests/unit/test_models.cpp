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
#include <set>

#include <Eigen/Dense>

#include "ddprep/errors.hpp"
#include "ddprep/models.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/statevec.hpp"

using namespace ddprep;

namespace {

std::vector<LayeredModel> small_models() {
  std::vector<LayeredModel> v;
  v.push_back(build_heisenberg_chain(8, true, 4));
  v.push_back(build_heisenberg_chain(6, false, 3));
  v.push_back(build_heisenberg_single_particle(1, 12));
  v.push_back(build_heisenberg_single_particle(2, 4));
  v.push_back(build_heisenberg_2d(3, 2, true, 3));
  v.push_back(build_fredkin(8));
  v.push_back(build_qdm(4, 4));
  v.push_back(build_cluster_ising(6));
  return v;
}

double lowest_nonzero(const Eigen::VectorXd& ev, double zero_tol = 1e-9) {
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > zero_tol) return ev[i];
  return 0;
}

}  // namespace

TEST(Models, LocalTermsAreOrthogonalProjectors) {
  for (const auto& m : small_models()) {
    for (const auto& t : m.terms) {
      const Eigen::MatrixXcd p = t.local_matrix();
      EXPECT_LT((p * p - p).norm(), 1e-12) << m.label();
      EXPECT_LT((p - p.adjoint()).norm(), 1e-12) << m.label();
      EXPECT_NEAR(p.trace().real(), static_cast<double>(t.local_rank()), 1e-12);
    }
  }
}

TEST(Models, LayersPartitionTermsIntoCommutingSets) {
  for (const auto& m : small_models()) {
    std::vector<int> owner(m.terms.size(), -1);
    for (std::size_t l = 0; l < m.n_layers(); ++l) {
      std::set<std::size_t> sites;
      for (std::size_t k : m.layers[l]) {
        EXPECT_EQ(owner[k], -1) << m.label();
        owner[k] = static_cast<int>(l);
        for (std::size_t s : m.terms[k].support) {
          // the Fredkin controls are shared but only read; skip that model
          if (m.name != "fredkin") EXPECT_TRUE(sites.insert(s).second) << m.label() << " layer " << l;
        }
      }
    }
    for (int o : owner) EXPECT_GE(o, 0) << m.label();
  }
}

TEST(Models, FredkinLayersCommute) {
  const auto m = build_fredkin(10);
  for (const auto& layer : m.layers) {
    for (std::size_t a : layer)
      for (std::size_t b : layer) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(m.basis->size()));
        Eigen::VectorXcd ab = v, ba = v;
        apply_projector(ab, m.terms[b]);
        apply_projector(ab, m.terms[a]);
        apply_projector(ba, m.terms[a]);
        apply_projector(ba, m.terms[b]);
        EXPECT_LT((ab - ba).norm(), 1e-12);
      }
  }
}

TEST(Models, GroundManifoldIsFrustrationFree) {
  for (const auto& m : small_models()) {
    ASSERT_FALSE(m.ground_manifold.empty()) << m.label();
    for (const auto& g : m.ground_manifold) {
      EXPECT_NEAR(g.norm(), 1.0, 1e-12);
      EXPECT_LT(energy(g, m), 1e-12) << m.label();
      for (const auto& t : m.terms) EXPECT_LT(term_expectation(g, t), 1e-12);
    }
    EXPECT_NEAR(infidelity(m.ground_manifold.front(), m), 0.0, 1e-12);
    EXPECT_NEAR(m.initial_state.norm(), 1.0, 1e-12);
  }
}

TEST(Models, DenseSpectrumAgreesWithGroundManifold) {
  for (const auto& m : small_models()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(m));
    const auto& ev = es.eigenvalues();
    std::size_t zeros = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) zeros += std::abs(ev[i]) < 1e-9;
    EXPECT_EQ(zeros, m.ground_manifold.size()) << m.label();
    EXPECT_GT(ev[0], -1e-9);
  }
}

TEST(Models, SingleMagnonGapIsTheLatticeDispersion) {
  // one flipped spin hops with amplitude 1/2 per bond: E(k) = sum_axes (1 - cos k)
  for (std::size_t len : {6u, 10u, 12u}) {
    const auto m = build_heisenberg_single_particle(1, len);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(m));
    EXPECT_NEAR(lowest_nonzero(es.eigenvalues()), 1.0 - std::cos(2 * std::numbers::pi / len), 1e-12);
  }
  const auto m2 = build_heisenberg_single_particle(2, 6);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(m2));
  EXPECT_NEAR(lowest_nonzero(es.eigenvalues()), 1.0 - std::cos(2 * std::numbers::pi / 6), 1e-12);
}

TEST(Models, PeriodicChainGapEqualsOneMagnon) {
  for (std::size_t n : {6u, 8u, 10u}) {
    const auto m = build_heisenberg_chain(n, true, n / 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(m));
    EXPECT_NEAR(lowest_nonzero(es.eigenvalues()), 1.0 - std::cos(2 * std::numbers::pi / n), 1e-10) << n;
  }
}

TEST(Models, QdmTwoByTwoExact) {
  const auto m = build_qdm(2, 2);
  ASSERT_TRUE(m.ground_state.has_value());
  ASSERT_EQ(m.basis->size(), 2u);
  // (|h> + |v>)/sqrt2 up to a global phase
  const auto& g = *m.ground_state;
  EXPECT_NEAR(std::abs(g[0]), 1 / std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(std::abs(g[1]), 1 / std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(std::arg(g[1] / g[0]), 0.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(m));
  EXPECT_NEAR(es.eigenvalues()[1], 1.0, 1e-12);
}

TEST(Models, ClusterIsingHasTwoGroundStates) {
  for (std::size_t n : {6u, 9u}) EXPECT_EQ(build_cluster_ising(n).ground_manifold.size(), 2u);
}

TEST(Models, InvalidParametersThrow) {
  EXPECT_THROW(build_fredkin(7), InvalidArgument);
  EXPECT_THROW(build_heisenberg_chain(8, true, 9), InvalidArgument);
  EXPECT_THROW(build_heisenberg_chain(7, true, 3), InvalidArgument);
  EXPECT_THROW(build_qdm(3, 3), InvalidArgument);
  EXPECT_THROW(build_heisenberg_single_particle(4, 4), InvalidArgument);
}

TEST(Models, LabelsAreCanonical) {
  const auto m = build_heisenberg_chain(8, true, 4);
  EXPECT_EQ(m.label().substr(0, m.name.size() + 1), m.name + "@");
  const auto names = model_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "fredkin"), names.end());
}

TEST(Models, FullSpaceEmbeddingKeepsTheSpectrum) {
  const auto m = build_heisenberg_chain(6, true, 3);
  const auto f = with_full_space(m);
  EXPECT_EQ(f.basis->size(), 64u);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(dense_hamiltonian(m)), b(dense_hamiltonian(f));
  // the sector spectrum is a subset of the full one
  for (Eigen::Index i = 0; i < a.eigenvalues().size(); ++i) {
    double best = 1e9;
    for (Eigen::Index j = 0; j < b.eigenvalues().size(); ++j)
      best = std::min(best, std::abs(a.eigenvalues()[i] - b.eigenvalues()[j]));
    EXPECT_LT(best, 1e-10);
  }
}
