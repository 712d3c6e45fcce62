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
#include <numeric>

#include "ddprep/errors.hpp"
#include "ddprep/fits.hpp"
#include "ddprep/markov.hpp"
#include "ddprep/models.hpp"
#include "ddprep/statevec.hpp"

using namespace ddprep;

namespace {

// Exact age distribution of the one-class chain, propagated round by round.
std::vector<double> exact_mean_energy(const MarkovParams& p, std::size_t t_max) {
  std::vector<double> age(t_max + 2, 0.0), out;
  age[0] = 1.0;
  auto mean = [&] {
    double e = 0;
    for (std::size_t k = 0; k < age.size(); ++k) e += age[k] * p.energy(k);
    return e;
  };
  out.push_back(mean());
  for (std::size_t t = 1; t <= t_max; ++t) {
    std::vector<double> next(age.size(), 0.0);
    for (std::size_t k = 0; k + 1 < age.size(); ++k) {
      const double h = p.reset_probability(k);
      next[0] += age[k] * h;
      next[k + 1] += age[k] * (1 - h);
    }
    age = next;
    out.push_back(mean());
  }
  return out;
}

}  // namespace

TEST(Markov, ScalingEnergyBranches) {
  const double gap = 0.05;
  EXPECT_DOUBLE_EQ(scaling_energy(0, 0.5, gap), 0.5);
  EXPECT_DOUBLE_EQ(scaling_energy(4, 0.5, gap), 0.5 * 0.5 / 4);
  EXPECT_DOUBLE_EQ(scaling_energy(20, 0.5, gap), 0.5 * 0.5 / 20);
  EXPECT_NEAR(scaling_energy(30, 0.5, gap), 0.5 * 0.5 * gap * std::exp(-4 * gap * 10), 1e-15);
}

TEST(Markov, HazardIsClampedAndSkipsRoundZero) {
  MarkovParams p;
  p.beta = 2.0;
  p.gap = 0.1;
  p.lam = 1.0;
  EXPECT_DOUBLE_EQ(p.reset_probability(0), p.reset_probability(1));
  EXPECT_DOUBLE_EQ(p.reset_probability(1), 1.0);
  EXPECT_DOUBLE_EQ(p.reset_probability(4), 2 * 1.0 / 4);
  p.e_of_tau = [](std::size_t) { return -1.0; };
  EXPECT_DOUBLE_EQ(p.reset_probability(3), 0.0);
}

TEST(Markov, ValidationRejectsFastRatesBelowMarginality) {
  MarkovParams p;
  p.beta = 0.5;
  p.lam = 4.5;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.beta = 1.5;
  EXPECT_NO_THROW(p.validate());
  p.gap = 0;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Markov, ClosedFormIsContinuousAndDecays) {
  for (double beta : {0.5, 1.0, 2.0}) {
    MarkovParams p;
    p.beta = beta;
    p.gap = 0.02;
    const double cross = 1 / p.gap;
    EXPECT_NEAR(closed_form_avg_energy(cross - 1e-9, p), closed_form_avg_energy(cross + 1e-9, p), 1e-8);
    const double u = rate_unit(p.gap, beta);
    const double ratio = closed_form_avg_energy(cross + 10, p) / closed_form_avg_energy(cross, p);
    EXPECT_NEAR(ratio, std::exp(-10 * u), 1e-12);
  }
  MarkovParams half;
  EXPECT_NEAR(closed_form_avg_energy(4, half), 0.5, 1e-15);
  MarkovParams marginal;
  marginal.beta = 1.0;
  EXPECT_NEAR(closed_form_avg_energy(std::exp(1.0), marginal), 0.5, 1e-15);
}

TEST(Markov, InfidelityBoundInverse) {
  MarkovParams p;
  p.gap = 0.03;
  for (double target : {0.5, 0.1, 0.01}) {
    const double t = convergence_time_bound(target, p);
    EXPECT_NEAR(avg_infidelity_bound(t, p), target, 1e-12);
  }
  EXPECT_DOUBLE_EQ(avg_infidelity_bound(0, p), 1.0);
}

TEST(Markov, DistributionsFromTheHazardProduct) {
  MarkovParams p;
  p.beta = 0.5;
  p.gap = 0.05;
  const std::size_t tau_max = 400;
  const auto d = reset_distributions(p, tau_max);
  double q = 1.0;
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    const double h = p.reset_probability(tau - 1);
    EXPECT_NEAR(d.gap_pmf[tau], q * h, 1e-14) << tau;
    q *= 1 - h;
    EXPECT_NEAR(d.survival[tau], q, 1e-14) << tau;
  }
  const double total = std::accumulate(d.gap_pmf.begin(), d.gap_pmf.end(), 0.0) + d.survival.back();
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(d.q_inf, d.survival.back(), 1e-6);
  double pmf = 0;
  for (std::size_t n = 0; n < 5000; ++n) pmf += d.reset_count_pmf(n);
  EXPECT_NEAR(pmf, 1.0, 1e-9);
}

TEST(Markov, MonteCarloMatchesExactAgePropagation) {
  for (double beta : {0.5, 1.5}) {
    MarkovParams p;
    p.beta = beta;
    p.gap = 0.05;
    const std::size_t t_max = 80;
    const auto exact = exact_mean_energy(p, t_max);
    const auto mc = simulate_markov(p, 20000, t_max, 17);
    ASSERT_EQ(mc.mean_energy.size(), exact.size());
    for (std::size_t t = 1; t <= t_max; ++t)
      EXPECT_NEAR(mc.mean_energy[t], exact[t], 4.5 * mc.sem_energy[t] + 1e-12) << "beta " << beta << " t " << t;
  }
}

TEST(Markov, ThreadCountDoesNotChangeResults) {
  MarkovParams p;
  MarkovOptions one, four;
  four.n_threads = 4;
  const auto a = simulate_markov(p, 300, 50, 5, one);
  const auto b = simulate_markov(p, 300, 50, 5, four);
  EXPECT_EQ(a.mean_energy, b.mean_energy);
  EXPECT_EQ(a.hit_counts, b.hit_counts);
  EXPECT_EQ(a.gaps, b.gaps);
}

TEST(Markov, RecordEverySubsamples) {
  MarkovParams p;
  MarkovOptions o;
  o.record_every = 10;
  const auto a = simulate_markov(p, 50, 100, 2, o);
  const auto full = simulate_markov(p, 50, 100, 2);
  ASSERT_EQ(a.t.size(), 11u);
  for (std::size_t j = 0; j < a.t.size(); ++j) EXPECT_DOUBLE_EQ(a.mean_energy[j], full.mean_energy[10 * j]);
}

TEST(SingleParticleKernel, NeverResetProbabilityIsTheGroundOverlap) {
  for (std::size_t len : {8u, 16u}) {
    const auto m = build_heisenberg_single_particle(1, len);
    const auto k = single_particle_kernel(m, 3000);
    // uniform ground state against a two-site initial state
    const double overlap = 2.0 / static_cast<double>(len);
    EXPECT_NEAR(k.ground_overlap, overlap, 1e-12);
    EXPECT_NEAR(std::abs(k.ground_overlap - fidelity(m.initial_state, *m.ground_state)), 0.0, 1e-12);
    const auto d = reset_distributions(k, k.initial_class(), 3000);
    EXPECT_NEAR(d.q_inf, overlap, 1e-6);
    EXPECT_NEAR(k.energy[k.initial_class()][0], energy(m.initial_state, m), 1e-12);
  }
}

TEST(SingleParticleKernel, HitCountsAreGeometric) {
  const std::size_t len = 12;
  const auto m = build_heisenberg_single_particle(1, len);
  const auto k = single_particle_kernel(m, 2000);
  const auto ens = simulate_markov(k, 6000, 2000, 3);
  // each hit restarts from a bond state with the same ground overlap
  const double q = 2.0 / len;
  EXPECT_NEAR(ens.mean_hits, (1 - q) / q, 4.5 * ens.sem_hits);
}

TEST(SingleParticleEnergy, InitialValues) {
  EXPECT_DOUBLE_EQ(single_particle_energy(0, 1, 32), 0.5);
  EXPECT_DOUBLE_EQ(single_particle_energy(0, 2, 16), 1.5);
  const auto m = build_heisenberg_single_particle(2, 8);
  EXPECT_NEAR(energy(m.initial_state, m), single_particle_energy(0, 2, 8), 1e-12);
  EXPECT_THROW(single_particle_energy_series(1, 7, 10), InvalidArgument);
}
