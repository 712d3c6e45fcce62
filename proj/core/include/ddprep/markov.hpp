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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ddprep/models.hpp"

namespace ddprep {

struct MarkovParams {
  double beta = 0.5;
  double gap = 0.1;
  int dim = 1;
  double dyn_exponent = 2.0;
  double lam = 1.0;
  /// e(tau); empty selects scaling_energy(tau, beta, gap).
  std::function<double(std::size_t)> e_of_tau;

  void validate() const;
  double energy(std::size_t tau) const;
  /// clamp(2 e(max(tau, 1)), 0, 1).
  double reset_probability(std::size_t tau) const;
};

struct MarkovState {
  std::size_t t = 0;
  std::size_t tau = 0;
  std::vector<std::size_t> reset_times;
};

/// beta/(2 tau) up to tau = 1/gap, then exp{-4 gap (tau - 1/gap)} decay; e(0) = 1/2.
double scaling_energy(std::size_t tau, double beta, double gap);

/// Exact e(tau) of the single particle on a periodic L^d lattice from the
/// two-site state, evaluated per Bloch momentum of the two-layer-per-axis round.
std::vector<double> single_particle_energy_series(int dim, std::size_t length, std::size_t tau_max);
double single_particle_energy(std::size_t tau, int dim, std::size_t length);

/// Exact single-particle layer-resolved reset kernel. Class c < A is the
/// state right after a hit in layer c; class A is the initial state.
/// hit[c][k] is the hit probability of the (k+1)-th layer applied in class c
/// and energy[c][k] the energy after k layers.
struct ResetKernel {
  std::size_t n_layers = 1;
  std::vector<std::size_t> start_layer;
  std::vector<std::vector<double>> hit;
  std::vector<std::vector<double>> energy;
  double gap = 0;
  double ground_overlap = 0;  // |<Omega|psi(0)>|^2

  std::size_t initial_class() const { return n_layers; }
  std::size_t horizon() const { return hit.empty() ? 0 : hit.front().size(); }
};

ResetKernel single_particle_kernel(const LayeredModel& model, std::size_t max_rounds);
/// One class, one step per round, hit = reset_probability, energy = e(tau).
ResetKernel sm_kernel(const MarkovParams& params, std::size_t max_rounds);

struct MarkovOptions {
  std::size_t n_threads = 1;
  std::size_t record_every = 1;
};

struct MarkovEnsemble {
  std::vector<double> t;
  std::vector<double> mean_energy, sem_energy;
  std::vector<double> mean_infidelity_bound, sem_infidelity_bound;  // min(E/gap, 1)
  std::vector<std::size_t> reset_counts;  // per trajectory, rounds with a reset
  std::vector<std::size_t> hit_counts;    // per trajectory, all hits
  std::vector<std::size_t> gaps;          // rounds between consecutive resets, first from t = 0
  std::vector<std::size_t> last_reset;    // per trajectory, 0 if none
  double mean_resets = 0, sem_resets = 0;
  double mean_hits = 0, sem_hits = 0;
};

MarkovEnsemble simulate_markov(const ResetKernel& kernel, std::size_t n_traj, std::size_t t_max, std::uint64_t seed,
                               const MarkovOptions& opts = {});
MarkovEnsemble simulate_markov(const MarkovParams& params, std::size_t n_traj, std::size_t t_max, std::uint64_t seed,
                               const MarkovOptions& opts = {});

/// Continuity-matched scaling form of the trajectory-averaged energy.
double closed_form_avg_energy(double t, const MarkovParams& params, double amplitude = 1.0);
/// min(1, exp{-lam * u * t}) with u = rate_unit(gap, beta).
double avg_infidelity_bound(double t, const MarkovParams& params);
/// Inverse of avg_infidelity_bound.
double convergence_time_bound(double target, const MarkovParams& params);

struct ResetDistributions {
  std::vector<double> hazard;    // p(tau)
  std::vector<double> survival;  // Q(tau), Q(0) = 1
  std::vector<double> gap_pmf;   // Q'(tau) = Q(tau - 1) p(tau - 1), tau >= 1
  double q_inf = 0;
  double mean_gap = 0;  // T_r conditional on a reset
  double mean_resets = 0;  // (1 - Q_inf)/Q_inf

  /// Q_inf (1 - Q_inf)^n
  double reset_count_pmf(std::size_t n) const;
  /// Asymptotic last-reset density rate * exp{-rate t} with rate = lam * rate_unit.
  static double last_reset_density(double t, const MarkovParams& params);
};

/// From the round-level hazard of `params` up to tau_max.
ResetDistributions reset_distributions(const MarkovParams& params, std::size_t tau_max);
/// From a kernel class at a round boundary.
ResetDistributions reset_distributions(const ResetKernel& kernel, std::size_t cls, std::size_t tau_max);

}  // namespace ddprep
