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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddprep/models.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/state.hpp"

namespace ddprep {

enum class CorrectionMode { deterministic, random_pauli, none };

std::string to_string(CorrectionMode mode);
CorrectionMode parse_correction_mode(const std::string& s);

struct ProtocolConfig {
  std::size_t max_rounds = 100;
  /// Stop after this many consecutive rounds without a 1-outcome; 0 disables.
  std::size_t stop_clean_rounds = 0;
  std::size_t record_every = 1;
  double dephasing_p = 0.0;
  /// Accept a trajectory iff its hit count is at most this value.
  std::optional<std::size_t> postselect_max_hits;
  /// Count hits only over the last `postselect_window` rounds (0 = all rounds).
  std::size_t postselect_window = 0;
  CorrectionMode correction_mode = CorrectionMode::deterministic;

  void validate() const;
};

struct HitEvent {
  std::size_t round = 0;  // 1-based round in which the hit happened
  std::size_t layer = 0;
  std::size_t term_index = 0;
  friend bool operator==(const HitEvent&, const HitEvent&) = default;
};

struct RoundEvents {
  std::vector<HitEvent> hits;
  std::size_t dephasing_flips = 0;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::size_t rounds_run = 0;
  bool converged = false;
  /// Observables after round r for r in recorded_rounds (round 0 = initial state).
  std::vector<std::size_t> recorded_rounds;
  std::vector<double> energies;
  std::vector<double> infidelities;
  /// Cumulative hit count at each recorded round.
  std::vector<std::size_t> hit_counts;
  std::vector<HitEvent> hit_events;
  std::vector<std::size_t> reset_rounds;
  std::vector<std::size_t> reset_gaps;
  std::size_t rounds_since_last_hit = 0;
  bool accepted = true;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

struct SeriesStat {
  std::vector<double> mean;
  std::vector<double> sem;
};

struct EnsembleSummary {
  std::size_t n_trajectories = 0;
  std::size_t n_accepted = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> rounds;
  /// Over accepted trajectories.
  SeriesStat energy;
  SeriesStat infidelity;
  /// Over every trajectory regardless of postselection.
  SeriesStat energy_all;
  SeriesStat infidelity_all;
  std::vector<std::size_t> n_alive;
  double acceptance_rate = 1.0;
  /// Round at which each converged trajectory stopped.
  std::vector<std::size_t> convergence_times;
  std::vector<TrajectoryRecord> records;  // kept only when requested
};

/// One round of layered measurements with feedback, in place on raw
/// amplitudes of unit norm.
RoundEvents run_round(Eigen::VectorXcd& amps, const LayeredModel& model, const ProtocolConfig& cfg, Rng& rng,
                      std::size_t round_index = 1);
RoundEvents run_round(StateVector& state, const LayeredModel& model, const ProtocolConfig& cfg, Rng& rng,
                      std::size_t round_index = 1);

TrajectoryRecord run_trajectory(const LayeredModel& model, const StateVector& init, const ProtocolConfig& cfg,
                                std::uint64_t seed);

struct EnsembleOptions {
  std::size_t n_threads = 1;
  bool keep_records = false;
};

EnsembleSummary run_ensemble(const LayeredModel& model, const StateVector& init, const ProtocolConfig& cfg,
                             std::size_t n_traj, std::uint64_t master_seed, const EnsembleOptions& opts = {});

/// Aggregates records (in index order) into a summary. When
/// cfg.postselect_max_hits is set it decides acceptance; otherwise each
/// record's own flag does.
EnsembleSummary summarize(const std::vector<TrajectoryRecord>& records, const ProtocolConfig& cfg,
                          std::uint64_t master_seed);

/// Hit threshold whose pilot acceptance rate is closest to `target_rate`.
std::size_t choose_postselection_threshold(const std::vector<TrajectoryRecord>& pilot, double target_rate,
                                           std::size_t window, std::size_t at_round);

/// Hits within the last `window` rounds before and including `at_round`.
std::size_t hits_in_window(const TrajectoryRecord& rec, std::size_t window, std::size_t at_round);

/// Worker count from DDPREP_THREADS, else hardware concurrency.
std::size_t default_thread_count();

// Exact channel oracle.

struct ChannelSeries {
  std::vector<double> ground_overlap;  // Tr(Psi rho_t), t = 0..n_rounds
  std::vector<double> energy;          // Tr(H rho_t)
  std::vector<double> trace;
};

ChannelSeries evolve_channel_exact(const LayeredModel& model, const Eigen::MatrixXcd& rho0, const ProtocolConfig& cfg,
                                   std::size_t n_rounds, std::size_t budget = 4096);

/// Applies one round of the averaged channel to rho in place.
void apply_channel_round(const LayeredModel& model, Eigen::MatrixXcd& rho, const ProtocolConfig& cfg);

Eigen::MatrixXcd density_from_state(const StateVector& s);

}  // namespace ddprep
