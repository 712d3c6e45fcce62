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
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ddprep/models.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/state.hpp"

namespace ddprep {

/// Applies (1 - P_i) for every term of layer `a`.
void apply_layer(const LayeredModel& model, std::size_t a, Eigen::VectorXcd& amps);

/// One reset-free round: layers in protocol order, unnormalized, in place.
void apply_projection_round(const LayeredModel& model, Eigen::VectorXcd& amps);
/// Adjoint round: layers in reverse order.
void apply_projection_round_adjoint(const LayeredModel& model, Eigen::VectorXcd& amps);
/// Rounds with an explicit layer order.
void apply_projection_round(const LayeredModel& model, const std::vector<std::size_t>& order, Eigen::VectorXcd& amps);

/// Returns the unnormalized image and its norm.
std::pair<StateVector, double> apply_projection_round(const LayeredModel& model, const StateVector& state);

struct ProjectionSeries {
  std::vector<double> energy;    // e(tau) of the renormalized state, tau = 0..n
  std::vector<double> log_norm;  // log ||P^tau psi||
  std::vector<double> fidelity;  // ground fidelity of the renormalized state
};

ProjectionSeries projection_energy_series(const LayeredModel& model, const StateVector& init, std::size_t n_rounds);

/// Dense matrix of the round operator in the sector basis.
Eigen::MatrixXcd projection_round_matrix(const LayeredModel& model, std::size_t budget = 4096);

/// (P + P^dagger)/2 for two layers; the average over all layer orderings otherwise.
Eigen::MatrixXcd build_symmetrized(const LayeredModel& model, std::size_t budget = 4096);

/// Product over axes of the per-axis two-layer symmetrization (single-particle, d > 1).
Eigen::MatrixXcd build_symmetrized_factorized(const LayeredModel& model, std::size_t budget = 4096);

Eigen::MatrixXcd dense_hamiltonian(const LayeredModel& model, std::size_t budget = 4096);

struct CorrespondenceEntry {
  std::size_t index = 0;       // position in descending order of lambda-tilde
  double lambda_tilde = 0;
  double energy = 0;           // <psi~|H|psi~>
  double lambda_fit = 0;       // decay factor of ||P^tau psi~|| over the window
  double lambda_predicted = 0; // lambda_tilde^exponent
  double lambda_inverse = 0;   // exp{-12(1 - sqrt(1 - 2/9 |log lambda_tilde|))}
  std::vector<double> norm;            // ||P^tau psi~||, tau = 0..tau_max
  std::vector<double> relative_overlap;  // |<psi~|P^tau psi~>| / ||P^tau psi~||
  std::vector<double> energy_series;     // energy of the normalized P^tau psi~
  double overlap_deficit = 0;  // 1 - relative_overlap at tau_max
};

struct SpectralCorrespondence {
  double exponent = 4.0 / 3.0;
  std::size_t window_lo = 20, window_hi = 80;
  std::vector<CorrespondenceEntry> entries;  // entries[0] is the ground entry
};

struct CorrespondenceOptions {
  std::size_t n_states = 4;
  std::size_t tau_max = 80;
  std::size_t window_lo = 20;
  std::size_t window_hi = 80;
  /// 0 selects 4/3 for two layers and 9/7 for three.
  double exponent = 0;
  /// Eigenvalues of the symmetrized operator closer than this are merged.
  double degeneracy_tol = 1e-9;
  std::size_t budget = 4096;
};

SpectralCorrespondence eigen_correspondence(const LayeredModel& model, const CorrespondenceOptions& opts = {});

/// exp{-(2/27) tau |log lambda_tilde|^2}
double correspondence_correction(double lambda_tilde, double tau);

struct DetectabilityEntry {
  double energy = 0;
  double round_norm2 = 0;  // ||P psi||^2
  double lower = 0;        // 1 - 4<H>
  double upper = 0;        // (1 + gap / A^2)^-1
  bool lower_ok = true, upper_ok = true;
};

struct DetectabilityReport {
  double gap = 0;
  std::size_t n_layers = 0;
  std::vector<DetectabilityEntry> entries;
  std::size_t violations = 0;
  double min_lower_slack = 0, min_upper_slack = 0;
};

/// Trial states are orthogonalized against the ground manifold and normalized.
DetectabilityReport detectability_bound_check(const LayeredModel& model, const std::vector<StateVector>& trials,
                                              double gap, double tol = 1e-12);

/// Random normalized states orthogonal to the ground manifold.
std::vector<StateVector> random_orthogonal_states(const LayeredModel& model, std::size_t count, Rng& rng);

/// Fraction of the 2^tau strings over {P, P^dagger} with exactly `n_walls`
/// adjacent P/P^dagger boundaries, by explicit enumeration (tau <= 30).
double string_density_enumerated(std::size_t tau, std::size_t n_walls);
/// binomial(tau, 2(tau - tau_eff)) / 2^tau
double string_density_binomial(std::size_t tau, std::size_t tau_eff);
/// Large-tau Gaussian limit sqrt(8/(pi tau)) exp{-8/tau (tau_eff - 3 tau/4)^2}.
double string_density_gaussian(double tau, double tau_eff);

}  // namespace ddprep
