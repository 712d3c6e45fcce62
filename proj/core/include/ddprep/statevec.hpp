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
#include <vector>

#include "ddprep/models.hpp"
#include "ddprep/pauli.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/state.hpp"

namespace ddprep {

struct MeasurementOutcome {
  std::size_t term_index = 0;
  int outcome = 0;
  double pre_probability_of_1 = 0;
};

/// <psi|P|psi> for a normalized state.
double term_expectation(const StateVector& state, const ProjectorTerm& term);

/// Born-rule measurement of one projector; collapses and renormalizes
/// `state` in place. Consumes exactly one uniform draw.
MeasurementOutcome measure_term(StateVector& state, const ProjectorTerm& term, std::size_t term_index, Rng& rng);

/// Same, on raw amplitudes whose squared norm is `norm2`; the result is left
/// unnormalized with `norm2` updated. `u` is the uniform draw.
MeasurementOutcome measure_term_raw(Eigen::VectorXcd& amps, double& norm2, const ProjectorTerm& term,
                                    std::size_t term_index, double u);

/// psi <- (1 - P) psi, unnormalized.
void apply_complement(Eigen::VectorXcd& amps, const ProjectorTerm& term);
/// psi <- P psi, unnormalized.
void apply_projector(Eigen::VectorXcd& amps, const ProjectorTerm& term);
/// out += P psi.
void accumulate_projector(const Eigen::VectorXcd& amps, const ProjectorTerm& term, Eigen::VectorXcd& out);
/// Unnormalized <psi|P|psi>.
double term_weight(const Eigen::VectorXcd& amps, const ProjectorTerm& term);

void apply_pauli(StateVector& state, const PauliString& pauli);
void apply_pauli(Eigen::VectorXcd& amps, const SectorBasis& basis, const PauliString& pauli);
/// Multiplies every amplitude by (-1)^{|c & mask|}.
void apply_z_mask(Eigen::VectorXcd& amps, const SectorBasis& basis, const Configuration& mask);

double energy(const StateVector& state, const LayeredModel& model);
double energy(const Eigen::VectorXcd& amps, const std::vector<ProjectorTerm>& terms);
StateVector apply_hamiltonian(const StateVector& state, const std::vector<ProjectorTerm>& terms);

double fidelity(const StateVector& state, const StateVector& reference);
/// Weight of `state` inside the span of an orthonormal manifold.
double manifold_overlap(const StateVector& state, const std::vector<StateVector>& manifold);
/// 1 - overlap with the model's zero-energy manifold (or ground state).
double infidelity(const StateVector& state, const LayeredModel& model);

}  // namespace ddprep
