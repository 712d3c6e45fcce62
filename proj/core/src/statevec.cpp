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

#include "ddprep/statevec.hpp"

#include <cmath>
#include <string>

#include "ddprep/errors.hpp"

namespace ddprep {

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amps) : basis_(std::move(basis)), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != basis_->size())
    throw BasisMismatchError("amplitude count " + std::to_string(amps_.size()) + " does not match basis size " +
                             std::to_string(basis_->size()));
}

StateVector StateVector::basis_state(BasisPtr basis, const Configuration& c) {
  StateVector s(basis);
  s[basis->index(c)] = 1.0;
  return s;
}

StateVector StateVector::uniform(BasisPtr basis) {
  StateVector s(basis);
  s.amps_.setConstant(1.0 / std::sqrt(static_cast<double>(s.size())));
  return s;
}

double StateVector::normalize() {
  const double n = amps_.norm();
  if (n > 0) amps_ /= n;
  return n;
}

void require_same_basis(const SectorBasis* a, const SectorBasis* b) {
  if (a == b) return;
  if (!a || !b || a->size() != b->size() || a->n_sites() != b->n_sites() || a->configs() != b->configs())
    throw BasisMismatchError("states live on different sector bases");
}

namespace {

constexpr std::size_t kMaxRank = 16;

inline void group_coefficients(const Eigen::VectorXcd& amps, const TermKernel& k, const std::int32_t* slots,
                               cplx* c) {
  for (std::size_t j = 0; j < k.vectors.size(); ++j) {
    cplx acc = 0;
    for (const auto& e : k.vectors[j]) {
      const auto s = slots[e.pattern];
      if (s >= 0) acc += std::conj(e.value) * amps[s];
    }
    c[j] = acc;
  }
}

void check_term(const Eigen::VectorXcd& amps, const ProjectorTerm& term) {
  if (term.kernel.width == 0) throw InvalidArgument("projector term has no compiled kernel");
  if (term.kernel.vectors.size() > kMaxRank) throw InvalidArgument("projector rank above 16");
  (void)amps;
}

}  // namespace

double term_weight(const Eigen::VectorXcd& amps, const ProjectorTerm& term) {
  check_term(amps, term);
  const auto& k = term.kernel;
  cplx c[kMaxRank];
  double w = 0;
  for (std::size_t g = 0; g < k.n_groups(); ++g) {
    group_coefficients(amps, k, &k.slots[g * k.width], c);
    for (std::size_t j = 0; j < k.vectors.size(); ++j) w += std::norm(c[j]);
  }
  return w;
}

double term_expectation(const StateVector& state, const ProjectorTerm& term) {
  return term_weight(state.amplitudes(), term);
}

void apply_complement(Eigen::VectorXcd& amps, const ProjectorTerm& term) {
  check_term(amps, term);
  const auto& k = term.kernel;
  cplx c[kMaxRank];
  for (std::size_t g = 0; g < k.n_groups(); ++g) {
    const std::int32_t* slots = &k.slots[g * k.width];
    group_coefficients(amps, k, slots, c);
    for (std::size_t j = 0; j < k.vectors.size(); ++j) {
      if (c[j] == cplx(0)) continue;
      for (const auto& e : k.vectors[j]) {
        const auto s = slots[e.pattern];
        if (s >= 0) amps[s] -= c[j] * e.value;
      }
    }
  }
}

void accumulate_projector(const Eigen::VectorXcd& amps, const ProjectorTerm& term, Eigen::VectorXcd& out) {
  check_term(amps, term);
  const auto& k = term.kernel;
  cplx c[kMaxRank];
  for (std::size_t g = 0; g < k.n_groups(); ++g) {
    const std::int32_t* slots = &k.slots[g * k.width];
    group_coefficients(amps, k, slots, c);
    for (std::size_t j = 0; j < k.vectors.size(); ++j) {
      if (c[j] == cplx(0)) continue;
      for (const auto& e : k.vectors[j]) {
        const auto s = slots[e.pattern];
        if (s >= 0) out[s] += c[j] * e.value;
      }
    }
  }
}

void apply_projector(Eigen::VectorXcd& amps, const ProjectorTerm& term) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps.size());
  accumulate_projector(amps, term, out);
  amps.swap(out);
}

MeasurementOutcome measure_term_raw(Eigen::VectorXcd& amps, double& norm2, const ProjectorTerm& term,
                                    std::size_t term_index, double u) {
  const double w1 = term_weight(amps, term);
  double p1 = norm2 > 0 ? w1 / norm2 : 0.0;
  p1 = std::min(1.0, std::max(0.0, p1));
  MeasurementOutcome out{term_index, 0, p1};
  if (u < p1) {
    out.outcome = 1;
    if (std::sqrt(p1) < 1e-14) throw DegenerateCollapseError("outcome-1 branch has vanishing norm");
    apply_projector(amps, term);
    // renormalize immediately; outcome-1 branches may be tiny
    amps /= std::sqrt(w1);
    norm2 = 1.0;
  } else {
    if (std::sqrt(1.0 - p1) < 1e-14) throw DegenerateCollapseError("outcome-0 branch has vanishing norm");
    if (w1 > 0) {
      apply_complement(amps, term);
      const double rest = norm2 - w1;
      // guard against cancellation when p1 is close to one
      norm2 = rest > 1e-6 * norm2 ? rest : amps.squaredNorm();
    }
  }
  return out;
}

MeasurementOutcome measure_term(StateVector& state, const ProjectorTerm& term, std::size_t term_index, Rng& rng) {
  double norm2 = state.squared_norm();
  const auto out = measure_term_raw(state.amplitudes(), norm2, term, term_index, rng.uniform());
  if (norm2 != 1.0) state.amplitudes() /= std::sqrt(norm2);
  return out;
}

void apply_pauli(Eigen::VectorXcd& amps, const SectorBasis& basis, const PauliString& pauli) {
  if (static_cast<std::size_t>(amps.size()) != basis.size()) throw BasisMismatchError("amplitudes do not match basis");
  if (!pauli.x.any()) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      if (amps[idx] != cplx(0)) amps[idx] *= pauli.coefficient(basis[i]);
    }
    return;
  }
  Eigen::VectorXcd out(amps.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto j = basis.find(pauli.target(basis[i]));
    if (j < 0)
      throw SectorEscapeError("pauli " + pauli.to_string(basis.n_sites()) + " maps " +
                              basis[i].to_string(basis.n_sites()) + " outside sector " + basis.label());
    out[j] = pauli.coefficient(basis[i]) * amps[static_cast<Eigen::Index>(i)];
  }
  amps.swap(out);
}

void apply_pauli(StateVector& state, const PauliString& pauli) {
  apply_pauli(state.amplitudes(), *state.basis(), pauli);
}

void apply_z_mask(Eigen::VectorXcd& amps, const SectorBasis& basis, const Configuration& mask) {
  if (!mask.any()) return;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((basis[i] & mask).popcount() & 1u) amps[static_cast<Eigen::Index>(i)] = -amps[static_cast<Eigen::Index>(i)];
}

double energy(const Eigen::VectorXcd& amps, const std::vector<ProjectorTerm>& terms) {
  double e = 0;
  for (const auto& t : terms) e += term_weight(amps, t);
  return e;
}

double energy(const StateVector& state, const LayeredModel& model) {
  require_same_basis(state.basis().get(), model.basis.get());
  return energy(state.amplitudes(), model.terms);
}

StateVector apply_hamiltonian(const StateVector& state, const std::vector<ProjectorTerm>& terms) {
  StateVector out(state.basis());
  for (const auto& t : terms) accumulate_projector(state.amplitudes(), t, out.amplitudes());
  return out;
}

double fidelity(const StateVector& state, const StateVector& reference) {
  require_same_basis(state.basis().get(), reference.basis().get());
  return std::norm(reference.amplitudes().dot(state.amplitudes()));
}

double manifold_overlap(const StateVector& state, const std::vector<StateVector>& manifold) {
  double w = 0;
  for (const auto& g : manifold) w += fidelity(state, g);
  return w;
}

double infidelity(const StateVector& state, const LayeredModel& model) {
  if (!model.ground_manifold.empty()) return std::max(0.0, 1.0 - manifold_overlap(state, model.ground_manifold));
  if (model.ground_state) return std::max(0.0, 1.0 - fidelity(state, *model.ground_state));
  throw InvalidArgument("model " + model.name + " has no ground state");
}

}  // namespace ddprep
