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

#include <cmath>

#include "ddprep/errors.hpp"
#include "ddprep/protocol.hpp"
#include "ddprep/statevec.hpp"

namespace ddprep {

namespace {

// B = P rho, column by column.
Eigen::MatrixXcd left_project(const ProjectorTerm& term, const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  Eigen::VectorXcd col(rho.rows()), out(rho.rows());
  for (Eigen::Index c = 0; c < rho.cols(); ++c) {
    col = rho.col(c);
    out.setZero();
    accumulate_projector(col, term, out);
    b.col(c) = out;
  }
  return b;
}

// U rho U^dagger for a Pauli string.
Eigen::MatrixXcd conjugate(const SectorBasis& basis, const PauliString& u, const Eigen::MatrixXcd& rho) {
  const auto dim = rho.rows();
  std::vector<Eigen::Index> target(static_cast<std::size_t>(dim));
  std::vector<cplx> coef(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& c = basis[static_cast<std::size_t>(i)];
    const auto j = basis.find(u.target(c));
    if (j < 0) throw SectorEscapeError("pauli " + u.to_string(basis.n_sites()) + " leaves sector " + basis.label());
    target[static_cast<std::size_t>(i)] = j;
    coef[static_cast<std::size_t>(i)] = u.coefficient(c);
  }
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r)
      out(target[static_cast<std::size_t>(r)], target[static_cast<std::size_t>(c)]) =
          coef[static_cast<std::size_t>(r)] * rho(r, c) * std::conj(coef[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace

Eigen::MatrixXcd density_from_state(const StateVector& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

void apply_channel_round(const LayeredModel& model, Eigen::MatrixXcd& rho, const ProtocolConfig& cfg) {
  const SectorBasis& basis = *model.basis;
  for (const auto& layer : model.layers) {
    for (auto t : layer) {
      const auto& term = model.terms[t];
      const Eigen::MatrixXcd b = left_project(term, rho);                 // P rho
      const Eigen::MatrixXcd prp = left_project(term, b.adjoint()).adjoint();  // P rho P
      Eigen::MatrixXcd kept = rho - b - b.adjoint() + prp;                // (1-P) rho (1-P)
      switch (cfg.correction_mode) {
        case CorrectionMode::deterministic:
          kept += conjugate(basis, term.correction, prp);
          break;
        case CorrectionMode::random_pauli: {
          const auto paulis = all_paulis(term.support);
          Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
          for (const auto& u : paulis) avg += conjugate(basis, u, prp);
          kept += avg / static_cast<double>(paulis.size());
          break;
        }
        case CorrectionMode::none:
          kept += prp;
          break;
      }
      rho = 0.5 * (kept + kept.adjoint());
    }
    if (cfg.dephasing_p > 0) {
      for (std::size_t s = 0; s < basis.n_sites(); ++s) {
        const PauliString z = PauliString::single(s, 'Z');
        rho = (1.0 - cfg.dephasing_p) * rho + cfg.dephasing_p * conjugate(basis, z, rho);
      }
    }
  }
}

ChannelSeries evolve_channel_exact(const LayeredModel& model, const Eigen::MatrixXcd& rho0, const ProtocolConfig& cfg,
                                   std::size_t n_rounds, std::size_t budget) {
  const std::size_t dim = model.basis->size();
  if (dim > budget) throw CapacityError("exact channel exceeds dense budget", dim, budget);
  if (static_cast<std::size_t>(rho0.rows()) != dim || rho0.rows() != rho0.cols())
    throw BasisMismatchError("density matrix does not match the model basis");
  if (model.ground_manifold.empty()) throw InvalidArgument("exact channel needs a ground manifold");

  ChannelSeries out;
  Eigen::MatrixXcd rho = rho0;
  auto observe = [&] {
    double ov = 0;
    for (const auto& g : model.ground_manifold) ov += std::real(g.amplitudes().dot(rho * g.amplitudes()));
    out.ground_overlap.push_back(ov);
    double e = 0;
    for (const auto& term : model.terms) e += std::real(left_project(term, rho).trace());
    out.energy.push_back(e);
    out.trace.push_back(std::real(rho.trace()));
  };
  observe();
  for (std::size_t r = 0; r < n_rounds; ++r) {
    apply_channel_round(model, rho, cfg);
    observe();
  }
  return out;
}

}  // namespace ddprep
