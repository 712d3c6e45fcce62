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

#include "ddprep/resetfree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "ddprep/basis.hpp"
#include "ddprep/errors.hpp"
#include "ddprep/fits.hpp"
#include "ddprep/statevec.hpp"

namespace ddprep {

void apply_layer(const LayeredModel& model, std::size_t a, Eigen::VectorXcd& amps) {
  for (auto t : model.layers.at(a)) apply_complement(amps, model.terms[t]);
}

void apply_projection_round(const LayeredModel& model, const std::vector<std::size_t>& order, Eigen::VectorXcd& amps) {
  for (auto a : order) apply_layer(model, a, amps);
}

void apply_projection_round(const LayeredModel& model, Eigen::VectorXcd& amps) {
  for (std::size_t a = 0; a < model.n_layers(); ++a) apply_layer(model, a, amps);
}

void apply_projection_round_adjoint(const LayeredModel& model, Eigen::VectorXcd& amps) {
  for (std::size_t a = model.n_layers(); a-- > 0;) apply_layer(model, a, amps);
}

std::pair<StateVector, double> apply_projection_round(const LayeredModel& model, const StateVector& state) {
  require_same_basis(state.basis().get(), model.basis.get());
  StateVector out = state;
  apply_projection_round(model, out.amplitudes());
  const double n = out.norm();
  return {std::move(out), n};
}

ProjectionSeries projection_energy_series(const LayeredModel& model, const StateVector& init, std::size_t n_rounds) {
  require_same_basis(init.basis().get(), model.basis.get());
  ProjectionSeries s;
  Eigen::VectorXcd v = init.amplitudes();
  double log_norm = std::log(v.norm());
  v /= v.norm();
  const Eigen::VectorXcd* ground = model.ground_state ? &model.ground_state->amplitudes() : nullptr;
  for (std::size_t tau = 0;; ++tau) {
    s.energy.push_back(energy(v, model.terms));
    s.log_norm.push_back(log_norm);
    s.fidelity.push_back(ground ? std::norm(ground->dot(v)) : std::nan(""));
    if (tau == n_rounds) break;
    apply_projection_round(model, v);
    const double n = v.norm();
    if (!(n > 0) || log_norm + std::log(n) < std::log(1e-300))
      throw VanishingNormError("projected state vanished after " + std::to_string(tau + 1) + " rounds");
    log_norm += std::log(n);
    v /= n;
  }
  return s;
}

namespace {

void check_budget(const LayeredModel& model, std::size_t budget) {
  if (model.basis->size() > budget) throw CapacityError("dense operator exceeds budget", model.basis->size(), budget);
}

template <class F>
Eigen::MatrixXcd dense_from_columns(const LayeredModel& model, F&& apply) {
  const auto dim = static_cast<Eigen::Index>(model.basis->size());
  Eigen::MatrixXcd m(dim, dim);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    v.setZero();
    v[c] = 1.0;
    apply(v);
    m.col(c) = v;
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd projection_round_matrix(const LayeredModel& model, std::size_t budget) {
  check_budget(model, budget);
  return dense_from_columns(model, [&](Eigen::VectorXcd& v) { apply_projection_round(model, v); });
}

Eigen::MatrixXcd build_symmetrized(const LayeredModel& model, std::size_t budget) {
  check_budget(model, budget);
  std::vector<std::size_t> order(model.n_layers());
  std::iota(order.begin(), order.end(), 0);
  if (order.size() == 2) {
    const Eigen::MatrixXcd m = projection_round_matrix(model, budget);
    return 0.5 * (m + m.adjoint());
  }
  const auto dim = static_cast<Eigen::Index>(model.basis->size());
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  std::size_t count = 0;
  do {
    acc += dense_from_columns(model, [&](Eigen::VectorXcd& v) { apply_projection_round(model, order, v); });
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  acc /= static_cast<double>(count);
  return 0.5 * (acc + acc.adjoint());
}

Eigen::MatrixXcd build_symmetrized_factorized(const LayeredModel& model, std::size_t budget) {
  check_budget(model, budget);
  if (model.n_layers() % 2) throw InvalidArgument("factorized symmetrization needs layers in axis pairs");
  const auto dim = static_cast<Eigen::Index>(model.basis->size());
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t axis = 0; axis < model.n_layers() / 2; ++axis) {
    const std::size_t e = 2 * axis, o = 2 * axis + 1;
    const Eigen::MatrixXcd m = dense_from_columns(model, [&](Eigen::VectorXcd& v) {
      apply_layer(model, e, v);
      apply_layer(model, o, v);
    });
    acc = 0.5 * (m + m.adjoint()) * acc;
  }
  return acc;
}

Eigen::MatrixXcd dense_hamiltonian(const LayeredModel& model, std::size_t budget) {
  check_budget(model, budget);
  return dense_from_columns(model, [&](Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (const auto& t : model.terms) accumulate_projector(v, t, out);
    v = out;
  });
}

double correspondence_correction(double lambda_tilde, double tau) {
  const double l = std::log(lambda_tilde);
  return std::exp(-(2.0 / 27.0) * tau * l * l);
}

SpectralCorrespondence eigen_correspondence(const LayeredModel& model, const CorrespondenceOptions& opts) {
  check_budget(model, opts.budget);
  if (opts.window_hi > opts.tau_max || opts.window_lo + 2 > opts.window_hi)
    throw InvalidArgument("correspondence window must lie inside [0, tau_max]");
  SpectralCorrespondence sc;
  sc.exponent = opts.exponent > 0 ? opts.exponent : (model.n_layers() == 3 ? 9.0 / 7.0 : 4.0 / 3.0);
  sc.window_lo = opts.window_lo;
  sc.window_hi = opts.window_hi;

  const Eigen::MatrixXcd pt = build_symmetrized(model, opts.budget);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
  const auto dim = pt.rows();
  const std::size_t n = std::min<std::size_t>(opts.n_states, static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Index col = dim - 1 - static_cast<Eigen::Index>(k);
    CorrespondenceEntry e;
    e.index = k;
    e.lambda_tilde = es.eigenvalues()[col];
    const Eigen::VectorXcd psi = es.eigenvectors().col(col);
    e.energy = energy(psi, model.terms);
    Eigen::VectorXcd v = psi;
    for (std::size_t tau = 0; tau <= opts.tau_max; ++tau) {
      const double nv = v.norm();
      e.norm.push_back(nv);
      e.relative_overlap.push_back(nv > 0 ? std::abs(psi.dot(v)) / nv : 0.0);
      e.energy_series.push_back(nv > 0 ? energy(v, model.terms) / (nv * nv) : 0.0);
      apply_projection_round(model, v);
    }
    std::vector<double> xs, ys;
    for (std::size_t tau = opts.window_lo; tau <= opts.window_hi; ++tau) {
      if (e.norm[tau] <= 0) break;
      xs.push_back(static_cast<double>(tau));
      ys.push_back(std::log(e.norm[tau]));
    }
    e.lambda_fit = xs.size() >= 2 ? std::exp(linear_fit(xs, ys).slope) : 0.0;
    e.lambda_predicted = std::pow(std::max(e.lambda_tilde, 0.0), sc.exponent);
    const double arg = 1.0 - (2.0 / 9.0) * std::abs(std::log(e.lambda_tilde));
    e.lambda_inverse = arg > 0 ? std::exp(-12.0 * (1.0 - std::sqrt(arg))) : 0.0;
    e.overlap_deficit = 1.0 - e.relative_overlap.back();
    sc.entries.push_back(std::move(e));
  }
  return sc;
}

std::vector<StateVector> random_orthogonal_states(const LayeredModel& model, std::size_t count, Rng& rng) {
  std::vector<StateVector> out;
  const auto dim = static_cast<Eigen::Index>(model.basis->size());
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      // Box-Muller for complex Gaussian entries
      const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = cplx(r * std::cos(2 * std::numbers::pi * u2), r * std::sin(2 * std::numbers::pi * u2));
    }
    for (const auto& g : model.ground_manifold) v -= g.amplitudes() * g.amplitudes().dot(v);
    v /= v.norm();
    out.emplace_back(model.basis, v);
  }
  return out;
}

DetectabilityReport detectability_bound_check(const LayeredModel& model, const std::vector<StateVector>& trials,
                                              double gap, double tol) {
  DetectabilityReport rep;
  rep.gap = gap;
  rep.n_layers = model.n_layers();
  const double a2 = static_cast<double>(rep.n_layers * rep.n_layers);
  rep.min_lower_slack = rep.min_upper_slack = std::numeric_limits<double>::infinity();
  for (const auto& trial : trials) {
    require_same_basis(trial.basis().get(), model.basis.get());
    Eigen::VectorXcd v = trial.amplitudes();
    for (const auto& g : model.ground_manifold) v -= g.amplitudes() * g.amplitudes().dot(v);
    const double nv = v.norm();
    if (nv < 1e-12) throw InvalidArgument("trial state lies in the ground manifold");
    v /= nv;
    DetectabilityEntry e;
    e.energy = energy(v, model.terms);
    apply_projection_round(model, v);
    e.round_norm2 = v.squaredNorm();
    e.lower = 1.0 - 4.0 * e.energy;
    e.upper = 1.0 / (1.0 + gap / a2);
    e.lower_ok = e.lower <= e.round_norm2 + tol;
    e.upper_ok = e.round_norm2 <= e.upper + tol;
    rep.violations += !e.lower_ok + !e.upper_ok;
    rep.min_lower_slack = std::min(rep.min_lower_slack, e.round_norm2 - e.lower);
    rep.min_upper_slack = std::min(rep.min_upper_slack, e.upper - e.round_norm2);
    rep.entries.push_back(e);
  }
  return rep;
}

double string_density_enumerated(std::size_t tau, std::size_t n_walls) {
  if (tau == 0 || tau > 30) throw InvalidArgument("string enumeration needs 1 <= tau <= 30");
  std::size_t hits = 0;
  const std::size_t total = std::size_t{1} << tau;
  for (std::size_t s = 0; s < total; ++s) {
    const std::size_t walls = static_cast<std::size_t>(std::popcount((s ^ (s >> 1)) & ((total >> 1) - 1)));
    hits += walls == n_walls;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double string_density_binomial(std::size_t tau, std::size_t tau_eff) {
  if (tau_eff > tau || 2 * (tau - tau_eff) > tau) return 0.0;
  const double n = static_cast<double>(tau), k = static_cast<double>(2 * (tau - tau_eff));
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) - n * std::numbers::ln2);
}

double string_density_gaussian(double tau, double tau_eff) {
  const double d = tau_eff - 0.75 * tau;
  return std::sqrt(8.0 / (tau * std::numbers::pi)) * std::exp(-8.0 / tau * d * d);
}

}  // namespace ddprep
