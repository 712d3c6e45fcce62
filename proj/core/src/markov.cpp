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

#include "ddprep/markov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "ddprep/errors.hpp"
#include "ddprep/fits.hpp"
#include "ddprep/parallel.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/statevec.hpp"

namespace ddprep {

void MarkovParams::validate() const {
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (!(gap > 0)) throw InvalidArgument("gap must be positive");
  if (!(lam > 0)) throw InvalidArgument("lam must be positive");
  if (dim < 1) throw InvalidArgument("dim must be >= 1");
  if (!(dyn_exponent > 0)) throw InvalidArgument("dyn_exponent must be positive");
  if (beta < 1 && lam > 4) throw InvalidArgument("lam must not exceed 4 for beta < 1");
}

double MarkovParams::energy(std::size_t tau) const {
  return e_of_tau ? e_of_tau(tau) : scaling_energy(tau, beta, gap);
}

double MarkovParams::reset_probability(std::size_t tau) const {
  return std::clamp(2.0 * energy(std::max<std::size_t>(tau, 1)), 0.0, 1.0);
}

double scaling_energy(std::size_t tau, double beta, double gap) {
  if (tau == 0) return 0.5;
  const double cross = 1.0 / gap;
  const double t = static_cast<double>(tau);
  if (t <= cross) return 0.5 * beta / t;
  return 0.5 * beta * gap * std::exp(-4.0 * gap * (t - cross));
}

std::vector<double> single_particle_energy_series(int dim, std::size_t length, std::size_t tau_max) {
  if (dim < 1 || dim > 3) throw InvalidArgument("single-particle dimension must be 1, 2 or 3");
  if (length < 4 || length % 2) throw InvalidArgument("single-particle length must be even and >= 4");
  using cplx = std::complex<double>;
  const std::size_t half = length / 2;
  const std::size_t sub = std::size_t{1} << dim;
  std::size_t cells = 1;
  for (int a = 0; a < dim; ++a) cells *= half;

  // Bond families of one layer: w = e_s - phase * e_t with phase = exp(-i q_a) on odd bonds.
  struct Family {
    std::size_t s, t;
    int axis;  // -1 for phase 1
  };
  std::vector<std::vector<Family>> layers;
  for (int a = 0; a < dim; ++a) {
    std::vector<Family> even, odd;
    for (std::size_t s = 0; s < sub; ++s) {
      if (s >> a & 1) continue;
      const std::size_t up = s | (std::size_t{1} << a);
      even.push_back({s, up, -1});
      odd.push_back({up, s, a});
    }
    layers.push_back(even);
    layers.push_back(odd);
  }

  std::vector<Eigen::VectorXcd> v(cells, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sub)));
  std::vector<std::vector<cplx>> phase(cells, std::vector<cplx>(static_cast<std::size_t>(dim)));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (int a = 0; a < dim; ++a) {
      const double q = 2.0 * std::numbers::pi * static_cast<double>(rest % half) / static_cast<double>(half);
      rest /= half;
      phase[c][static_cast<std::size_t>(a)] = std::polar(1.0, -q);
    }
    v[c][0] = v[c][1] = 1.0 / std::sqrt(2.0 * static_cast<double>(cells));
  }
  auto overlap = [&](std::size_t c, const Family& f) {
    const cplx ph = f.axis < 0 ? cplx(1.0) : phase[c][static_cast<std::size_t>(f.axis)];
    return v[c][static_cast<Eigen::Index>(f.s)] - std::conj(ph) * v[c][static_cast<Eigen::Index>(f.t)];
  };
  auto measure = [&] {
    double e = 0, n = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      n += v[c].squaredNorm();
      for (const auto& layer : layers)
        for (const auto& f : layer) e += 0.5 * std::norm(overlap(c, f));
    }
    return std::pair{e, n};
  };

  std::vector<double> out;
  out.reserve(tau_max + 1);
  for (std::size_t tau = 0;; ++tau) {
    const auto [e, n] = measure();
    if (!(n > 1e-300)) throw VanishingNormError("single-particle state norm vanished");
    out.push_back(e / n);
    if (tau == tau_max) break;
    const double scale = 1.0 / std::sqrt(n);
    for (std::size_t c = 0; c < cells; ++c) {
      for (const auto& layer : layers)
        for (const auto& f : layer) {
          const cplx ov = overlap(c, f);
          const cplx ph = f.axis < 0 ? cplx(1.0) : phase[c][static_cast<std::size_t>(f.axis)];
          v[c][static_cast<Eigen::Index>(f.s)] -= 0.5 * ov;
          v[c][static_cast<Eigen::Index>(f.t)] += 0.5 * ph * ov;
        }
      v[c] *= scale;
    }
  }
  return out;
}

double single_particle_energy(std::size_t tau, int dim, std::size_t length) {
  return single_particle_energy_series(dim, length, tau).back();
}

ResetKernel single_particle_kernel(const LayeredModel& model, std::size_t max_rounds) {
  if (model.name != "heisenberg_single_particle")
    throw InvalidArgument("single_particle_kernel needs the single-particle model, got " + model.name);
  const std::size_t a_layers = model.n_layers();
  const std::size_t length = std::stoul(model.parameters.at("length"));
  ResetKernel k;
  k.n_layers = a_layers;
  k.gap = 1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(length));
  k.ground_overlap = 1.0 - infidelity(model.initial_state, model);
  const std::size_t horizon = (max_rounds + 1) * a_layers;
  for (std::size_t c = 0; c <= a_layers; ++c) {
    const std::size_t bond_layer = c < a_layers ? c : 0;
    const std::size_t start = c < a_layers ? (c + 1) % a_layers : 0;
    const auto& term = model.terms[model.layers[bond_layer].front()];
    Configuration ci, cj;
    ci.set(term.support[0]);
    cj.set(term.support[1]);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.basis->size()));
    amps[model.basis->index(ci)] = amps[model.basis->index(cj)] = 1.0 / std::numbers::sqrt2;

    std::vector<double> hit, en;
    hit.reserve(horizon);
    en.reserve(horizon + 1);
    en.push_back(energy(amps, model.terms));
    for (std::size_t step = 0; step < horizon; ++step) {
      if (hit.size() && hit.back() >= 1.0) {
        hit.push_back(1.0);
        en.push_back(en.back());
        continue;
      }
      apply_layer(model, (start + step) % a_layers, amps);
      const double n = amps.squaredNorm();
      hit.push_back(std::clamp(1.0 - n, 0.0, 1.0));
      if (n > 1e-300) amps /= std::sqrt(n);
      en.push_back(n > 1e-300 ? energy(amps, model.terms) : en.back());
    }
    k.start_layer.push_back(start);
    k.hit.push_back(std::move(hit));
    k.energy.push_back(std::move(en));
  }
  return k;
}

ResetKernel sm_kernel(const MarkovParams& params, std::size_t max_rounds) {
  params.validate();
  ResetKernel k;
  k.n_layers = 1;
  k.gap = params.gap;
  k.start_layer = {0, 0};
  std::vector<double> hit, en;
  double survive = 1.0;
  for (std::size_t tau = 0; tau <= max_rounds; ++tau) {
    hit.push_back(params.reset_probability(tau));
    en.push_back(params.energy(tau));
    survive *= 1.0 - hit.back();
  }
  en.push_back(params.energy(max_rounds + 1));
  k.ground_overlap = survive;
  k.hit = {hit, hit};
  k.energy = {en, en};
  return k;
}

namespace {

struct Accumulator {
  std::vector<double> e, e2, f, f2;
  explicit Accumulator(std::size_t n) : e(n), e2(n), f(n), f2(n) {}
};

struct TrajectoryOut {
  std::size_t resets = 0, hits = 0, last = 0;
  std::vector<std::size_t> gaps;
};

}  // namespace

MarkovEnsemble simulate_markov(const ResetKernel& kernel, std::size_t n_traj, std::size_t t_max, std::uint64_t seed,
                               const MarkovOptions& opts) {
  if (n_traj < 1) throw InvalidArgument("n_traj must be >= 1");
  if (opts.record_every < 1) throw InvalidArgument("record_every must be >= 1");
  if (kernel.hit.size() != kernel.n_layers + 1 || kernel.energy.size() != kernel.n_layers + 1)
    throw InvalidArgument("reset kernel needs n_layers + 1 classes");
  const std::size_t a_layers = kernel.n_layers;
  const std::size_t horizon = kernel.horizon();
  if (horizon == 0) throw InvalidArgument("empty reset kernel");
  const std::size_t n_rec = t_max / opts.record_every + 1;
  const double inv_gap = kernel.gap > 0 ? 1.0 / kernel.gap : 0.0;

  constexpr std::size_t kChunk = 64;
  const std::size_t n_chunks = (n_traj + kChunk - 1) / kChunk;
  std::vector<Accumulator> acc(n_chunks, Accumulator(n_rec));
  std::vector<TrajectoryOut> outs(n_traj);

  parallel_for(n_chunks, opts.n_threads, [&](std::size_t chunk) {
    Accumulator& a = acc[chunk];
    for (std::size_t i = chunk * kChunk; i < std::min(n_traj, (chunk + 1) * kChunk); ++i) {
      Rng rng(stable_hash(seed, i));
      TrajectoryOut& out = outs[i];
      std::size_t cls = kernel.initial_class();
      std::size_t k = 0;
      auto record = [&](std::size_t slot) {
        const double e = kernel.energy[cls][std::min(k, horizon)];
        const double f = std::min(1.0, e * inv_gap);
        a.e[slot] += e;
        a.e2[slot] += e * e;
        a.f[slot] += f;
        a.f2[slot] += f * f;
      };
      record(0);
      for (std::size_t r = 1; r <= t_max; ++r) {
        bool reset = false;
        for (std::size_t layer = 0; layer < a_layers; ++layer) {
          const double u = rng.uniform();
          if (u < kernel.hit[cls][std::min(k, horizon - 1)]) {
            ++out.hits;
            reset = true;
            cls = layer;
            k = 0;
          } else {
            ++k;
          }
        }
        if (reset) {
          ++out.resets;
          out.gaps.push_back(r - out.last);
          out.last = r;
        }
        if (r % opts.record_every == 0) record(r / opts.record_every);
      }
    }
  });

  MarkovEnsemble ens;
  const double n = static_cast<double>(n_traj);
  auto sem = [n](double s, double s2) {
    if (n < 2) return 0.0;
    const double mean = s / n;
    return std::sqrt(std::max(0.0, (s2 - n * mean * mean) / (n - 1)) / n);
  };
  for (std::size_t j = 0; j < n_rec; ++j) {
    double se = 0, se2 = 0, sf = 0, sf2 = 0;
    for (const auto& a : acc) {
      se += a.e[j];
      se2 += a.e2[j];
      sf += a.f[j];
      sf2 += a.f2[j];
    }
    ens.t.push_back(static_cast<double>(j * opts.record_every));
    ens.mean_energy.push_back(se / n);
    ens.sem_energy.push_back(sem(se, se2));
    ens.mean_infidelity_bound.push_back(sf / n);
    ens.sem_infidelity_bound.push_back(sem(sf, sf2));
  }
  double sr = 0, sr2 = 0, sh = 0, sh2 = 0;
  for (auto& out : outs) {
    ens.reset_counts.push_back(out.resets);
    ens.hit_counts.push_back(out.hits);
    ens.last_reset.push_back(out.last);
    ens.gaps.insert(ens.gaps.end(), out.gaps.begin(), out.gaps.end());
    sr += static_cast<double>(out.resets);
    sr2 += static_cast<double>(out.resets * out.resets);
    sh += static_cast<double>(out.hits);
    sh2 += static_cast<double>(out.hits * out.hits);
  }
  ens.mean_resets = sr / n;
  ens.sem_resets = sem(sr, sr2);
  ens.mean_hits = sh / n;
  ens.sem_hits = sem(sh, sh2);
  return ens;
}

MarkovEnsemble simulate_markov(const MarkovParams& params, std::size_t n_traj, std::size_t t_max, std::uint64_t seed,
                               const MarkovOptions& opts) {
  return simulate_markov(sm_kernel(params, t_max), n_traj, t_max, seed, opts);
}

double closed_form_avg_energy(double t, const MarkovParams& params, double amplitude) {
  params.validate();
  const double cross = 1.0 / params.gap;
  const bool marginal = std::abs(params.beta - 1.0) < 1e-12;
  auto early = [&](double s) {
    s = std::max(s, 1.0);
    if (marginal) return 1.0 / (1.0 + std::log(s));
    return std::pow(s, -std::max(1.0 - params.beta, 0.0));
  };
  if (t <= cross) return amplitude * early(t);
  const double rate = params.lam * rate_unit(params.gap, params.beta);
  return amplitude * early(cross) * std::exp(-rate * (t - cross));
}

double avg_infidelity_bound(double t, const MarkovParams& params) {
  params.validate();
  const double rate = params.lam * rate_unit(params.gap, params.beta);
  return std::min(1.0, std::exp(-rate * t));
}

double convergence_time_bound(double target, const MarkovParams& params) {
  params.validate();
  if (!(target > 0) || target >= 1) throw InvalidArgument("target infidelity must lie in (0, 1)");
  return std::log(1.0 / target) / (params.lam * rate_unit(params.gap, params.beta));
}

double ResetDistributions::reset_count_pmf(std::size_t n) const {
  return q_inf * std::pow(1.0 - q_inf, static_cast<double>(n));
}

double ResetDistributions::last_reset_density(double t, const MarkovParams& params) {
  const double rate = params.lam * rate_unit(params.gap, params.beta);
  return rate * std::exp(-rate * t);
}

namespace {

ResetDistributions from_hazard(std::vector<double> hazard) {
  ResetDistributions d;
  d.survival.push_back(1.0);
  d.gap_pmf.push_back(0.0);
  double weighted = 0, total = 0;
  for (std::size_t tau = 0; tau < hazard.size(); ++tau) {
    const double q = d.survival.back();
    const double g = q * hazard[tau];
    d.gap_pmf.push_back(g);
    d.survival.push_back(q * (1.0 - hazard[tau]));
    weighted += static_cast<double>(tau + 1) * g;
    total += g;
  }
  d.hazard = std::move(hazard);
  d.q_inf = d.survival.back();
  d.mean_gap = total > 0 ? weighted / total : 0.0;
  d.mean_resets = d.q_inf > 0 ? (1.0 - d.q_inf) / d.q_inf : std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace

ResetDistributions reset_distributions(const MarkovParams& params, std::size_t tau_max) {
  params.validate();
  std::vector<double> hazard;
  for (std::size_t tau = 0; tau < tau_max; ++tau) hazard.push_back(params.reset_probability(tau));
  return from_hazard(std::move(hazard));
}

ResetDistributions reset_distributions(const ResetKernel& kernel, std::size_t cls, std::size_t tau_max) {
  if (cls > kernel.n_layers) throw InvalidArgument("kernel class out of range");
  if (kernel.start_layer[cls] != 0) throw InvalidArgument("kernel class does not start on a round boundary");
  const auto& hit = kernel.hit[cls];
  std::vector<double> hazard;
  for (std::size_t tau = 0; tau < tau_max; ++tau) {
    double survive = 1.0;
    for (std::size_t l = 0; l < kernel.n_layers; ++l)
      survive *= 1.0 - hit[std::min(tau * kernel.n_layers + l, hit.size() - 1)];
    hazard.push_back(1.0 - survive);
  }
  return from_hazard(std::move(hazard));
}

}  // namespace ddprep
