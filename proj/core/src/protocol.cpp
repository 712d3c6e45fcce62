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

#include "ddprep/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "ddprep/errors.hpp"
#include "ddprep/parallel.hpp"
#include "ddprep/statevec.hpp"

namespace ddprep {

std::string to_string(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::deterministic:
      return "deterministic";
    case CorrectionMode::random_pauli:
      return "random_pauli";
    case CorrectionMode::none:
      return "none";
  }
  return "?";
}

CorrectionMode parse_correction_mode(const std::string& s) {
  if (s == "deterministic") return CorrectionMode::deterministic;
  if (s == "random_pauli") return CorrectionMode::random_pauli;
  if (s == "none") return CorrectionMode::none;
  throw InvalidArgument("unknown correction mode '" + s + "' (deterministic, random_pauli, none)");
}

void ProtocolConfig::validate() const {
  if (max_rounds < 1) throw InvalidArgument("max_rounds must be >= 1");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  if (!(dephasing_p >= 0.0 && dephasing_p < 1.0)) throw InvalidArgument("dephasing_p must lie in [0,1)");
}

namespace {

PauliString random_local_pauli(const std::vector<std::size_t>& support, Rng& rng) {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(support.size(), 'I');
  for (auto& ch : s) ch = letters[rng.below(4)];
  return PauliString::from_letters(support, s);
}

double raw_infidelity(const Eigen::VectorXcd& amps, const LayeredModel& model) {
  double w = 0;
  if (!model.ground_manifold.empty()) {
    for (const auto& g : model.ground_manifold) w += std::norm(g.amplitudes().dot(amps));
  } else if (model.ground_state) {
    w = std::norm(model.ground_state->amplitudes().dot(amps));
  } else {
    return std::nan("");
  }
  return std::max(0.0, 1.0 - w);
}

}  // namespace

RoundEvents run_round(Eigen::VectorXcd& amps, const LayeredModel& model, const ProtocolConfig& cfg, Rng& rng,
                      std::size_t round_index) {
  RoundEvents ev;
  const SectorBasis& basis = *model.basis;
  double norm2 = amps.squaredNorm();
  for (std::size_t a = 0; a < model.layers.size(); ++a) {
    for (auto t : model.layers[a]) {
      const auto& term = model.terms[t];
      const auto m = measure_term_raw(amps, norm2, term, t, rng.uniform());
      if (m.outcome != 1) continue;
      ev.hits.push_back({round_index, a, t});
      switch (cfg.correction_mode) {
        case CorrectionMode::deterministic:
          apply_pauli(amps, basis, term.correction);
          break;
        case CorrectionMode::random_pauli:
          apply_pauli(amps, basis, random_local_pauli(term.support, rng));
          break;
        case CorrectionMode::none:
          break;
      }
    }
    if (cfg.dephasing_p > 0) {
      Configuration flips;
      for (std::size_t s = 0; s < basis.n_sites(); ++s) {
        if (rng.uniform() < cfg.dephasing_p) {
          flips.set(s);
          ++ev.dephasing_flips;
        }
      }
      apply_z_mask(amps, basis, flips);
    }
  }
  const double n = amps.norm();
  if (!(n > 0)) throw DegenerateCollapseError("state vanished during a round");
  amps /= n;
  return ev;
}

RoundEvents run_round(StateVector& state, const LayeredModel& model, const ProtocolConfig& cfg, Rng& rng,
                      std::size_t round_index) {
  require_same_basis(state.basis().get(), model.basis.get());
  return run_round(state.amplitudes(), model, cfg, rng, round_index);
}

std::size_t hits_in_window(const TrajectoryRecord& rec, std::size_t window, std::size_t at_round) {
  std::size_t n = 0;
  for (const auto& h : rec.hit_events) {
    if (h.round > at_round) break;
    if (window == 0 || h.round + window > at_round) ++n;
  }
  return n;
}

TrajectoryRecord run_trajectory(const LayeredModel& model, const StateVector& init, const ProtocolConfig& cfg,
                                std::uint64_t seed) {
  cfg.validate();
  require_same_basis(init.basis().get(), model.basis.get());
  TrajectoryRecord rec;
  rec.seed = seed;
  Rng rng(seed);
  Eigen::VectorXcd amps = init.amplitudes();
  amps /= amps.norm();

  auto record = [&](std::size_t r) {
    rec.recorded_rounds.push_back(r);
    rec.energies.push_back(energy(amps, model.terms));
    rec.infidelities.push_back(raw_infidelity(amps, model));
    rec.hit_counts.push_back(rec.hit_events.size());
  };
  record(0);

  std::size_t clean = 0, last_reset = 0;
  for (std::size_t r = 1; r <= cfg.max_rounds; ++r) {
    auto ev = run_round(amps, model, cfg, rng, r);
    rec.rounds_run = r;
    if (!ev.hits.empty()) {
      rec.hit_events.insert(rec.hit_events.end(), ev.hits.begin(), ev.hits.end());
      rec.reset_rounds.push_back(r);
      rec.reset_gaps.push_back(r - last_reset);
      last_reset = r;
      clean = 0;
    } else {
      ++clean;
    }
    if (r % cfg.record_every == 0) record(r);
    if (cfg.stop_clean_rounds > 0 && clean >= cfg.stop_clean_rounds) {
      rec.converged = true;
      break;
    }
  }
  rec.rounds_since_last_hit = rec.rounds_run - last_reset;
  if (cfg.postselect_max_hits)
    rec.accepted = hits_in_window(rec, cfg.postselect_window, rec.rounds_run) <= *cfg.postselect_max_hits;
  return rec;
}

namespace {

struct Accumulator {
  std::vector<double> sum, sum2;
  std::vector<std::size_t> count;
  explicit Accumulator(std::size_t n) : sum(n, 0.0), sum2(n, 0.0), count(n, 0) {}
  void add(std::size_t i, double v) {
    sum[i] += v;
    sum2[i] += v * v;
    ++count[i];
  }
  SeriesStat finish() const {
    SeriesStat s;
    s.mean.resize(sum.size());
    s.sem.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const double n = static_cast<double>(count[i]);
      if (count[i] == 0) {
        s.mean[i] = std::nan("");
        s.sem[i] = std::nan("");
        continue;
      }
      s.mean[i] = sum[i] / n;
      if (count[i] < 2) {
        s.sem[i] = 0.0;
      } else {
        const double var = std::max(0.0, (sum2[i] - n * s.mean[i] * s.mean[i]) / (n - 1.0));
        s.sem[i] = std::sqrt(var / n);
      }
    }
    return s;
  }
};

}  // namespace

EnsembleSummary summarize(const std::vector<TrajectoryRecord>& records, const ProtocolConfig& cfg,
                          std::uint64_t master_seed) {
  EnsembleSummary sum;
  sum.n_trajectories = records.size();
  sum.master_seed = master_seed;
  for (std::size_t r = 0; r <= cfg.max_rounds; r += cfg.record_every) sum.rounds.push_back(r);
  const std::size_t n = sum.rounds.size();
  Accumulator e_acc(n), f_acc(n), e_all(n), f_all(n);
  sum.n_alive.assign(n, 0);
  for (const auto& rec : records) {
    const bool accepted = cfg.postselect_max_hits
                              ? hits_in_window(rec, cfg.postselect_window, rec.rounds_run) <= *cfg.postselect_max_hits
                              : rec.accepted;
    if (accepted) ++sum.n_accepted;
    if (rec.converged) sum.convergence_times.push_back(rec.rounds_run);
    for (std::size_t i = 0; i < n; ++i) {
      // a stopped trajectory keeps its final state
      const std::size_t k = std::min(i, rec.energies.size() - 1);
      const double e = rec.energies[k], f = rec.infidelities[k];
      e_all.add(i, e);
      f_all.add(i, f);
      if (accepted) {
        e_acc.add(i, e);
        f_acc.add(i, f);
      }
      const bool alive = !cfg.postselect_max_hits ||
                         hits_in_window(rec, cfg.postselect_window, std::min(sum.rounds[i], rec.rounds_run)) <=
                             *cfg.postselect_max_hits;
      sum.n_alive[i] += alive;
    }
  }
  sum.energy = e_acc.finish();
  sum.infidelity = f_acc.finish();
  sum.energy_all = e_all.finish();
  sum.infidelity_all = f_all.finish();
  sum.acceptance_rate =
      records.empty() ? 0.0 : static_cast<double>(sum.n_accepted) / static_cast<double>(records.size());
  return sum;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("DDPREP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

EnsembleSummary run_ensemble(const LayeredModel& model, const StateVector& init, const ProtocolConfig& cfg,
                             std::size_t n_traj, std::uint64_t master_seed, const EnsembleOptions& opts) {
  if (n_traj < 1) throw InvalidArgument("n_traj must be >= 1");
  cfg.validate();
  std::vector<TrajectoryRecord> records(n_traj);
  parallel_for(n_traj, opts.n_threads,
               [&](std::size_t i) { records[i] = run_trajectory(model, init, cfg, stable_hash(master_seed, i)); });
  auto summary = summarize(records, cfg, master_seed);
  if (opts.keep_records) summary.records = std::move(records);
  return summary;
}

std::size_t choose_postselection_threshold(const std::vector<TrajectoryRecord>& pilot, double target_rate,
                                           std::size_t window, std::size_t at_round) {
  if (pilot.empty()) throw InvalidArgument("empty pilot ensemble");
  std::vector<std::size_t> counts;
  counts.reserve(pilot.size());
  for (const auto& r : pilot) counts.push_back(hits_in_window(r, window, std::min(at_round, r.rounds_run)));
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(counts.size());
  std::size_t best = counts.front();
  double best_err = 2.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i + 1 < counts.size() && counts[i + 1] == counts[i]) continue;
    const double rate = static_cast<double>(i + 1) / n;
    const double err = std::abs(rate - target_rate);
    if (err < best_err) {
      best_err = err;
      best = counts[i];
    }
  }
  return best;
}

}  // namespace ddprep
