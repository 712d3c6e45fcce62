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

#include "ddprep/errors.hpp"
#include "ddprep/models.hpp"
#include "ddprep/protocol.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/statevec.hpp"

using namespace ddprep;

TEST(Protocol, TrajectoriesAreReproducible) {
  const auto m = build_heisenberg_chain(8, true, 4);
  ProtocolConfig cfg;
  cfg.max_rounds = 30;
  const auto a = run_trajectory(m, m.initial_state, cfg, 123);
  const auto b = run_trajectory(m, m.initial_state, cfg, 123);
  const auto c = run_trajectory(m, m.initial_state, cfg, 124);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.hit_events, c.hit_events);
  EXPECT_EQ(a.recorded_rounds.size(), 31u);
  EXPECT_EQ(a.energies.size(), 31u);
}

TEST(Protocol, EnsembleIsThreadCountInvariant) {
  const auto m = build_fredkin(8);
  ProtocolConfig cfg;
  cfg.max_rounds = 25;
  EnsembleOptions one, three;
  three.n_threads = 3;
  const auto a = run_ensemble(m, m.initial_state, cfg, 40, 7, one);
  const auto b = run_ensemble(m, m.initial_state, cfg, 40, 7, three);
  EXPECT_EQ(a.energy.mean, b.energy.mean);
  EXPECT_EQ(a.infidelity.sem, b.infidelity.sem);
  EXPECT_EQ(a.n_alive, b.n_alive);
}

TEST(Protocol, GroundStateIsAFixedPoint) {
  const auto m = build_heisenberg_chain(8, true, 4);
  ProtocolConfig cfg;
  cfg.max_rounds = 20;
  const auto r = run_trajectory(m, *m.ground_state, cfg, 1);
  EXPECT_TRUE(r.hit_events.empty());
  for (double e : r.energies) EXPECT_LT(e, 1e-12);
  for (double f : r.infidelities) EXPECT_LT(f, 1e-12);
}

TEST(Protocol, FirstLayerHitCountMatchesExpectations) {
  const auto m = build_heisenberg_chain(8, true, 4);
  double expected = 0;
  for (std::size_t k : m.layers[0]) expected += term_expectation(m.initial_state, m.terms[k]);
  ProtocolConfig cfg;
  cfg.max_rounds = 1;
  const int n = 4000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const auto r = run_trajectory(m, m.initial_state, cfg, stable_hash(11, i));
    double hits = 0;
    for (const auto& h : r.hit_events) hits += h.layer == 0;
    sum += hits;
    sum2 += hits * hits;
  }
  const double mean = sum / n, sem = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, expected, 5 * sem);
}

TEST(Protocol, TrajectoryAverageMatchesTheExactChannel) {
  const auto m = build_heisenberg_chain(6, true, 3);
  for (double p : {0.0, 0.05}) {
    ProtocolConfig cfg;
    cfg.max_rounds = 8;
    cfg.dephasing_p = p;
    const auto ch = evolve_channel_exact(m, density_from_state(m.initial_state), cfg, cfg.max_rounds);
    const auto ens = run_ensemble(m, m.initial_state, cfg, 3000, 21);
    for (std::size_t r = 0; r <= cfg.max_rounds; ++r) {
      EXPECT_NEAR(ch.trace[r], 1.0, 1e-12);
      const double tol = 4.5 * ens.energy.sem[r] + 1e-12;
      EXPECT_NEAR(ens.energy.mean[r], ch.energy[r], tol) << "p=" << p << " round " << r;
      EXPECT_NEAR(ens.infidelity.mean[r], 1 - ch.ground_overlap[r], 4.5 * ens.infidelity.sem[r] + 1e-12);
    }
  }
}

TEST(Protocol, ChannelOverlapIsMonotoneAndConstantWithoutFeedback) {
  const auto m = build_fredkin(8);
  ProtocolConfig cfg;
  const auto ch = evolve_channel_exact(m, density_from_state(m.initial_state), cfg, 40);
  for (std::size_t r = 1; r < ch.ground_overlap.size(); ++r)
    EXPECT_GE(ch.ground_overlap[r], ch.ground_overlap[r - 1] - 1e-12);
  EXPECT_GT(ch.ground_overlap.back(), 0.5);
  cfg.correction_mode = CorrectionMode::none;
  const auto off = evolve_channel_exact(m, density_from_state(m.initial_state), cfg, 10);
  for (double g : off.ground_overlap) EXPECT_NEAR(g, off.ground_overlap.front(), 1e-12);
}

TEST(Protocol, HitsInWindow) {
  TrajectoryRecord r;
  r.hit_events = {{1, 0, 0}, {3, 1, 2}, {3, 0, 4}, {7, 1, 1}};
  EXPECT_EQ(hits_in_window(r, 0, 10), 4u);
  EXPECT_EQ(hits_in_window(r, 0, 3), 3u);
  EXPECT_EQ(hits_in_window(r, 5, 7), 3u);
  EXPECT_EQ(hits_in_window(r, 1, 7), 1u);
}

TEST(Protocol, PostselectionHitsTheTargetRate) {
  const auto m = build_heisenberg_chain(8, true, 4);
  ProtocolConfig cfg;
  cfg.max_rounds = 20;
  EnsembleOptions eo;
  eo.keep_records = true;
  const auto all = run_ensemble(m, m.initial_state, cfg, 400, 3, eo);
  ASSERT_EQ(all.records.size(), 400u);
  const std::size_t th = choose_postselection_threshold(all.records, 0.3, 0, cfg.max_rounds);
  ProtocolConfig post = cfg;
  post.postselect_max_hits = th;
  const auto sel = summarize(all.records, post, 3);
  std::size_t accepted = 0;
  for (const auto& r : all.records) accepted += hits_in_window(r, 0, r.rounds_run) <= th;
  EXPECT_DOUBLE_EQ(sel.acceptance_rate, accepted / 400.0);
  EXPECT_NEAR(sel.acceptance_rate, 0.3, 0.1);
  EXPECT_EQ(sel.energy_all.mean, all.energy.mean);
  // fewer hits means a cleaner history
  EXPECT_LT(sel.infidelity.mean.back(), all.infidelity.mean.back());
}

TEST(Protocol, StopsAfterCleanRounds) {
  const auto m = build_heisenberg_chain(6, true, 3);
  ProtocolConfig cfg;
  cfg.max_rounds = 400;
  cfg.stop_clean_rounds = 30;
  const auto r = run_trajectory(m, m.initial_state, cfg, 5);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rounds_run, 400u);
  EXPECT_GE(r.rounds_since_last_hit, 30u);
}

TEST(Protocol, RecordEverySubsamples) {
  const auto m = build_heisenberg_chain(6, true, 3);
  ProtocolConfig cfg;
  cfg.max_rounds = 20;
  cfg.record_every = 5;
  const auto s = run_ensemble(m, m.initial_state, cfg, 10, 1);
  EXPECT_EQ(s.rounds, (std::vector<std::size_t>{0, 5, 10, 15, 20}));
}

TEST(Protocol, InvalidConfigurationsThrow) {
  ProtocolConfig cfg;
  cfg.dephasing_p = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.record_every = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  EXPECT_THROW(parse_correction_mode("sometimes"), InvalidArgument);
  EXPECT_EQ(parse_correction_mode(to_string(CorrectionMode::random_pauli)), CorrectionMode::random_pauli);
}

TEST(Protocol, RandomPauliCorrectionStaysNormalized) {
  const auto m = with_full_space(build_heisenberg_chain(4, true, 2));
  ProtocolConfig cfg;
  cfg.max_rounds = 15;
  cfg.correction_mode = CorrectionMode::random_pauli;
  const auto r = run_trajectory(m, m.initial_state, cfg, 9);
  for (double e : r.energies) EXPECT_TRUE(std::isfinite(e));
}
