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

#include "ddprep_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ddprep/errors.hpp"
#include "ddprep/fits.hpp"
#include "ddprep/markov.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/spectra.hpp"
#include "ddprep_cli/report.hpp"

namespace ddprep::cli {

namespace {

std::string resolve_out(const ConfigFile& cfg, const CommonOptions& opts, const std::string& fallback) {
  if (opts.out_dir) return *opts.out_dir;
  return cfg.get_string("output", "directory", fallback);
}

std::size_t resolve_threads(const ConfigFile& cfg, const CommonOptions& opts) {
  if (opts.threads) return std::max<std::size_t>(1, *opts.threads);
  return std::max<std::size_t>(1, cfg.get_size("ensemble", "threads", default_thread_count()));
}

std::uint64_t resolve_seed(ConfigFile& cfg, const CommonOptions& opts) {
  if (opts.seed) cfg.set("ensemble", "master_seed", std::to_string(*opts.seed));
  return cfg.get_u64("ensemble", "master_seed", 1);
}

const std::set<std::string> kEnsembleKeys = {"n_trajectories", "master_seed", "threads"};
const std::set<std::string> kOutputKeys = {"directory", "formats"};

std::set<std::string> read_formats(const ConfigFile& cfg) {
  std::set<std::string> out;
  std::string all = cfg.get_string("output", "formats", "csv,json");
  std::size_t pos = 0;
  while (pos <= all.size()) {
    const auto comma = all.find(',', pos);
    std::string f = all.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    f.erase(0, f.find_first_not_of(' '));
    f.erase(f.find_last_not_of(' ') + 1);
    if (f != "csv" && f != "json") throw ConfigError("output.formats: unknown format '" + f + "' (valid: csv, json)");
    out.insert(f);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ProtocolConfig read_protocol(const ConfigFile& cfg) {
  ProtocolConfig pc;
  pc.max_rounds = cfg.get_size("protocol", "max_rounds", pc.max_rounds);
  pc.stop_clean_rounds = cfg.get_size("protocol", "stop_clean_rounds", pc.stop_clean_rounds);
  pc.record_every = cfg.get_size("protocol", "record_every", pc.record_every);
  pc.dephasing_p = cfg.get_double("protocol", "dephasing_p", pc.dephasing_p);
  pc.postselect_max_hits = cfg.get_optional_size("protocol", "postselect_max_hits");
  pc.postselect_window = cfg.get_size("protocol", "postselect_window", pc.postselect_window);
  if (cfg.has("protocol", "correction_mode")) {
    try {
      pc.correction_mode = parse_correction_mode(cfg.get_string("protocol", "correction_mode"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(cfg.source() + ": key 'protocol.correction_mode': " + e.what());
    }
  }
  try {
    pc.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(cfg.source() + ": [protocol]: " + e.what());
  }
  return pc;
}

Json model_json(const LayeredModel& m) {
  return Json{{"label", m.label()},
              {"dimension", m.basis->size()},
              {"n_sites", m.basis->n_sites()},
              {"n_terms", m.terms.size()},
              {"system_size", m.system_size},
              {"lattice_dim", m.lattice_dim},
              {"n_layers", m.n_layers()},
              {"layer_schedule", m.layer_schedule}};
}

}  // namespace

Json cmd_run(ConfigFile cfg, const CommonOptions& opts) {
  Stopwatch sw;
  cfg.require_sections({"model", "protocol", "ensemble", "analysis", "output"});
  cfg.require_known("protocol", {"max_rounds", "stop_clean_rounds", "record_every", "dephasing_p",
                                 "postselect_max_hits", "postselect_window", "postselect_target_rate",
                                 "correction_mode", "initial_state"});
  cfg.require_known("ensemble", kEnsembleKeys);
  cfg.require_known("analysis", {"fit", "beta", "gap", "target_infidelity", "late_lo", "late_hi", "early_lo",
                                 "early_hi"});
  cfg.require_known("output", kOutputKeys);
  const std::uint64_t seed = resolve_seed(cfg, opts);
  const std::string out = resolve_out(cfg, opts, "ddprep_run");
  const auto formats = read_formats(cfg);
  const std::size_t threads = resolve_threads(cfg, opts);

  const auto spec = read_model_spec(cfg);
  ProtocolConfig pc = read_protocol(cfg);
  const auto target_rate = cfg.get_optional_double("protocol", "postselect_target_rate");
  if (target_rate && (!(*target_rate > 0) || *target_rate > 1))
    throw ConfigError(cfg.source() + ": key 'protocol.postselect_target_rate': must lie in (0, 1]");
  const std::size_t n_traj = cfg.get_size("ensemble", "n_trajectories", 100);
  if (n_traj == 0) throw ConfigError(cfg.source() + ": key 'ensemble.n_trajectories': must be positive");

  const bool do_fit = cfg.get_bool("analysis", "fit", true);
  const auto config_gap = cfg.get_optional_double("analysis", "gap");
  const auto config_beta = cfg.get_optional_double("analysis", "beta");
  LateWindowOptions lw;
  lw.lo_units = cfg.get_double("analysis", "late_lo", lw.lo_units);
  lw.hi_units = cfg.get_double("analysis", "late_hi", lw.hi_units);
  EarlyWindowOptions ew;
  ew.lo = cfg.get_double("analysis", "early_lo", ew.lo);
  ew.hi_abs = cfg.get_double("analysis", "early_hi", 0.0);
  const double target = cfg.get_double("analysis", "target_infidelity", 0.2);

  Json wall;
  const LayeredModel model = make_model(spec);
  const StateVector init = make_initial_state(cfg.get_string("protocol", "initial_state", "default"), model);
  wall["model"] = sw.lap();

  EnsembleOptions eo;
  eo.n_threads = threads;
  eo.keep_records = target_rate.has_value();
  EnsembleSummary summary = run_ensemble(model, init, pc, n_traj, seed, eo);
  Json post = nullptr;
  if (target_rate) {
    const std::size_t threshold =
        choose_postselection_threshold(summary.records, *target_rate, pc.postselect_window, pc.max_rounds);
    pc.postselect_max_hits = threshold;
    summary = summarize(summary.records, pc, seed);
    post = Json{{"target_rate", *target_rate}, {"threshold", threshold}, {"window", pc.postselect_window}};
  }
  wall["ensemble"] = sw.lap();

  ensure_directory(out);
  Json files = Json::array();
  const auto cols = series_columns(summary);
  if (formats.count("csv")) {
    write_csv(join_path(out, "series.csv"), cols);
    files.push_back("series.csv");
  }

  Json fits = Json::object();
  if (do_fit) {
    const double gap = config_gap ? *config_gap : model_gap(model);
    const double beta = config_beta ? *config_beta : model.lattice_dim / 2.0;
    const auto& t = cols[0].values;
    fits["gap"] = gap;
    fits["gap_source"] = config_gap ? "config" : "spectra";
    fits["beta"] = beta;
    fits["late_energy"] = try_fit([&] { return to_json(fit_late_rate(t, summary.energy.mean, gap, beta, lw)); });
    fits["late_infidelity"] =
        try_fit([&] { return to_json(fit_late_rate(t, summary.infidelity.mean, gap, beta, lw)); });
    fits["early_energy"] = try_fit([&] { return to_json(fit_early_exponent(t, summary.energy.mean, gap, ew)); });
    fits["convergence_time"] = try_fit([&] {
      return Json{{"target", target}, {"t_c", convergence_time(t, summary.infidelity.mean, target)}};
    });
  }
  fits["acceptance_rate"] = summary.acceptance_rate;
  fits["postselection"] = post;
  wall["fits"] = sw.lap();
  if (formats.count("json")) {
    write_json(join_path(out, "fits.json"), fits);
    files.push_back("fits.json");
  }

  Json manifest = base_manifest("run", cfg);
  manifest["master_seed"] = seed;
  manifest["seed_rule"] = "trajectory i uses stable_hash(master_seed, i)";
  manifest["n_trajectories"] = n_traj;
  manifest["threads"] = threads;
  manifest["model"] = model_json(model);
  wall["total"] = sw.total();
  manifest["wall_time_s"] = wall;
  files.push_back("manifest.json");
  manifest["files"] = files;
  write_json(join_path(out, "manifest.json"), manifest);
  return Json{{"out", out}, {"files", files}, {"fits", fits}};
}

Json cmd_gap(ConfigFile cfg, const CommonOptions& opts) {
  Stopwatch sw;
  cfg.require_sections({"model", "gap", "output"});
  cfg.require_known("gap", {"sizes", "n_eigenvalues", "tol"});
  cfg.require_known("output", kOutputKeys);
  const std::string out = resolve_out(cfg, opts, "ddprep_gap");
  const ModelSpec base = read_model_spec(cfg);
  SolverOptions so;
  so.n_eigenvalues = cfg.get_size("gap", "n_eigenvalues", so.n_eigenvalues);
  so.tol = cfg.get_double("gap", "tol", so.tol);
  std::vector<std::size_t> fallback;
  if (base.n_sites) fallback = {base.n_sites};
  if (base.length) fallback = {base.length};
  if (base.lx) fallback = {base.lx};
  const auto sizes = cfg.get_size_list("gap", "sizes", fallback);
  if (sizes.empty()) throw ConfigError(cfg.source() + ": key 'gap.sizes': missing required key");

  Json results = Json::array();
  std::vector<double> ns, gaps;
  int lattice_dim = 1;
  for (std::size_t size : sizes) {
    ModelSpec spec = base;
    if (spec.name == "heisenberg_single_particle") {
      spec.length = size;
    } else if (spec.name == "heisenberg_2d" || spec.name == "qdm") {
      spec.lx = spec.ly = size;
    } else {
      spec.n_sites = size;
    }
    if (!cfg.has("model", "n_up")) spec.n_up.reset();
    const LayeredModel m = make_model(spec);
    const GapResult g = lowest_pair(assemble(m), so);
    Json r = {{"model", m.label()}, {"N", m.system_size}, {"size", size}, {"dimension", m.basis->size()}};
    r.update(to_json(g));
    results.push_back(r);
    ns.push_back(m.system_size);
    gaps.push_back(g.gap);
    lattice_dim = m.lattice_dim;
  }
  Json fits = Json::object();
  if (sizes.size() < 4) {
    fits["gap_scaling"] = nullptr;
    fits["note"] = "fewer than four sizes; fit omitted";
  } else {
    fits["gap_scaling"] = try_fit([&] {
      const auto f = gap_scaling_fit(ns, gaps, lattice_dim);
      return Json{{"z", f.z}, {"z_ci", to_json(f.ci)}, {"dim", lattice_dim}, {"fit", to_json(f.fit)},
                  {"residuals", f.residuals}};
    });
  }
  ensure_directory(out);
  write_json(join_path(out, "gaps.json"), results);
  write_json(join_path(out, "fits.json"), fits);
  Json manifest = base_manifest("gap", cfg);
  manifest["wall_time_s"] = Json{{"total", sw.total()}};
  manifest["files"] = Json::array({"gaps.json", "fits.json", "manifest.json"});
  write_json(join_path(out, "manifest.json"), manifest);
  return Json{{"out", out}, {"gaps", results}, {"fits", fits}};
}

Json cmd_markov(ConfigFile cfg, const CommonOptions& opts) {
  Stopwatch sw;
  cfg.require_sections({"markov", "ensemble", "output"});
  cfg.require_known("markov", {"mode", "energy", "beta", "gap", "lam", "dim", "dyn_exponent", "length", "t_max",
                               "record_every", "tau_max"});
  cfg.require_known("ensemble", kEnsembleKeys);
  cfg.require_known("output", kOutputKeys);
  const std::uint64_t seed = resolve_seed(cfg, opts);
  const std::string out = resolve_out(cfg, opts, "ddprep_markov");
  const std::size_t threads = resolve_threads(cfg, opts);
  const std::string mode = cfg.get_string("markov", "mode", "sm");
  const std::string energy_kind = cfg.get_string("markov", "energy", "scaling");
  const std::size_t t_max = cfg.get_size("markov", "t_max", 1000);
  const std::size_t tau_max = cfg.get_size("markov", "tau_max", t_max);
  const std::size_t n_traj = cfg.get_size("ensemble", "n_trajectories", 1000);

  MarkovParams p;
  p.dim = static_cast<int>(cfg.get_size("markov", "dim", 1));
  p.dyn_exponent = cfg.get_double("markov", "dyn_exponent", 2.0);
  p.beta = cfg.get_double("markov", "beta", p.dim / p.dyn_exponent);
  p.lam = cfg.get_double("markov", "lam", 1.0);
  const std::size_t length = cfg.get_size("markov", "length", 0);
  if (length) p.gap = 1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(length));
  p.gap = cfg.get_double("markov", "gap", p.gap);

  ResetKernel kernel;
  std::optional<LayeredModel> model;
  if (mode == "kernel") {
    if (!length) throw ConfigError(cfg.source() + ": key 'markov.length': required for mode = kernel");
    model = build_heisenberg_single_particle(p.dim, length);
    kernel = single_particle_kernel(*model, t_max);
  } else if (mode == "sm") {
    if (energy_kind == "exact") {
      if (!length) throw ConfigError(cfg.source() + ": key 'markov.length': required for energy = exact");
      auto series = std::make_shared<std::vector<double>>(
          single_particle_energy_series(p.dim, length, std::max(t_max, tau_max) + 2));
      p.e_of_tau = [series](std::size_t tau) { return (*series)[std::min(tau, series->size() - 1)]; };
    } else if (energy_kind != "scaling") {
      throw ConfigError(cfg.source() + ": key 'markov.energy': expected scaling or exact, got '" + energy_kind + "'");
    }
    try {
      p.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(cfg.source() + ": [markov]: " + e.what());
    }
    kernel = sm_kernel(p, t_max);
  } else {
    throw ConfigError(cfg.source() + ": key 'markov.mode': expected sm or kernel, got '" + mode + "'");
  }
  MarkovOptions mo;
  mo.n_threads = threads;
  mo.record_every = cfg.get_size("markov", "record_every", 1);
  const MarkovEnsemble ens = simulate_markov(kernel, n_traj, t_max, seed, mo);
  const ResetDistributions rd = mode == "kernel" ? reset_distributions(kernel, kernel.initial_class(), tau_max)
                                                  : reset_distributions(p, tau_max);
  const double wall_sim = sw.lap();

  ensure_directory(out);
  std::vector<double> closed;
  for (double t : ens.t) closed.push_back(closed_form_avg_energy(t, p));
  write_csv(join_path(out, "markov_series.csv"), {{"t", ens.t},
                                                  {"mean_energy", ens.mean_energy},
                                                  {"sem_energy", ens.sem_energy},
                                                  {"mean_infidelity_bound", ens.mean_infidelity_bound},
                                                  {"sem_infidelity_bound", ens.sem_infidelity_bound},
                                                  {"closed_form", closed}});
  std::vector<double> taus;
  for (std::size_t i = 0; i < rd.survival.size(); ++i) taus.push_back(static_cast<double>(i));
  std::vector<double> hazard = rd.hazard;
  hazard.push_back(std::nan(""));
  write_csv(join_path(out, "reset_distributions.csv"),
            {{"tau", taus}, {"hazard", hazard}, {"survival", rd.survival}, {"gap_pmf", rd.gap_pmf}});
  std::map<std::size_t, std::size_t> hist;
  for (auto n : ens.hit_counts) ++hist[n];
  std::vector<double> nr, freq, geo;
  for (const auto& [n, c] : hist) {
    nr.push_back(static_cast<double>(n));
    freq.push_back(static_cast<double>(c) / static_cast<double>(n_traj));
    geo.push_back(rd.reset_count_pmf(n));
  }
  write_csv(join_path(out, "reset_counts.csv"), {{"n_r", nr}, {"frequency", freq}, {"geometric", geo}});

  const double gap = kernel.gap > 0 ? kernel.gap : p.gap;
  Json fits = {{"mode", mode},
               {"beta", p.beta},
               {"gap", gap},
               {"q_inf", rd.q_inf},
               {"c", rd.q_inf * std::pow(gap, -p.beta)},
               {"mean_resets_predicted", rd.mean_resets},
               {"inverse_q_inf", rd.q_inf > 0 ? 1.0 / rd.q_inf : std::nan("")},
               {"mean_hits", ens.mean_hits},
               {"sem_hits", ens.sem_hits},
               {"mean_reset_rounds", ens.mean_resets},
               {"mean_gap", rd.mean_gap}};
  fits["late_energy"] = try_fit([&] { return to_json(fit_late_rate(ens.t, ens.mean_energy, gap, p.beta)); });
  fits["early_energy"] = try_fit([&] {
    EarlyWindowOptions ew;
    ew.lo = 3;
    return to_json(fit_early_exponent(ens.t, ens.mean_energy, gap, ew));
  });
  fits["gap_pmf_tail"] = try_fit([&] {
    std::vector<double> x, y;
    for (std::size_t tau = 5; tau < rd.gap_pmf.size() && tau < 0.3 / gap; ++tau)
      if (rd.gap_pmf[tau] > 0) {
        x.push_back(std::log(static_cast<double>(tau)));
        y.push_back(std::log(rd.gap_pmf[tau]));
      }
    if (x.size() < 3) throw FitError("early window of the gap distribution holds fewer than 3 points");
    return to_json(linear_fit(x, y));
  });
  write_json(join_path(out, "fits.json"), fits);

  Json manifest = base_manifest("markov", cfg);
  manifest["master_seed"] = seed;
  manifest["seed_rule"] = "trajectory i uses stable_hash(master_seed, i)";
  manifest["n_trajectories"] = n_traj;
  manifest["threads"] = threads;
  manifest["wall_time_s"] = Json{{"simulation", wall_sim}, {"total", sw.total()}};
  manifest["files"] = Json::array(
      {"markov_series.csv", "reset_distributions.csv", "reset_counts.csv", "fits.json", "manifest.json"});
  write_json(join_path(out, "manifest.json"), manifest);
  return Json{{"out", out}, {"fits", fits}};
}

Json cmd_resetfree(ConfigFile cfg, const CommonOptions& opts) {
  Stopwatch sw;
  cfg.require_sections({"model", "resetfree", "ensemble", "output"});
  cfg.require_known("resetfree", {"tau_max", "initial_state", "late_lo", "late_hi", "n_random", "correspondence",
                                  "n_states", "corr_tau_max", "window_lo", "window_hi"});
  cfg.require_known("ensemble", kEnsembleKeys);
  cfg.require_known("output", kOutputKeys);
  const std::uint64_t seed = resolve_seed(cfg, opts);
  const std::string out = resolve_out(cfg, opts, "ddprep_resetfree");
  const LayeredModel model = make_model(read_model_spec(cfg));
  const StateVector init = make_initial_state(cfg.get_string("resetfree", "initial_state", "default"), model);
  const std::size_t tau_max = cfg.get_size("resetfree", "tau_max", 200);
  const double gap = model_gap(model);

  ensure_directory(out);
  Json files = Json::array();
  const ProjectionSeries ps = projection_energy_series(model, init, tau_max);
  std::vector<double> tau, norm;
  for (std::size_t i = 0; i < ps.energy.size(); ++i) {
    tau.push_back(static_cast<double>(i));
    norm.push_back(std::exp(ps.log_norm[i]));
  }
  write_csv(join_path(out, "projection.csv"), {{"tau", tau},
                                               {"norm", norm},
                                               {"log_norm", ps.log_norm},
                                               {"energy", ps.energy},
                                               {"overlap", ps.fidelity}});
  files.push_back("projection.csv");

  Json fits = {{"gap", gap}, {"n_layers", model.n_layers()}};
  LateWindowOptions lw;
  lw.lo_units = cfg.get_double("resetfree", "late_lo", 1.0);
  lw.hi_units = cfg.get_double("resetfree", "late_hi", 3.0);
  fits["late_energy"] = try_fit([&] {
    // beta = 1/2 makes the rate unit the bare gap
    const RateFit f = fit_late_rate(tau, ps.energy, gap, 0.5, lw);
    Json j = to_json(f);
    j["rate_over_gap"] = f.lam;
    return j;
  });

  const std::size_t n_random = cfg.get_size("resetfree", "n_random", 100);
  if (n_random > 0 && model.basis->size() > 1) {
    Rng rng(seed);
    const auto trials = random_orthogonal_states(model, n_random, rng);
    const DetectabilityReport rep = detectability_bound_check(model, trials, gap);
    fits["detectability"] = Json{{"n_states", rep.entries.size()},
                                 {"violations", rep.violations},
                                 {"min_lower_slack", rep.min_lower_slack},
                                 {"min_upper_slack", rep.min_upper_slack}};
  }

  if (cfg.get_bool("resetfree", "correspondence", false)) {
    CorrespondenceOptions co;
    co.n_states = cfg.get_size("resetfree", "n_states", 4);
    co.tau_max = cfg.get_size("resetfree", "corr_tau_max", 60);
    co.window_lo = cfg.get_size("resetfree", "window_lo", 10);
    co.window_hi = cfg.get_size("resetfree", "window_hi", co.tau_max);
    co.budget = kDeskDimension;
    const SpectralCorrespondence sc = eigen_correspondence(model, co);
    Json entries = Json::array();
    for (const auto& e : sc.entries) {
      std::vector<double> t, predicted;
      for (std::size_t i = 0; i < e.norm.size(); ++i) {
        t.push_back(static_cast<double>(i));
        predicted.push_back(std::pow(e.lambda_tilde, sc.exponent * static_cast<double>(i)) *
                            correspondence_correction(e.lambda_tilde, static_cast<double>(i)));
      }
      const std::string name = "correspondence_" + std::to_string(e.index) + ".csv";
      write_csv(join_path(out, name), {{"tau", t},
                                       {"norm", e.norm},
                                       {"energy", e.energy_series},
                                       {"overlap", e.relative_overlap},
                                       {"predicted", predicted}});
      files.push_back(name);
      entries.push_back(Json{{"index", e.index},
                             {"lambda_tilde", e.lambda_tilde},
                             {"energy", e.energy},
                             {"lambda_fit", e.lambda_fit},
                             {"lambda_predicted", e.lambda_predicted},
                             {"lambda_inverse", e.lambda_inverse},
                             {"overlap_deficit", e.overlap_deficit},
                             {"csv", name}});
    }
    fits["correspondence"] = Json{{"exponent", sc.exponent},
                                  {"window", Json::array({sc.window_lo, sc.window_hi})},
                                  {"entries", entries}};
  }
  write_json(join_path(out, "fits.json"), fits);
  files.push_back("fits.json");
  Json manifest = base_manifest("resetfree", cfg);
  manifest["master_seed"] = seed;
  manifest["model"] = model_json(model);
  manifest["wall_time_s"] = Json{{"total", sw.total()}};
  files.push_back("manifest.json");
  manifest["files"] = files;
  write_json(join_path(out, "manifest.json"), manifest);
  return Json{{"out", out}, {"fits", fits}};
}

}  // namespace ddprep::cli
