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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ddprep/errors.hpp"
#include "ddprep/fits.hpp"
#include "ddprep/markov.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/rng.hpp"
#include "ddprep/spectra.hpp"
#include "ddprep/version.hpp"
#include "ddprep_cli/commands.hpp"
#include "ddprep_cli/report.hpp"

namespace ddprep::cli {

namespace {

struct Axis {
  std::string column;
  double scale = 1.0;
};

Json curve(const std::string& csv, const std::string& label, const Axis& x, const Axis& y, Json scalars = {}) {
  return Json{{"csv", csv},
              {"label", label},
              {"x", {{"column", x.column}, {"scale", x.scale}}},
              {"y", {{"column", y.column}, {"scale", y.scale}}},
              {"scalars", scalars.is_null() ? Json::object() : scalars}};
}

Json panel(const std::string& id, const std::string& xlabel, const std::string& ylabel, const std::string& xscale,
           const std::string& yscale, Json curves, Json refs = Json::array(), bool collapse = false) {
  return Json{{"id", id},         {"xlabel", xlabel}, {"ylabel", ylabel},           {"xscale", xscale},
              {"yscale", yscale}, {"collapse", collapse}, {"curves", std::move(curves)},
              {"reference_lines", std::move(refs)}};
}

Json exp_ref(double rate, const std::string& label) {
  return Json{{"kind", "exponential"}, {"rate", rate}, {"label", label}};
}

Json power_ref(double exponent, double prefactor, const std::string& label) {
  return Json{{"kind", "power"}, {"exponent", exponent}, {"prefactor", prefactor}, {"label", label}};
}

struct FigureContext {
  ConfigFile* cfg;
  std::string out;
  std::uint64_t seed;
  std::size_t threads;
  std::size_t curve_index = 0;

  std::uint64_t next_seed() { return stable_hash(seed, curve_index++); }
  std::size_t n_traj(std::size_t fallback) const { return cfg->get_size("figure", "n_trajectories", fallback); }
  double rounds_units(double fallback) const { return cfg->get_double("figure", "rounds_units", fallback); }
  std::vector<std::size_t> sizes(const std::vector<std::size_t>& fallback) const {
    return cfg->get_size_list("figure", "sizes", fallback);
  }
};

struct SeriesResult {
  std::string csv;
  std::string label;
  double n = 0, gap = 0;
  EnsembleSummary summary;
  std::vector<double> t;
};

SeriesResult run_series(FigureContext& ctx, const LayeredModel& model, const std::string& csv,
                        const std::string& label, std::size_t n_traj, double rounds_units,
                        std::vector<Column> extra = {}) {
  SeriesResult r;
  r.csv = csv;
  r.label = label;
  r.n = model.system_size;
  r.gap = model_gap(model);
  ProtocolConfig pc;
  pc.max_rounds = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(rounds_units / r.gap)));
  EnsembleOptions eo;
  eo.n_threads = ctx.threads;
  r.summary = run_ensemble(model, model.initial_state, pc, n_traj, ctx.next_seed(), eo);
  auto cols = series_columns(r.summary);
  r.t = cols[0].values;
  for (auto& c : extra) cols.push_back(std::move(c));
  write_csv(join_path(ctx.out, csv), cols);
  return r;
}

Json scalars(const SeriesResult& r) { return Json{{"N", r.n}, {"gap", r.gap}}; }

Json late_fit(const SeriesResult& r, double beta, const std::vector<double>& y) {
  return try_fit([&] { return to_json(fit_late_rate(r.t, y, r.gap, beta)); });
}

LayeredModel chain(std::size_t n) { return build_heisenberg_chain(n, true, n / 2); }

// y scale for the collapse E / (N Delta^{max(1 - beta, 0)}), or N / |log Delta| at beta = 1.
double collapse_y(double n, double gap, double beta) {
  if (std::abs(beta - 1.0) < 1e-12) return std::abs(std::log(gap)) / n;
  return 1.0 / (n * std::pow(gap, std::max(1.0 - beta, 0.0)));
}

double collapse_x(double gap, double beta) { return rate_unit(gap, beta); }

Json fig1b(FigureContext& ctx) {
  const double target = ctx.cfg->get_double("figure", "target_infidelity", 0.2);
  Json curves = Json::array(), fits = Json::array();
  std::vector<double> ns, gaps, inv, tcs;
  for (std::size_t n : ctx.sizes({8, 10, 12})) {
    const auto r = run_series(ctx, chain(n), "series_N" + std::to_string(n) + ".csv", "N=" + std::to_string(n),
                              ctx.n_traj(400), ctx.rounds_units(6.0));
    curves.push_back(curve(r.csv, r.label, {"t", r.gap}, {"mean_infidelity", 1.0}, scalars(r)));
    double tc = std::nan("");
    try {
      tc = convergence_time(r.t, r.summary.infidelity.mean, target);
    } catch (const FitError&) {
    }
    ns.push_back(r.n);
    gaps.push_back(r.gap);
    inv.push_back(1.0 / r.gap);
    tcs.push_back(tc);
    fits.push_back(Json{{"N", r.n}, {"gap", r.gap}, {"t_c", tc}});
  }
  write_csv(join_path(ctx.out, "tc.csv"), {{"N", ns}, {"gap", gaps}, {"inverse_gap", inv}, {"t_c", tcs}});
  Json tc_fit = try_fit([&] { return to_json(linear_fit(inv, tcs)); });
  Json refs = Json::array();
  if (tc_fit.contains("slope"))
    refs.push_back(Json{{"kind", "linear"},
                        {"slope", tc_fit["slope"]},
                        {"intercept", tc_fit["intercept"]},
                        {"label", "linear fit"}});
  return Json{{"panels", Json::array({panel("a", "1/Delta", "T_c", "linear", "linear",
                                            Json::array({curve("tc.csv", "T_c", {"inverse_gap", 1.0},
                                                               {"t_c", 1.0})}),
                                            refs),
                                      panel("b", "Delta t", "infidelity", "linear", "log", curves)})},
              {"fits", {{"target_infidelity", target}, {"sizes", fits}, {"tc_vs_inverse_gap", tc_fit}}}};
}

Json fig2(FigureContext& ctx) {
  Json early = Json::array(), coll = Json::array(), infid = Json::array(), proj = Json::array(),
       fits = Json::array();
  double lam_mean = 0;
  std::size_t n_lam = 0;
  for (std::size_t len : ctx.sizes({16, 32, 64})) {
    const LayeredModel m = build_heisenberg_single_particle(1, len);
    const auto r = run_series(ctx, m, "series_N" + std::to_string(len) + ".csv", "N=" + std::to_string(len),
                              ctx.n_traj(2000), ctx.rounds_units(4.0));
    const auto e = single_particle_energy_series(1, len, static_cast<std::size_t>(std::ceil(4.0 / r.gap)));
    std::vector<double> tau;
    for (std::size_t i = 0; i < e.size(); ++i) tau.push_back(static_cast<double>(i));
    const std::string pcsv = "resetfree_N" + std::to_string(len) + ".csv";
    write_csv(join_path(ctx.out, pcsv), {{"tau", tau}, {"energy", e}});
    early.push_back(curve(r.csv, r.label, {"t", 1.0}, {"mean_energy", 1.0}, scalars(r)));
    coll.push_back(curve(r.csv, r.label, {"t", r.gap}, {"mean_energy", 1.0 / std::sqrt(r.gap)}, scalars(r)));
    infid.push_back(curve(r.csv, r.label, {"t", r.gap}, {"mean_infidelity", 1.0}, scalars(r)));
    proj.push_back(curve(pcsv, r.label, {"tau", 1.0}, {"energy", 1.0}, scalars(r)));
    const Json lf = late_fit(r, 0.5, r.summary.energy.mean);
    if (lf.contains("lambda")) {
      lam_mean += lf["lambda"].get<double>();
      ++n_lam;
    }
    EarlyWindowOptions ew;
    ew.lo = 3;
    fits.push_back(Json{{"N", r.n},
                        {"gap", r.gap},
                        {"late_energy", lf},
                        {"late_infidelity", late_fit(r, 0.5, r.summary.infidelity.mean)},
                        {"early_energy", try_fit([&] {
                           return to_json(fit_early_exponent(r.t, r.summary.energy.mean, r.gap, ew));
                         })}});
  }
  const double lam = n_lam ? lam_mean / static_cast<double>(n_lam) : 1.0;
  return Json{{"panels", Json::array({panel("a", "t", "mean energy", "log", "log", early,
                                            Json::array({power_ref(-0.5, 1.0, "t^-1/2")})),
                                      panel("b", "Delta t", "E / sqrt(Delta)", "linear", "log", coll,
                                            Json::array({exp_ref(lam, "exp(-lambda Delta t)")}), true),
                                      panel("c", "Delta t", "infidelity", "linear", "log", infid,
                                            Json::array({exp_ref(lam, "exp(-lambda Delta t)")})),
                                      panel("d", "tau", "e(tau)", "log", "log", proj,
                                            Json::array({power_ref(-1.0, 0.25, "1/(4 tau)")}))})},
              {"fits", {{"sizes", fits}, {"lambda_mean", lam}}}};
}

Json collapse_figure(FigureContext& ctx, const std::vector<std::pair<std::string, LayeredModel>>& models,
                     double beta, std::size_t n_traj, double rounds, bool beta_columns) {
  Json coll = Json::array(), infid = Json::array(), raw = Json::array(), fits = Json::array();
  Json alt = Json::array();
  double lam_mean = 0;
  std::size_t n_lam = 0;
  std::vector<double> ns, intercepts, gaps;
  for (const auto& [tag, m] : models) {
    std::vector<Column> extra;
    const double gap = model_gap(m);
    const double n = m.system_size;
    const std::string csv = "series_" + tag + ".csv";
    const std::string label = tag;
    SeriesResult r = run_series(ctx, m, csv, label, n_traj, rounds);
    if (beta_columns) {
      for (double b : {0.5, 1.0}) {
        const std::string suffix = b == 0.5 ? "beta_half" : "beta_one";
        Column x{"x_" + suffix, {}}, y{"y_" + suffix, {}};
        for (std::size_t i = 0; i < r.t.size(); ++i) {
          x.values.push_back(r.t[i] * collapse_x(gap, b));
          y.values.push_back(r.summary.energy.mean[i] * collapse_y(n, gap, b));
        }
        extra.push_back(x);
        extra.push_back(y);
      }
      auto cols = series_columns(r.summary);
      for (auto& c : extra) cols.push_back(c);
      write_csv(join_path(ctx.out, csv), cols);
      alt.push_back(curve(csv, label, {"x_beta_one", 1.0}, {"y_beta_one", 1.0}, scalars(r)));
    }
    raw.push_back(curve(csv, label, {"t", 1.0}, {"mean_energy", 1.0}, scalars(r)));
    coll.push_back(curve(csv, label, {"t", collapse_x(gap, beta)}, {"mean_energy", collapse_y(n, gap, beta)},
                         scalars(r)));
    infid.push_back(curve(csv, label, {"t", collapse_x(gap, beta)}, {"mean_infidelity", 1.0}, scalars(r)));
    const Json lf = late_fit(r, beta, r.summary.energy.mean);
    const Json li = late_fit(r, beta, r.summary.infidelity.mean);
    if (lf.contains("lambda")) {
      lam_mean += lf["lambda"].get<double>();
      ++n_lam;
    }
    if (li.contains("intercept")) {
      ns.push_back(n);
      intercepts.push_back(std::exp(li["intercept"].get<double>()));
      gaps.push_back(gap);
    }
    fits.push_back(Json{{"label", label}, {"N", n}, {"gap", gap}, {"late_energy", lf}, {"late_infidelity", li}});
  }
  const double lam = n_lam ? lam_mean / static_cast<double>(n_lam) : 1.0;
  Json prefactor = try_fit([&] {
    const auto f = fit_prefactor(ns, intercepts, gaps);
    return Json{{"exponent", f.exponent}, {"ci", to_json(f.ci)}, {"r2", f.r2}};
  });
  Json panels = Json::array({panel("a", "t", "mean energy", "linear", "log", raw),
                             panel("b", "rate_unit t", "collapsed energy", "linear", "log", coll,
                                   Json::array({exp_ref(lam, "exp(-lambda x)")}), true),
                             panel("c", "rate_unit t", "infidelity", "linear", "log", infid)});
  if (beta_columns)
    panels.push_back(panel("d", "Delta t / |log Delta|", "E |log Delta| / N", "linear", "log", alt, {}, true));
  return Json{{"panels", panels},
              {"fits", {{"beta", beta}, {"sizes", fits}, {"lambda_mean", lam}, {"infidelity_prefactor", prefactor}}}};
}

Json fig3a(FigureContext& ctx) {
  std::vector<std::pair<std::string, LayeredModel>> models;
  for (std::size_t n : ctx.sizes({8, 12, 16})) models.emplace_back("N" + std::to_string(n), chain(n));
  return collapse_figure(ctx, models, 0.5, ctx.n_traj(300), ctx.rounds_units(5.0), false);
}

Json fig3b(FigureContext& ctx) {
  std::vector<std::pair<std::string, LayeredModel>> models;
  for (std::size_t l : ctx.sizes({2, 3, 4}))
    models.emplace_back(std::to_string(l) + "x" + std::to_string(l), build_heisenberg_2d(l, l, true, l * l / 2));
  return collapse_figure(ctx, models, 1.0, ctx.n_traj(200), ctx.rounds_units(5.0), false);
}

Json fig4a(FigureContext& ctx) {
  std::vector<double> ns, gaps;
  for (std::size_t n : ctx.cfg->get_size_list("figure", "gap_sizes", {8, 10, 12, 14})) {
    const auto m = build_fredkin(n);
    ns.push_back(static_cast<double>(n));
    gaps.push_back(model_gap(m));
  }
  write_csv(join_path(ctx.out, "gaps.csv"), {{"N", ns}, {"gap", gaps}});
  Json zfit = try_fit([&] {
    const auto f = gap_scaling_fit(ns, gaps, 1);
    return Json{{"z", f.z}, {"z_ci", to_json(f.ci)}, {"fit", to_json(f.fit)}};
  });
  const double z = zfit.contains("z") ? zfit["z"].get<double>() : 8.0 / 3.0;
  std::vector<std::pair<std::string, LayeredModel>> models;
  for (std::size_t n : ctx.sizes({8, 10, 12})) models.emplace_back("N" + std::to_string(n), build_fredkin(n));
  Json fig = collapse_figure(ctx, models, 1.0 / z, ctx.n_traj(300), ctx.rounds_units(4.0), false);

  const auto m10 = build_fredkin(ctx.cfg->get_size("figure", "resetfree_size", 10));
  const double gap10 = model_gap(m10);
  const auto ps = projection_energy_series(m10, m10.initial_state, static_cast<std::size_t>(std::ceil(4.0 / gap10)));
  std::vector<double> tau;
  for (std::size_t i = 0; i < ps.energy.size(); ++i) tau.push_back(static_cast<double>(i));
  write_csv(join_path(ctx.out, "resetfree.csv"), {{"tau", tau}, {"energy", ps.energy}});
  fig["panels"].push_back(panel("gap", "N", "gap", "log", "log",
                                Json::array({curve("gaps.csv", "gap", {"N", 1.0}, {"gap", 1.0})}),
                                Json::array({power_ref(-z, 1.0, "N^-z")})));
  fig["panels"].push_back(panel("resetfree", "Delta tau", "e(tau)", "linear", "log",
                                Json::array({curve("resetfree.csv", "N=" + std::to_string(m10.system_size),
                                                   {"tau", gap10}, {"energy", 1.0})}),
                                Json::array({exp_ref(27.0 / 7.0, "exp(-27/7 Delta tau)")})));
  fig["fits"]["gap_scaling"] = zfit;
  fig["fits"]["resetfree_rate_over_gap"] = try_fit([&] { return to_json(fit_late_rate(tau, ps.energy, gap10, 0.5)); });
  return fig;
}

Json fig4b(FigureContext& ctx) {
  std::vector<std::pair<std::string, LayeredModel>> models;
  const std::string lattices = ctx.cfg->get_string("figure", "lattices", "4x4,4x6");
  std::stringstream ss(lattices);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw ConfigError("figure.lattices: expected entries like 4x4, got '" + item + "'");
    const std::size_t lx = std::stoul(item.substr(0, x)), ly = std::stoul(item.substr(x + 1));
    models.emplace_back(item, build_qdm(lx, ly));
  }
  return collapse_figure(ctx, models, 0.5, ctx.n_traj(300), ctx.rounds_units(5.0), true);
}

Json sm_cluster(FigureContext& ctx) {
  std::vector<std::pair<std::string, LayeredModel>> models;
  for (std::size_t n : ctx.sizes({9, 12})) models.emplace_back("N" + std::to_string(n), build_cluster_ising(n));
  return collapse_figure(ctx, models, 0.5, ctx.n_traj(300), ctx.rounds_units(5.0), false);
}

Json sm_markov(FigureContext& ctx) {
  const double gap = ctx.cfg->get_double("figure", "gap", 0.01);
  const std::size_t n_traj = ctx.n_traj(2000);
  Json curves = Json::array(), fits = Json::array();
  for (double beta : {0.5, 1.0, 2.0}) {
    MarkovParams p;
    p.beta = beta;
    p.gap = gap;
    p.lam = 1.0;
    const std::size_t t_max = static_cast<std::size_t>(std::ceil(6.0 / rate_unit(gap, beta)));
    MarkovOptions mo;
    mo.n_threads = ctx.threads;
    mo.record_every = std::max<std::size_t>(1, t_max / 400);
    const auto ens = simulate_markov(p, n_traj, t_max, ctx.next_seed(), mo);
    std::vector<double> closed;
    for (double t : ens.t) closed.push_back(closed_form_avg_energy(t, p));
    std::ostringstream name;
    name << "markov_beta" << beta << ".csv";
    write_csv(join_path(ctx.out, name.str()), {{"t", ens.t},
                                               {"mean_energy", ens.mean_energy},
                                               {"sem_energy", ens.sem_energy},
                                               {"mean_infidelity_bound", ens.mean_infidelity_bound},
                                               {"closed_form", closed}});
    curves.push_back(curve(name.str(), "beta=" + format_double(beta), {"t", rate_unit(gap, beta)},
                           {"mean_energy", 1.0}, Json{{"beta", beta}, {"gap", gap}}));
    fits.push_back(Json{{"beta", beta}, {"late_energy", try_fit([&] {
                                           return to_json(fit_late_rate(ens.t, ens.mean_energy, gap, beta));
                                         })}});
  }
  Json gap_curves = Json::array();
  for (const auto& [d, len] : std::vector<std::pair<int, std::size_t>>{{1, 64}, {2, 16}}) {
    const auto m = build_heisenberg_single_particle(d, len);
    const auto k = single_particle_kernel(m, 400);
    const auto rd = reset_distributions(k, k.initial_class(), 400);
    std::vector<double> tau;
    for (std::size_t i = 0; i < rd.gap_pmf.size(); ++i) tau.push_back(static_cast<double>(i));
    const std::string name = "gap_pmf_d" + std::to_string(d) + ".csv";
    write_csv(join_path(ctx.out, name), {{"tau", tau}, {"gap_pmf", rd.gap_pmf}, {"survival", rd.survival}});
    gap_curves.push_back(curve(name, "d=" + std::to_string(d), {"tau", 1.0}, {"gap_pmf", 1.0},
                               Json{{"N", m.system_size}, {"q_inf", rd.q_inf}}));
  }
  return Json{{"panels", Json::array({panel("a", "rate_unit t", "mean energy", "linear", "log", curves),
                                      panel("b", "tau", "Q'(tau)", "log", "log", gap_curves,
                                            Json::array({power_ref(-1.5, 1.0, "tau^-3/2")}))})},
              {"fits", {{"gap", gap}, {"markov", fits}}}};
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"fig1b", "fig2", "fig3a", "fig3b", "fig4a", "fig4b", "sm-markov", "sm-cluster"};
}

Json cmd_figure(const std::string& id, ConfigFile cfg, const CommonOptions& opts) {
  Stopwatch sw;
  const auto ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    std::string known;
    for (const auto& s : ids) known += (known.empty() ? "" : ", ") + s;
    throw ConfigError("unknown figure id '" + id + "' (valid: " + known + ")");
  }
  cfg.require_sections({"figure", "ensemble", "output"});
  cfg.require_known("figure", {"sizes", "n_trajectories", "rounds_units", "target_infidelity", "gap_sizes",
                               "resetfree_size", "lattices", "gap"});
  cfg.require_known("ensemble", {"master_seed", "threads"});
  cfg.require_known("output", {"directory"});
  if (opts.seed) cfg.set("ensemble", "master_seed", std::to_string(*opts.seed));
  FigureContext ctx;
  ctx.cfg = &cfg;
  ctx.out = opts.out_dir ? *opts.out_dir : cfg.get_string("output", "directory", "ddprep_" + id);
  ctx.seed = cfg.get_u64("ensemble", "master_seed", 1);
  ctx.threads = opts.threads ? *opts.threads : cfg.get_size("ensemble", "threads", default_thread_count());
  ensure_directory(ctx.out);

  Json body;
  if (id == "fig1b") body = fig1b(ctx);
  else if (id == "fig2") body = fig2(ctx);
  else if (id == "fig3a") body = fig3a(ctx);
  else if (id == "fig3b") body = fig3b(ctx);
  else if (id == "fig4a") body = fig4a(ctx);
  else if (id == "fig4b") body = fig4b(ctx);
  else if (id == "sm-markov") body = sm_markov(ctx);
  else body = sm_cluster(ctx);

  Json fig = {{"figure", id}, {"version", kVersion}, {"panels", body["panels"]}, {"fits", body["fits"]}};
  write_json(join_path(ctx.out, "figure.json"), fig);
  Json manifest = base_manifest("figure", cfg);
  manifest["figure"] = id;
  manifest["master_seed"] = ctx.seed;
  manifest["seed_rule"] = "curve k uses stable_hash(master_seed, k); trajectory i of a curve uses "
                          "stable_hash(curve_seed, i)";
  manifest["threads"] = ctx.threads;
  manifest["wall_time_s"] = Json{{"total", sw.total()}};
  write_json(join_path(ctx.out, "manifest.json"), manifest);
  return Json{{"out", ctx.out}, {"figure", fig}};
}

Json check_figure_bundle(const std::string& dir) {
  const Json fig = read_json(join_path(dir, "figure.json"));
  if (!fig.contains("panels") || fig["panels"].empty()) throw Error("figure bundle has no panels");
  Json report = Json::array();
  for (const auto& p : fig["panels"]) {
    if (p["curves"].empty()) throw Error("panel '" + p["id"].get<std::string>() + "' has no curves");
    std::vector<Curve> curves;
    for (const auto& c : p["curves"]) {
      const auto table = read_csv(join_path(dir, c["csv"].get<std::string>()));
      const auto& xc = find_column(table, c["x"]["column"].get<std::string>());
      const auto& yc = find_column(table, c["y"]["column"].get<std::string>());
      Curve cv;
      cv.label = c["label"].get<std::string>();
      const double sx = c["x"]["scale"].get<double>(), sy = c["y"]["scale"].get<double>();
      for (std::size_t i = 0; i < xc.values.size(); ++i) {
        if (!(yc.values[i] > 0) || !std::isfinite(xc.values[i])) continue;
        cv.x.push_back(xc.values[i] * sx);
        cv.y.push_back(yc.values[i] * sy);
      }
      curves.push_back(std::move(cv));
    }
    Json entry = {{"id", p["id"]}, {"n_curves", curves.size()}};
    if (p["collapse"].get<bool>() && curves.size() > 1) {
      entry["collapse"] = try_fit([&] {
        // overlap window: from x = 1 to the smallest curve extent
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& c : curves)
          if (!c.x.empty()) hi = std::min(hi, c.x.back());
        const CollapseQuality q = collapse_quality(curves, 1.0, hi);
        return Json{{"x_lo", q.x_lo}, {"x_hi", q.x_hi}, {"rms_log_spread", q.rms_log_spread},
                    {"max_rel_spread", q.max_rel_spread}};
      });
    }
    report.push_back(entry);
  }
  return report;
}

}  // namespace ddprep::cli
