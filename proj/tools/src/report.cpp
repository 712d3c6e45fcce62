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

#include "ddprep_cli/report.hpp"

#include "ddprep/errors.hpp"
#include "ddprep/version.hpp"

namespace ddprep::cli {

Json to_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json to_json(const FitWindow& w) { return Json{{"lo", w.lo}, {"hi", w.hi}, {"n_points", w.n_points}}; }

Json to_json(const LinearFit& f) {
  return Json{{"slope", f.slope},   {"slope_se", f.slope_se},         {"intercept", f.intercept},
              {"intercept_se", f.intercept_se}, {"r2", f.r2}, {"residual_rms", f.residual_rms},
              {"n", f.n}};
}

Json to_json(const RateFit& f) {
  return Json{{"lambda", f.lam},       {"lambda_ci", to_json(f.lam_ci)}, {"slope", f.slope},
              {"intercept", f.intercept}, {"rate_unit", f.rate_unit},   {"r2", f.r2},
              {"window", to_json(f.window)}};
}

Json to_json(const ExponentFit& f) {
  return Json{{"exponent", f.exponent}, {"ci", to_json(f.ci)},  {"prefactor", f.prefactor},
              {"r2", f.r2},             {"window", to_json(f.window)}, {"stable", f.stable},
              {"half_slope_gap", f.half_slope_gap}};
}

Json to_json(const GapResult& g) {
  return Json{{"e0", g.e0},
              {"e1", g.e1},
              {"gap", g.gap},
              {"degeneracy", g.degeneracy},
              {"residual", g.residual},
              {"iterations", g.iterations},
              {"method", g.method}};
}

Json try_fit(const std::function<Json()>& fit) {
  try {
    return fit();
  } catch (const FitError& e) {
    return Json{{"error", e.what()}};
  }
}

Json base_manifest(const std::string& command, const ConfigFile& cfg) {
  return Json{{"tool", "ddprep"},
              {"version", kVersion},
              {"command", command},
              {"config_source", cfg.source()},
              {"config", cfg.to_json()},
              {"config_text", cfg.canonical_text()}};
}

}  // namespace ddprep::cli
