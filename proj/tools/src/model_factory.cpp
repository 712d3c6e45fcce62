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

#include "ddprep/basis.hpp"
#include "ddprep/errors.hpp"
#include "ddprep/spectra.hpp"
#include "ddprep_cli/commands.hpp"

namespace ddprep::cli {

namespace {

const std::set<std::string> kModelKeys = {"name", "n_sites", "periodic", "n_up",       "dim",
                                          "length", "lx",    "ly",       "open",       "full_space",
                                          "allow_large"};

std::string valid_names() {
  std::string s;
  for (const auto& n : model_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

ModelSpec read_model_spec(const ConfigFile& cfg) {
  cfg.require_known("model", kModelKeys);
  ModelSpec s;
  s.name = cfg.get_string("model", "name");
  const auto names = model_names();
  if (std::find(names.begin(), names.end(), s.name) == names.end())
    throw ConfigError("unknown model '" + s.name + "' (valid names: " + valid_names() + ")");
  s.n_sites = cfg.get_size("model", "n_sites", 0);
  s.periodic = cfg.get_bool("model", "periodic", true);
  s.n_up = cfg.get_optional_size("model", "n_up");
  s.dim = static_cast<int>(cfg.get_size("model", "dim", 1));
  s.length = cfg.get_size("model", "length", 0);
  s.lx = cfg.get_size("model", "lx", 0);
  s.ly = cfg.get_size("model", "ly", 0);
  s.open = cfg.get_bool("model", "open", true);
  s.full_space = cfg.get_bool("model", "full_space", false);
  s.allow_large = cfg.get_bool("model", "allow_large", false);
  return s;
}

std::size_t predicted_dimension(const ModelSpec& s) {
  auto pow2 = [](std::size_t n) { return n >= 63 ? ~std::size_t{0} : std::size_t{1} << n; };
  std::size_t sites = 0, dim = 0;
  if (s.name == "heisenberg_chain") {
    sites = s.n_sites;
    dim = binomial(s.n_sites, s.n_up.value_or(s.n_sites / 2));
  } else if (s.name == "heisenberg_single_particle") {
    sites = 1;
    for (int a = 0; a < s.dim; ++a) sites *= s.length;
    dim = sites;
  } else if (s.name == "heisenberg_2d") {
    sites = s.lx * s.ly;
    dim = binomial(sites, s.n_up.value_or(sites / 2));
  } else if (s.name == "fredkin") {
    sites = s.n_sites;
    dim = binomial(s.n_sites + 2, s.n_sites / 2 + 1) / (s.n_sites / 2 + 2);
  } else if (s.name == "cluster_ising") {
    sites = s.n_sites;
    dim = pow2(s.n_sites);
  } else if (s.name == "qdm") {
    sites = s.lx * s.ly;
    // links: 2 lx ly - lx - ly; the sector size is known only after enumeration
    if (sites > 36 && !s.allow_large)
      throw CapacityError("qdm lattice exceeds the desk-scale cap of 36 sites; set model.allow_large = true",
                          sites, 36);
    dim = 0;
  }
  if (s.full_space) dim = pow2(s.name == "qdm" ? 2 * s.lx * s.ly - s.lx - s.ly : sites);
  return dim;
}

LayeredModel make_model(const ModelSpec& s) {
  const std::size_t predicted = predicted_dimension(s);
  if (!s.allow_large && predicted > kDeskDimension)
    throw CapacityError("sector dimension " + std::to_string(predicted) + " exceeds the desk-scale cap " +
                            std::to_string(kDeskDimension) + "; set model.allow_large = true",
                        predicted, kDeskDimension);
  LayeredModel m;
  if (s.name == "heisenberg_chain") {
    if (!s.n_sites) throw ConfigError("heisenberg_chain needs model.n_sites");
    m = build_heisenberg_chain(s.n_sites, s.periodic, s.n_up.value_or(s.n_sites / 2));
  } else if (s.name == "heisenberg_single_particle") {
    if (!s.length) throw ConfigError("heisenberg_single_particle needs model.length");
    m = build_heisenberg_single_particle(s.dim, s.length);
  } else if (s.name == "heisenberg_2d") {
    if (!s.lx || !s.ly) throw ConfigError("heisenberg_2d needs model.lx and model.ly");
    m = build_heisenberg_2d(s.lx, s.ly, s.open, s.n_up.value_or(s.lx * s.ly / 2));
  } else if (s.name == "fredkin") {
    if (!s.n_sites) throw ConfigError("fredkin needs model.n_sites");
    m = build_fredkin(s.n_sites);
  } else if (s.name == "qdm") {
    if (!s.lx || !s.ly) throw ConfigError("qdm needs model.lx and model.ly");
    m = build_qdm(s.lx, s.ly);
  } else if (s.name == "cluster_ising") {
    if (!s.n_sites) throw ConfigError("cluster_ising needs model.n_sites");
    m = build_cluster_ising(s.n_sites);
  } else {
    throw ConfigError("unknown model '" + s.name + "' (valid names: " + valid_names() + ")");
  }
  if (!s.allow_large && m.basis->size() > kDeskDimension)
    throw CapacityError("sector dimension " + std::to_string(m.basis->size()) + " exceeds the desk-scale cap " +
                            std::to_string(kDeskDimension) + "; set model.allow_large = true",
                        m.basis->size(), kDeskDimension);
  if (s.full_space) m = with_full_space(m, s.allow_large ? (std::size_t{1} << 22) : kDeskDimension);
  return m;
}

StateVector make_initial_state(const std::string& kind, const LayeredModel& model) {
  if (kind == "default") return model.initial_state;
  if (kind == "ground") {
    if (model.ground_state) return *model.ground_state;
    if (!model.ground_manifold.empty()) return model.ground_manifold.front();
    throw ConfigError("model " + model.name + " has no known ground state");
  }
  throw ConfigError("unknown initial_state '" + kind + "' (valid: default, ground)");
}

double model_gap(const LayeredModel& model) {
  return lowest_pair(assemble(model, kDefaultBasisBudget)).gap;
}

std::vector<Column> series_columns(const EnsembleSummary& s) {
  std::vector<Column> cols = {{"t", {}},
                              {"mean_energy", s.energy.mean},
                              {"sem_energy", s.energy.sem},
                              {"mean_infidelity", s.infidelity.mean},
                              {"sem_infidelity", s.infidelity.sem},
                              {"n_alive", {}}};
  for (auto r : s.rounds) cols[0].values.push_back(static_cast<double>(r));
  for (auto n : s.n_alive) cols[5].values.push_back(static_cast<double>(n));
  return cols;
}

}  // namespace ddprep::cli
