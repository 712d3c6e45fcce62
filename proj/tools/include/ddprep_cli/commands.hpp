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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddprep/models.hpp"
#include "ddprep/protocol.hpp"
#include "ddprep_cli/config.hpp"
#include "ddprep_cli/output.hpp"

namespace ddprep::cli {

/// Largest sector dimension built without model.allow_large.
inline constexpr std::size_t kDeskDimension = 16384;

struct CommonOptions {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

struct ModelSpec {
  std::string name;
  std::size_t n_sites = 0;
  bool periodic = true;
  std::optional<std::size_t> n_up;
  int dim = 1;
  std::size_t length = 0;
  std::size_t lx = 0, ly = 0;
  bool open = true;
  bool full_space = false;
  bool allow_large = false;
};

ModelSpec read_model_spec(const ConfigFile& cfg);
/// Predicted sector dimension, or 0 when it is only known after enumeration.
std::size_t predicted_dimension(const ModelSpec& spec);
LayeredModel make_model(const ModelSpec& spec);

/// "default" (the model's initial state), "ground", or "neel" (Heisenberg/Fredkin).
StateVector make_initial_state(const std::string& kind, const LayeredModel& model);

/// Lowest excitation gap of the model Hamiltonian.
double model_gap(const LayeredModel& model);

/// The six contracted series columns.
std::vector<Column> series_columns(const EnsembleSummary& s);

Json cmd_run(ConfigFile cfg, const CommonOptions& opts);
Json cmd_gap(ConfigFile cfg, const CommonOptions& opts);
Json cmd_markov(ConfigFile cfg, const CommonOptions& opts);
Json cmd_resetfree(ConfigFile cfg, const CommonOptions& opts);
Json cmd_figure(const std::string& id, ConfigFile cfg, const CommonOptions& opts);

std::vector<std::string> figure_ids();

/// Reads a figure bundle, checks that every referenced CSV column exists,
/// and reports the collapse spread of each panel marked as a collapse.
Json check_figure_bundle(const std::string& dir);

/// Entry point shared by the executable and the tests; returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace ddprep::cli
