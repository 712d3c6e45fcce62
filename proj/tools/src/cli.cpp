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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "ddprep/errors.hpp"
#include "ddprep/protocol.hpp"
#include "ddprep/version.hpp"
#include "ddprep_cli/commands.hpp"

namespace ddprep::cli {

namespace {

ConfigFile load_config(const std::string& path) {
  if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    const Json manifest = read_json(path);
    if (!manifest.contains("config_text"))
      throw ConfigError(path + ": manifest has no config_text entry");
    return ConfigFile::parse_string(manifest["config_text"].get<std::string>(), path);
  }
  return ConfigFile::load(path);
}

std::optional<std::size_t> env_threads() {
  const char* v = std::getenv("DDPREP_THREADS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0) throw ConfigError(std::string("DDPREP_THREADS must be a positive integer, got '") + v + "'");
  return static_cast<std::size_t>(n);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Dissipative state preparation by detect-and-correct rounds"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, figure_id;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "INI config file, or a manifest.json to replay");
    if (needs_config) c->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "Master seed (overrides ensemble.master_seed)");
    sub->add_option("--threads", threads, "Worker threads (default DDPREP_THREADS or hardware)")
        ->check(CLI::PositiveNumber);
  };
  auto* run = app.add_subcommand("run", "Simulate a trajectory ensemble");
  auto* gap = app.add_subcommand("gap", "Spectral gaps and the dynamical exponent");
  auto* fig = app.add_subcommand("figure", "Write a figure bundle");
  auto* markov = app.add_subcommand("markov", "Classical reset Markov chain");
  auto* resetfree = app.add_subcommand("resetfree", "Reset-free projection dynamics");
  for (auto* s : {run, gap, markov, resetfree}) add_common(s, true);
  add_common(fig, false);
  std::string ids;
  for (const auto& id : figure_ids()) ids += (ids.empty() ? "" : ", ") + id;
  fig->add_option("id", figure_id, "Figure id: " + ids)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    CommonOptions opts;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (run->count("--seed") || gap->count("--seed") || fig->count("--seed") || markov->count("--seed") ||
        resetfree->count("--seed"))
      opts.seed = seed;
    opts.threads = threads ? std::optional<std::size_t>(threads) : env_threads();
    const ConfigFile cfg = config_path.empty() ? ConfigFile::parse_string("", "<defaults>") : load_config(config_path);
    Json result;
    if (*run) result = cmd_run(cfg, opts);
    else if (*gap) result = cmd_gap(cfg, opts);
    else if (*markov) result = cmd_markov(cfg, opts);
    else if (*resetfree) result = cmd_resetfree(cfg, opts);
    else result = cmd_figure(figure_id, cfg, opts);
    std::cout << "wrote " << result.value("out", std::string(".")) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "ddprep: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ddprep: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ddprep::cli
