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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddprep/errors.hpp"
#include "ddprep_cli/commands.hpp"
#include "ddprep_cli/config.hpp"
#include "ddprep_cli/output.hpp"

using namespace ddprep;
using namespace ddprep::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ddprep_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "ddprep");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kRunConfig = R"([model]
name = heisenberg_chain
n_sites = 8
[protocol]
max_rounds = 40
[ensemble]
n_trajectories = 64
master_seed = 3
[analysis]
fit = true
[output]
directory = unused
)";

}  // namespace

TEST(Config, ParsesTypedValues) {
  const auto c = ConfigFile::parse_string("[a]\nx = 3\ny = 0.25 # note\nz = true\nl = 8, 10 ,12\ns = hello world\n");
  EXPECT_EQ(c.get_size("a", "x", 0), 3u);
  EXPECT_DOUBLE_EQ(c.get_double("a", "y", 0), 0.25);
  EXPECT_TRUE(c.get_bool("a", "z", false));
  EXPECT_EQ(c.get_size_list("a", "l", {}), (std::vector<std::size_t>{8, 10, 12}));
  EXPECT_EQ(c.get_string("a", "s", ""), "hello world");
  EXPECT_EQ(c.get_size("a", "missing", 7), 7u);
  EXPECT_FALSE(c.get_optional_double("a", "missing").has_value());
}

TEST(Config, DiagnosticsNameTheLine) {
  try {
    ConfigFile::parse_string("[a]\nx = 1\nx = 2\n", "demo.ini");
    FAIL() << "duplicate accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("demo.ini:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ConfigFile::parse_string("x = 1\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse_string("[a\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse_string("[a]\njunk\n"), ConfigError);
  const auto c = ConfigFile::parse_string("[a]\nn = -3\nf = abc\n", "t.ini");
  try {
    c.get_size("a", "n", 0);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("t.ini:2: key 'a.n'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(c.get_double("a", "f", 0), ConfigError);
}

TEST(Config, UnknownKeysAndSections) {
  const auto c = ConfigFile::parse_string("[a]\nx = 1\ntypo = 2\n[b]\n");
  EXPECT_THROW(c.require_known("a", {"x"}), ConfigError);
  EXPECT_THROW(c.require_sections({"a"}), ConfigError);
  EXPECT_NO_THROW(c.require_sections({"a", "b"}));
}

TEST(Config, OverridesAppearInTheCanonicalText) {
  auto c = ConfigFile::parse_string("[b]\ny = 2\n[a]\nx = 1\n");
  c.set("a", "x", "5");
  const auto text = c.canonical_text();
  EXPECT_LT(text.find("[a]"), text.find("[b]"));
  EXPECT_NE(text.find("x = 5"), std::string::npos);
  const auto again = ConfigFile::parse_string(text);
  EXPECT_EQ(again.get_size("a", "x", 0), 5u);
}

TEST(Output, CsvRoundTripIsExact) {
  const auto dir = scratch("csv");
  const std::vector<Column> cols = {{"t", {0, 1, 2}}, {"v", {0.1, 1.0 / 3.0, 1e-300}}};
  write_csv((dir / "a.csv").string(), cols);
  const auto back = read_csv((dir / "a.csv").string());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].values, cols[1].values);
  EXPECT_EQ(find_column(back, "v").name, "v");
  EXPECT_THROW(find_column(back, "w"), Error);
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Cli, RunWritesBundleAndReplaysFromManifest) {
  const auto dir = scratch("run");
  const auto cfg = write_file(dir / "run.ini", kRunConfig);
  ASSERT_EQ(run({"run", "--config", cfg, "--out", (dir / "a").string(), "--threads", "1"}), 0);
  for (const char* f : {"series.csv", "fits.json", "manifest.json"}) EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
  const auto series = read_csv((dir / "a" / "series.csv").string());
  std::vector<std::string> names;
  for (const auto& c : series) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"t", "mean_energy", "sem_energy", "mean_infidelity", "sem_infidelity",
                                             "n_alive"}));
  ASSERT_EQ(run({"run", "--config", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string(),
                 "--threads", "3"}),
            0);
  EXPECT_EQ(slurp(dir / "a" / "series.csv"), slurp(dir / "b" / "series.csv"));
  const auto manifest = read_json((dir / "a" / "manifest.json").string());
  EXPECT_EQ(manifest["master_seed"].get<std::uint64_t>(), 3u);
  EXPECT_EQ(manifest["command"], "run");
}

TEST(Cli, SeedFlagOverridesConfig) {
  const auto dir = scratch("seed");
  const auto cfg = write_file(dir / "run.ini", kRunConfig);
  ASSERT_EQ(run({"run", "--config", cfg, "--out", (dir / "a").string(), "--seed", "3"}), 0);
  ASSERT_EQ(run({"run", "--config", cfg, "--out", (dir / "b").string(), "--seed", "4"}), 0);
  EXPECT_NE(slurp(dir / "a" / "series.csv"), slurp(dir / "b" / "series.csv"));
  const auto m = read_json((dir / "b" / "manifest.json").string());
  EXPECT_EQ(m["master_seed"].get<std::uint64_t>(), 4u);
}

TEST(Cli, ThreadsFromEnvironment) {
  const auto dir = scratch("env");
  const auto cfg = write_file(dir / "run.ini", kRunConfig);
  ::setenv("DDPREP_THREADS", "2", 1);
  ASSERT_EQ(run({"run", "--config", cfg, "--out", (dir / "a").string()}), 0);
  EXPECT_EQ(read_json((dir / "a" / "manifest.json").string())["threads"].get<int>(), 2);
  ::setenv("DDPREP_THREADS", "zero", 1);
  EXPECT_EQ(run({"run", "--config", cfg, "--out", (dir / "b").string()}), 2);
  ::unsetenv("DDPREP_THREADS");
}

TEST(Cli, ConfigErrorsExitWithCodeTwo) {
  const auto dir = scratch("bad");
  const auto cfg = write_file(dir / "bad.ini", "[model]\nname = heisenberg_chain\nn_sites = 8\nbogus = 1\n");
  EXPECT_EQ(run({"run", "--config", cfg, "--out", (dir / "a").string()}), 2);
  EXPECT_FALSE(fs::exists(dir / "a"));
  const auto cfg2 = write_file(dir / "bad2.ini", "[model]\nname = ising\n[output]\n");
  EXPECT_EQ(run({"gap", "--config", cfg2}), 2);
  EXPECT_EQ(run({"figure", "fig9", "--out", (dir / "c").string()}), 2);
  EXPECT_NE(run({"run"}), 0);
}

TEST(Cli, GapWritesDynamicalExponent) {
  const auto dir = scratch("gap");
  const auto cfg = write_file(dir / "gap.ini", "[model]\nname = fredkin\n[gap]\nsizes = 6, 8, 10, 12\n[output]\n");
  ASSERT_EQ(run({"gap", "--config", cfg, "--out", (dir / "g").string()}), 0);
  const auto fits = read_json((dir / "g" / "fits.json").string());
  EXPECT_GT(fits["gap_scaling"]["z"].get<double>(), 1.5);
  EXPECT_EQ(read_json((dir / "g" / "gaps.json").string()).size(), 4u);
}

TEST(Cli, MarkovAndResetFreeBundles) {
  const auto dir = scratch("mk");
  const auto mk = write_file(dir / "m.ini",
                             "[markov]\nmode = kernel\nlength = 16\nt_max = 100\n[ensemble]\nn_trajectories = 200\n"
                             "[output]\n");
  ASSERT_EQ(run({"markov", "--config", mk, "--out", (dir / "m").string()}), 0);
  for (const char* f : {"markov_series.csv", "reset_distributions.csv", "reset_counts.csv", "fits.json"})
    EXPECT_TRUE(fs::exists(dir / "m" / f)) << f;
  const auto rf = write_file(dir / "r.ini", "[model]\nname = heisenberg_single_particle\nlength = 16\n"
                                            "[resetfree]\ntau_max = 60\n[output]\n");
  ASSERT_EQ(run({"resetfree", "--config", rf, "--out", (dir / "r").string()}), 0);
  const auto proj = read_csv((dir / "r" / "projection.csv").string());
  EXPECT_DOUBLE_EQ(find_column(proj, "energy").values[0], 0.5);
}

TEST(Cli, FigureBundleIsSelfDescribing) {
  const auto dir = scratch("fig");
  const auto cfg = write_file(dir / "f.ini", "[figure]\nsizes = 16, 32\nn_trajectories = 100\n");
  ASSERT_EQ(run({"figure", "fig2", "--config", cfg, "--out", (dir / "f").string()}), 0);
  const auto fig = read_json((dir / "f" / "figure.json").string());
  EXPECT_EQ(fig["figure"], "fig2");
  const auto report = check_figure_bundle((dir / "f").string());
  ASSERT_EQ(report.size(), fig["panels"].size());
  bool saw_collapse = false;
  for (const auto& p : report)
    if (p.contains("collapse")) {
      saw_collapse = true;
      EXPECT_TRUE(p["collapse"].contains("max_rel_spread")) << p.dump();
    }
  EXPECT_TRUE(saw_collapse);
  EXPECT_TRUE(fs::exists(dir / "f" / "manifest.json"));
}

TEST(Cli, EveryFigureIdIsListed) {
  const auto ids = figure_ids();
  for (const char* id : {"fig1b", "fig2", "fig3a", "fig3b", "fig4a", "fig4b", "sm-markov", "sm-cluster"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
}
