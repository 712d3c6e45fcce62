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

#include <chrono>
#include <functional>
#include <string>

#include "ddprep/fits.hpp"
#include "ddprep/spectra.hpp"
#include "ddprep_cli/config.hpp"
#include "ddprep_cli/output.hpp"

namespace ddprep::cli {

Json to_json(const Interval& i);
Json to_json(const FitWindow& w);
Json to_json(const LinearFit& f);
Json to_json(const RateFit& f);
Json to_json(const ExponentFit& f);
Json to_json(const GapResult& g);

/// Runs `fit` and returns its JSON, or {"error": message} on FitError.
Json try_fit(const std::function<Json()>& fit);

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }
  double total() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now(), last_ = start_;
};

/// Common manifest fields; callers append command-specific entries.
Json base_manifest(const std::string& command, const ConfigFile& cfg);

}  // namespace ddprep::cli
