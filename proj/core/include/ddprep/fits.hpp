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
#include <string>
#include <vector>

namespace ddprep {

struct LinearFit {
  double slope = 0, intercept = 0;
  double slope_se = 0, intercept_se = 0;
  double r2 = 0;
  double residual_rms = 0;
  std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct Interval {
  double lo = 0, hi = 0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct FitWindow {
  double lo = 0, hi = 0;
  std::size_t n_points = 0;
};

/// Multiplier of the standard error used for every reported interval.
inline constexpr double kIntervalZ = 1.96;

struct RateFit {
  double lam = 0;
  Interval lam_ci;
  double slope = 0;      // d log y / dt
  double intercept = 0;  // log y at t = 0
  double rate_unit = 0;  // Delta^max(1,beta), or Delta/|log Delta| at beta = 1
  double r2 = 0;
  FitWindow window;
};

struct LateWindowOptions {
  double lo_units = 1.0;  // window start in units of 1/Delta
  double hi_units = 3.0;  // window end in units of 1/Delta
  std::size_t min_points = 3;
};

/// Linear fit of log y over t in [lo/Delta, min(hi/Delta, last positive t)].
RateFit fit_late_rate(const std::vector<double>& t, const std::vector<double>& y, double gap, double beta,
                      const LateWindowOptions& opts = {});

/// Rate unit Delta^max(1,beta); Delta/|log Delta| when beta == 1.
double rate_unit(double gap, double beta);

struct ExponentFit {
  double exponent = 0;
  Interval ci;
  double prefactor = 0;  // y ~ prefactor * t^exponent
  double r2 = 0;
  FitWindow window;
  bool stable = true;       // both window halves agree within `stability_tol`
  double half_slope_gap = 0;
};

struct EarlyWindowOptions {
  double lo = 5.0;          // absolute start
  double hi_units = 0.3;    // end in units of 1/Delta (ignored when hi_abs > 0)
  double hi_abs = 0.0;
  std::size_t min_points = 8;
  double stability_tol = 0.15;
};

ExponentFit fit_early_exponent(const std::vector<double>& t, const std::vector<double>& y, double gap,
                               const EarlyWindowOptions& opts = {});

struct PrefactorFit {
  double exponent = 0;  // f(N) ~ N^exponent
  Interval ci;
  double r2 = 0;
  double collapse_slope = 0;  // log f vs log(N sqrt(Delta))
  double collapse_r2 = 0;
  double loose_slope = 0;     // log f vs log(N / sqrt(Delta))
  double loose_r2 = 0;
};

/// Fits late-time intercepts f(N) against N; needs at least three sizes.
PrefactorFit fit_prefactor(const std::vector<double>& sizes, const std::vector<double>& intercepts,
                           const std::vector<double>& gaps);

/// First t with y(t) <= target, linearly interpolated.
double convergence_time(const std::vector<double>& t, const std::vector<double>& y, double target);

struct Curve {
  std::string label;
  std::vector<double> x, y;
};

struct CollapseQuality {
  double rms_log_spread = 0;   // mean over the grid of the std of log y across curves
  double max_rel_spread = 0;   // max over the grid of (max y - min y) / mean y
  double x_lo = 0, x_hi = 0;
  std::size_t n_grid = 0;
};

/// Compares curves on a common grid inside their shared x-range
/// (optionally restricted to [x_lo, x_hi]); y must be positive there.
CollapseQuality collapse_quality(const std::vector<Curve>& curves, double x_lo, double x_hi, std::size_t n_grid = 50);

/// Linear interpolation of y(x) at `at` (x ascending).
double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at);

}  // namespace ddprep
