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

#include "ddprep/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddprep/errors.hpp"

namespace ddprep {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw FitError("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw FitError("linear fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0) throw FitError("degenerate fit: all x values coincide");
  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.residual_rms = std::sqrt(ss_res / static_cast<double>(n));
  f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  if (n > 2) {
    const double s2 = ss_res / static_cast<double>(n - 2);
    f.slope_se = std::sqrt(s2 / sxx);
    f.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  }
  return f;
}

double rate_unit(double gap, double beta) {
  if (!(gap > 0)) throw FitError("gap must be positive");
  if (std::abs(beta - 1.0) < 1e-12) return gap / std::abs(std::log(gap));
  return std::pow(gap, std::max(1.0, beta));
}

RateFit fit_late_rate(const std::vector<double>& t, const std::vector<double>& y, double gap, double beta,
                      const LateWindowOptions& opts) {
  if (t.size() != y.size()) throw FitError("series lengths differ");
  const double lo = opts.lo_units / gap;
  double hi = opts.hi_units / gap;
  // stop at the last positive mean before the window end
  double last_pos = -1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > hi) break;
    if (y[i] > 0)
      last_pos = t[i];
    else if (t[i] >= lo)
      break;
  }
  hi = std::min(hi, last_pos);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= lo && t[i] <= hi && y[i] > 0) {
      xs.push_back(t[i]);
      ys.push_back(std::log(y[i]));
    }
  if (xs.size() < std::max<std::size_t>(2, opts.min_points))
    throw FitError("window too short for late-rate fit: " + std::to_string(xs.size()) + " points in [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const auto f = linear_fit(xs, ys);
  RateFit r;
  r.rate_unit = rate_unit(gap, beta);
  r.slope = f.slope;
  r.intercept = f.intercept;
  r.lam = -f.slope / r.rate_unit;
  const double half = kIntervalZ * f.slope_se / r.rate_unit;
  r.lam_ci = {r.lam - half, r.lam + half};
  r.r2 = f.r2;
  r.window = {xs.front(), xs.back(), xs.size()};
  return r;
}

ExponentFit fit_early_exponent(const std::vector<double>& t, const std::vector<double>& y, double gap,
                               const EarlyWindowOptions& opts) {
  if (t.size() != y.size()) throw FitError("series lengths differ");
  const double hi = opts.hi_abs > 0 ? opts.hi_abs : opts.hi_units / gap;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= opts.lo && t[i] <= hi && t[i] > 0 && y[i] > 0) {
      xs.push_back(std::log(t[i]));
      ys.push_back(std::log(y[i]));
    }
  if (xs.size() < std::max<std::size_t>(3, opts.min_points))
    throw FitError("window too short for early-exponent fit: " + std::to_string(xs.size()) + " points in [" +
                   std::to_string(opts.lo) + ", " + std::to_string(hi) + "]");
  const auto f = linear_fit(xs, ys);
  ExponentFit e;
  e.exponent = f.slope;
  e.ci = {f.slope - kIntervalZ * f.slope_se, f.slope + kIntervalZ * f.slope_se};
  e.prefactor = std::exp(f.intercept);
  e.r2 = f.r2;
  e.window = {std::exp(xs.front()), std::exp(xs.back()), xs.size()};
  const std::size_t mid = xs.size() / 2;
  if (mid >= 2 && xs.size() - mid >= 2) {
    const auto a = linear_fit({xs.begin(), xs.begin() + static_cast<long>(mid)},
                              {ys.begin(), ys.begin() + static_cast<long>(mid)});
    const auto b = linear_fit({xs.begin() + static_cast<long>(mid), xs.end()},
                              {ys.begin() + static_cast<long>(mid), ys.end()});
    e.half_slope_gap = std::abs(a.slope - b.slope);
    e.stable = e.half_slope_gap <= opts.stability_tol;
  }
  return e;
}

PrefactorFit fit_prefactor(const std::vector<double>& sizes, const std::vector<double>& intercepts,
                           const std::vector<double>& gaps) {
  if (sizes.size() < 3) throw FitError("prefactor fit needs at least three sizes");
  if (sizes.size() != intercepts.size() || sizes.size() != gaps.size()) throw FitError("prefactor inputs differ in length");
  std::vector<double> ln, lf, lc, ll;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(intercepts[i] > 0) || !(sizes[i] > 0) || !(gaps[i] > 0)) throw FitError("prefactor inputs must be positive");
    ln.push_back(std::log(sizes[i]));
    lf.push_back(std::log(intercepts[i]));
    lc.push_back(std::log(sizes[i] * std::sqrt(gaps[i])));
    ll.push_back(std::log(sizes[i] / std::sqrt(gaps[i])));
  }
  PrefactorFit p;
  const auto f = linear_fit(ln, lf);
  p.exponent = f.slope;
  p.ci = {f.slope - kIntervalZ * f.slope_se, f.slope + kIntervalZ * f.slope_se};
  p.r2 = f.r2;
  const auto c = linear_fit(lc, lf);
  p.collapse_slope = c.slope;
  p.collapse_r2 = c.r2;
  const auto l = linear_fit(ll, lf);
  p.loose_slope = l.slope;
  p.loose_r2 = l.r2;
  return p;
}

double convergence_time(const std::vector<double>& t, const std::vector<double>& y, double target) {
  if (t.size() != y.size() || t.empty()) throw FitError("convergence series empty or mismatched");
  if (y[0] <= target) return t[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (y[i] <= target) {
      const double f = (y[i - 1] - target) / (y[i - 1] - y[i]);
      return t[i - 1] + f * (t[i] - t[i - 1]);
    }
  }
  throw FitError("series never reaches the target " + std::to_string(target));
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (x.empty()) throw FitError("empty interpolation table");
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double f = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + f * (y[i] - y[i - 1]);
}

CollapseQuality collapse_quality(const std::vector<Curve>& curves, double x_lo, double x_hi, std::size_t n_grid) {
  if (curves.size() < 2) throw FitError("collapse needs at least two curves");
  double lo = x_lo, hi = x_hi;
  for (const auto& c : curves) {
    if (c.x.empty()) throw FitError("empty curve " + c.label);
    lo = std::max(lo, c.x.front());
    hi = std::min(hi, c.x.back());
  }
  if (!(hi > lo) || n_grid < 2) throw FitError("curves do not overlap");
  CollapseQuality q;
  q.x_lo = lo;
  q.x_hi = hi;
  q.n_grid = n_grid;
  double acc = 0;
  for (std::size_t g = 0; g < n_grid; ++g) {
    const double x = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(n_grid - 1);
    std::vector<double> ly;
    double mn = std::numeric_limits<double>::infinity(), mx = -mn, mean = 0;
    for (const auto& c : curves) {
      const double v = interpolate(c.x, c.y, x);
      if (!(v > 0)) throw FitError("non-positive value in collapse curve " + c.label);
      ly.push_back(std::log(v));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      mean += v;
    }
    mean /= static_cast<double>(curves.size());
    double m = 0;
    for (double v : ly) m += v;
    m /= static_cast<double>(ly.size());
    double var = 0;
    for (double v : ly) var += (v - m) * (v - m);
    acc += std::sqrt(var / static_cast<double>(ly.size()));
    q.max_rel_spread = std::max(q.max_rel_spread, (mx - mn) / mean);
  }
  q.rms_log_spread = acc / static_cast<double>(n_grid);
  return q;
}

}  // namespace ddprep
