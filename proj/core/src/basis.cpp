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

#include "ddprep/basis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "ddprep/errors.hpp"

namespace ddprep {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(r / g, factor, &r)) return std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

SectorBasis::SectorBasis(std::size_t n_sites, std::vector<Configuration> configs, std::string label)
    : n_sites_(n_sites), configs_(std::move(configs)), label_(std::move(label)) {
  if (n_sites_ > kMaxSites) throw InvalidArgument("n_sites exceeds " + std::to_string(kMaxSites));
  if (configs_.size() > std::numeric_limits<std::uint32_t>::max())
    throw CapacityError("sector too large for 32-bit ordinals", configs_.size(),
                        std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 1; i < configs_.size(); ++i) {
    if (!(configs_[i - 1] < configs_[i]))
      throw InvalidArgument("sector configurations must be strictly sorted");
  }
  for (const auto& c : configs_) {
    if (c.width() > n_sites_) throw InvalidArgument("configuration wider than n_sites");
  }
  full_ = n_sites_ < 63 && configs_.size() == (std::size_t{1} << n_sites_);
  if (!full_) {
    index_.reserve(configs_.size());
    for (std::size_t i = 0; i < configs_.size(); ++i)
      index_.emplace(configs_[i], static_cast<std::uint32_t>(i));
  }
}

std::int64_t SectorBasis::find(const Configuration& c) const {
  if (full_) {
    for (std::size_t w = 1; w < Configuration::kWords; ++w)
      if (c.word(w)) return -1;
    const std::uint64_t v = c.word(0);
    return v < configs_.size() ? static_cast<std::int64_t>(v) : -1;
  }
  auto it = index_.find(c);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t SectorBasis::index(const Configuration& c) const {
  const auto i = find(c);
  if (i < 0) throw SectorEscapeError("configuration " + c.to_string(n_sites_) + " not in sector " + label_);
  return static_cast<std::size_t>(i);
}

void SectorBasis::dump(std::ostream& os) const {
  for (const auto& c : configs_) os << c.to_string(n_sites_) << '\n';
}

BasisPtr enumerate_magnetization_sector(std::size_t n_sites, std::size_t n_up, std::size_t budget) {
  if (n_up > n_sites) throw InvalidArgument("n_up exceeds n_sites");
  if (n_sites > kMaxSites) throw InvalidArgument("n_sites exceeds " + std::to_string(kMaxSites));
  const std::uint64_t count = binomial(n_sites, n_up);
  if (count > budget) throw CapacityError("magnetization sector exceeds budget", count, budget);

  // Ascending combinations of set-bit positions; colex order equals numeric order.
  std::vector<Configuration> configs;
  configs.reserve(count);
  std::vector<std::size_t> pos(n_up);
  for (std::size_t i = 0; i < n_up; ++i) pos[i] = i;
  while (true) {
    Configuration c;
    for (auto p : pos) c.set(p);
    configs.push_back(c);
    std::size_t j = 0;
    while (j < n_up && (j + 1 < n_up ? pos[j] + 1 == pos[j + 1] : pos[j] + 1 == n_sites)) ++j;
    if (j == n_up) break;
    ++pos[j];
    for (std::size_t i = 0; i < j; ++i) pos[i] = i;
  }
  return std::make_shared<SectorBasis>(n_sites, std::move(configs),
                                       "Z=" + std::to_string(n_up) + "/" + std::to_string(n_sites));
}

BasisPtr enumerate_full_space(std::size_t n_sites, std::size_t budget) {
  if (n_sites >= 63 || (std::size_t{1} << n_sites) > budget)
    throw CapacityError("full space exceeds budget",
                        n_sites >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << n_sites),
                        budget);
  std::vector<Configuration> configs(std::size_t{1} << n_sites);
  for (std::size_t v = 0; v < configs.size(); ++v) configs[v] = Configuration::from_uint(v);
  return std::make_shared<SectorBasis>(n_sites, std::move(configs), "full");
}

namespace {

struct CompiledMove {
  Configuration mask, from, to;
};

CompiledMove compile(const LocalMove& m) {
  if (m.from.size() != m.to.size())
    throw MalformedMoveError("move patterns differ in width: '" + m.from + "' vs '" + m.to + "'");
  if (m.from.size() != m.support.size())
    throw MalformedMoveError("move pattern width does not match its support");
  CompiledMove c;
  for (std::size_t j = 0; j < m.support.size(); ++j) {
    const char a = m.from[j], b = m.to[j];
    if ((a != '0' && a != '1') || (b != '0' && b != '1'))
      throw MalformedMoveError("move patterns must be 0/1 strings");
    if (m.support[j] >= kMaxSites) throw MalformedMoveError("move support out of range");
    if (c.mask.test(m.support[j])) throw MalformedMoveError("move support has repeated sites");
    c.mask.set(m.support[j]);
    if (a == '1') c.from.set(m.support[j]);
    if (b == '1') c.to.set(m.support[j]);
  }
  return c;
}

std::optional<Configuration> apply_compiled(const Configuration& c, const CompiledMove& m) {
  const Configuration local = c & m.mask;
  if (local == m.from) return c ^ m.from ^ m.to;
  if (local == m.to) return c ^ m.to ^ m.from;
  return std::nullopt;
}

}  // namespace

std::optional<Configuration> apply_move(const Configuration& c, const LocalMove& move) {
  return apply_compiled(c, compile(move));
}

BasisPtr enumerate_reachable_sector(std::size_t n_sites, const Configuration& seed,
                                    const std::vector<LocalMove>& moves, std::string label,
                                    std::size_t budget, Traversal order) {
  std::vector<CompiledMove> compiled;
  compiled.reserve(moves.size());
  for (const auto& m : moves) {
    compiled.push_back(compile(m));
    for (auto s : m.support)
      if (s >= n_sites) throw MalformedMoveError("move support exceeds n_sites");
  }
  if (seed.width() > n_sites) throw InvalidArgument("seed wider than n_sites");

  std::unordered_set<Configuration, ConfigurationHash> seen{seed};
  std::deque<Configuration> frontier{seed};
  while (!frontier.empty()) {
    Configuration c;
    if (order == Traversal::breadth_first) {
      c = frontier.front();
      frontier.pop_front();
    } else {
      c = frontier.back();
      frontier.pop_back();
    }
    for (const auto& m : compiled) {
      auto next = apply_compiled(c, m);
      if (next && seen.insert(*next).second) {
        if (seen.size() > budget) throw CapacityError("reachable sector exceeds budget", seen.size(), budget);
        frontier.push_back(*next);
      }
    }
  }
  std::vector<Configuration> configs(seen.begin(), seen.end());
  std::sort(configs.begin(), configs.end());
  return std::make_shared<SectorBasis>(n_sites, std::move(configs), std::move(label));
}

}  // namespace ddprep
