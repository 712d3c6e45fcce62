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
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddprep/configuration.hpp"

namespace ddprep {

/// Default ceiling on the number of configurations in a sector.
inline constexpr std::size_t kDefaultBasisBudget = std::size_t{1} << 22;

/// Involutive rewrite of the bits on `support`: `from` <-> `to`.
/// Patterns are written with character j describing support[j].
struct LocalMove {
  std::vector<std::size_t> support;
  std::string from;
  std::string to;
};

class SectorBasis {
 public:
  /// `configs` must be strictly sorted.
  SectorBasis(std::size_t n_sites, std::vector<Configuration> configs, std::string label);

  std::size_t size() const { return configs_.size(); }
  std::size_t n_sites() const { return n_sites_; }
  const std::string& label() const { return label_; }
  const Configuration& operator[](std::size_t i) const { return configs_[i]; }
  const std::vector<Configuration>& configs() const { return configs_; }

  /// Ordinal of `c`, or -1 if it is not a member.
  std::int64_t find(const Configuration& c) const;
  std::size_t index(const Configuration& c) const;  // throws if absent
  bool contains(const Configuration& c) const { return find(c) >= 0; }
  /// True when the basis is all of {0,1}^n in natural order.
  bool is_full_space() const { return full_; }

  void dump(std::ostream& os) const;

 private:
  std::size_t n_sites_;
  std::vector<Configuration> configs_;
  std::string label_;
  bool full_ = false;
  std::unordered_map<Configuration, std::uint32_t, ConfigurationHash> index_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

BasisPtr enumerate_magnetization_sector(std::size_t n_sites, std::size_t n_up,
                                        std::size_t budget = kDefaultBasisBudget);

BasisPtr enumerate_full_space(std::size_t n_sites, std::size_t budget = kDefaultBasisBudget);

enum class Traversal { breadth_first, depth_first };

BasisPtr enumerate_reachable_sector(std::size_t n_sites, const Configuration& seed,
                                    const std::vector<LocalMove>& moves, std::string label,
                                    std::size_t budget = kDefaultBasisBudget,
                                    Traversal order = Traversal::breadth_first);

/// Applies the move if either pattern matches; nullopt otherwise.
std::optional<Configuration> apply_move(const Configuration& c, const LocalMove& move);

std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace ddprep
