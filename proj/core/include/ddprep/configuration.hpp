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

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ddprep {

inline constexpr std::size_t kMaxSites = 256;

/// Fixed-width bit pattern; bit i is site (or link) i.
class Configuration {
 public:
  static constexpr std::size_t kWords = kMaxSites / 64;

  constexpr Configuration() = default;

  static constexpr Configuration from_uint(std::uint64_t v) {
    Configuration c;
    c.words_[0] = v;
    return c;
  }
  /// Parses a 0/1 string written most-significant site first.
  static Configuration from_string(std::string_view bits);

  constexpr bool test(std::size_t site) const {
    return (words_[site >> 6] >> (site & 63)) & 1u;
  }
  constexpr void set(std::size_t site, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (site & 63);
    if (value)
      words_[site >> 6] |= mask;
    else
      words_[site >> 6] &= ~mask;
  }
  constexpr void flip(std::size_t site) { words_[site >> 6] ^= std::uint64_t{1} << (site & 63); }

  constexpr std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  constexpr bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  constexpr std::uint64_t word(std::size_t i) const { return words_[i]; }
  /// Index of the highest set bit plus one (0 for the empty pattern).
  std::size_t width() const;

  constexpr Configuration& operator^=(const Configuration& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  constexpr Configuration& operator&=(const Configuration& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  constexpr Configuration& operator|=(const Configuration& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend constexpr Configuration operator^(Configuration a, const Configuration& b) { return a ^= b; }
  friend constexpr Configuration operator&(Configuration a, const Configuration& b) { return a &= b; }
  friend constexpr Configuration operator|(Configuration a, const Configuration& b) { return a |= b; }

  friend constexpr bool operator==(const Configuration&, const Configuration&) = default;
  friend constexpr std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    for (std::size_t i = kWords; i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

  /// Most-significant site first, exactly n_sites characters.
  std::string to_string(std::size_t n_sites) const;

  std::size_t hash() const;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const { return c.hash(); }
};

}  // namespace ddprep
