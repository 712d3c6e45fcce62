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

#include "ddprep/configuration.hpp"

#include "ddprep/errors.hpp"

namespace ddprep {

Configuration Configuration::from_string(std::string_view bits) {
  if (bits.size() > kMaxSites)
    throw InvalidArgument("configuration string longer than " + std::to_string(kMaxSites));
  Configuration c;
  const std::size_t n = bits.size();
  for (std::size_t k = 0; k < n; ++k) {
    const char ch = bits[k];
    if (ch != '0' && ch != '1') throw InvalidArgument("configuration string must be 0/1");
    if (ch == '1') c.set(n - 1 - k);
  }
  return c;
}

std::size_t Configuration::width() const {
  for (std::size_t i = kWords; i-- > 0;) {
    if (words_[i]) return 64 * i + (64 - static_cast<std::size_t>(std::countl_zero(words_[i])));
  }
  return 0;
}

std::string Configuration::to_string(std::size_t n_sites) const {
  std::string s(n_sites, '0');
  for (std::size_t i = 0; i < n_sites; ++i)
    if (test(i)) s[n_sites - 1 - i] = '1';
  return s;
}

std::size_t Configuration::hash() const {
  // splitmix-style fold
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    std::uint64_t z = w + h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ddprep
