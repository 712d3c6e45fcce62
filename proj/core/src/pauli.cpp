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

#include "ddprep/pauli.hpp"

#include "ddprep/errors.hpp"

namespace ddprep {

namespace {
constexpr std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

PauliString PauliString::single(std::size_t site, char letter) {
  return from_letters({site}, std::string(1, letter));
}

PauliString PauliString::from_letters(const std::vector<std::size_t>& support, const std::string& letters) {
  if (support.size() != letters.size()) throw InvalidArgument("pauli letters do not match support");
  PauliString p;
  for (std::size_t j = 0; j < support.size(); ++j) {
    const auto s = support[j];
    if (s >= kMaxSites) throw InvalidArgument("pauli site out of range");
    switch (letters[j]) {
      case 'I':
        break;
      case 'X':
        p.x.set(s);
        break;
      case 'Z':
        p.z.set(s);
        break;
      case 'Y':  // Y = i X Z
        p.x.set(s);
        p.z.set(s);
        p.phase += 1;
        break;
      default:
        throw InvalidArgument(std::string("unknown pauli letter '") + letters[j] + "'");
    }
  }
  p.phase &= 3;
  return p;
}

std::complex<double> PauliString::coefficient(const Configuration& c) const {
  const auto parity = (c & z).popcount() & 1u;
  const auto ph = kPhases[phase & 3];
  return parity ? -ph : ph;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  // X^xa Z^za X^xb Z^zb = (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}
  PauliString r;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  r.phase = (a.phase + b.phase + 2 * static_cast<int>((a.z & b.x).popcount() & 1u)) & 3;
  return r;
}

Eigen::MatrixXcd PauliString::local_matrix(const std::vector<std::size_t>& support) const {
  const std::size_t k = support.size();
  const std::size_t m = std::size_t{1} << k;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t p = 0; p < m; ++p) {
    Configuration c;
    for (std::size_t j = 0; j < k; ++j)
      if ((p >> j) & 1u) c.set(support[j]);
    const Configuration t = target(c);
    std::size_t q = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (t.test(support[j])) q |= std::size_t{1} << j;
    u(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = coefficient(c);
  }
  return u;
}

std::string PauliString::to_string(std::size_t n_sites) const {
  std::string s;
  int ph = phase;
  for (std::size_t i = 0; i < n_sites; ++i) {
    const bool bx = x.test(i), bz = z.test(i);
    if (!bx && !bz) continue;
    char letter = bx ? (bz ? 'Y' : 'X') : 'Z';
    if (bx && bz) ph += 3;  // XZ = -i Y
    s += letter + std::to_string(i);
  }
  static const char* prefix[4] = {"", "i", "-", "-i"};
  if (s.empty()) s = "I";
  return prefix[ph & 3] + s;
}

std::vector<PauliString> all_paulis(const std::vector<std::size_t>& support) {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  const std::size_t k = support.size();
  std::size_t count = 1;
  for (std::size_t j = 0; j < k; ++j) count *= 4;
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::string s(k, 'I');
    std::size_t r = idx;
    for (std::size_t j = 0; j < k; ++j) {
      s[j] = letters[r % 4];
      r /= 4;
    }
    out.push_back(PauliString::from_letters(support, s));
  }
  return out;
}

}  // namespace ddprep
