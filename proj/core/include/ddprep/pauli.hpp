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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddprep/configuration.hpp"

namespace ddprep {

/// i^phase * X^x * Z^z, with Z applied first.
struct PauliString {
  Configuration x;
  Configuration z;
  int phase = 0;

  static PauliString single(std::size_t site, char letter);
  /// letters[j] in {I,X,Y,Z} acts on support[j].
  static PauliString from_letters(const std::vector<std::size_t>& support, const std::string& letters);

  Configuration target(const Configuration& c) const { return c ^ x; }
  /// Amplitude multiplying |c ^ x> when acting on |c>.
  std::complex<double> coefficient(const Configuration& c) const;
  bool is_identity() const { return !x.any() && !z.any(); }

  /// Dense 2^k x 2^k matrix on `support`; local bit j is support[j].
  Eigen::MatrixXcd local_matrix(const std::vector<std::size_t>& support) const;
  std::string to_string(std::size_t n_sites) const;
};

PauliString operator*(const PauliString& a, const PauliString& b);

/// All 4^k Pauli strings on `support`, identity first.
std::vector<PauliString> all_paulis(const std::vector<std::size_t>& support);

}  // namespace ddprep
