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
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddprep/basis.hpp"
#include "ddprep/pauli.hpp"
#include "ddprep/state.hpp"

namespace ddprep {

/// Gather/scatter plan of one term over a specific basis. Only groups on
/// which the projector acts nontrivially are kept, in ascending ordinal of
/// their first member.
struct TermKernel {
  struct Entry {
    std::uint32_t pattern;
    std::complex<double> value;
  };
  std::size_t width = 0;                       // 2^|support|
  std::vector<std::int32_t> slots;             // n_groups * width, basis ordinal or -1
  std::vector<std::vector<Entry>> vectors;     // nonzero entries of each local vector
  std::size_t n_groups() const { return width ? slots.size() / width : 0; }
};

struct ProjectorTerm {
  std::vector<std::size_t> support;
  std::vector<Eigen::VectorXcd> local_vectors;  // orthonormal, length 2^|support|
  PauliString correction;
  TermKernel kernel;

  std::size_t local_rank() const { return local_vectors.size(); }
  Eigen::MatrixXcd local_matrix() const;
};

class LayeredModel {
 public:
  std::string name;
  std::map<std::string, std::string> parameters;
  BasisPtr basis;
  std::vector<ProjectorTerm> terms;
  std::vector<std::vector<std::size_t>> layers;
  std::optional<StateVector> ground_state;
  /// Orthonormal basis of the zero-energy manifold (contains ground_state).
  std::vector<StateVector> ground_manifold;
  StateVector initial_state;
  /// Lattice dimension d and size N entering the scaling forms.
  int lattice_dim = 1;
  double system_size = 0;
  std::function<double(const std::vector<double>&)> dispersion;
  std::string layer_schedule;

  std::size_t n_layers() const { return layers.size(); }
  /// `name@k=v,...` with keys in sorted order.
  std::string label() const;
};

/// Compiles kernels, checks every structural invariant and sector closure.
/// Builders call this; custom models must too.
void finalize_model(LayeredModel& model);

LayeredModel build_heisenberg_chain(std::size_t n_sites, bool periodic, std::size_t n_up);
LayeredModel build_heisenberg_single_particle(int dim, std::size_t length);
LayeredModel build_heisenberg_2d(std::size_t lx, std::size_t ly, bool open_boundaries, std::size_t n_up);
LayeredModel build_fredkin(std::size_t n_sites);
LayeredModel build_qdm(std::size_t lx_sites, std::size_t ly_sites);
LayeredModel build_cluster_ising(std::size_t n_sites);

/// Same terms and layers over the full 2^n space; the zero-energy manifold
/// is obtained numerically. Used by the random-Pauli correction mode.
LayeredModel with_full_space(const LayeredModel& model, std::size_t budget = 4096);

/// QDM link numbering: horizontal links row-major first, then vertical.
std::size_t qdm_horizontal_link(std::size_t lx, std::size_t x, std::size_t y);
std::size_t qdm_vertical_link(std::size_t lx, std::size_t ly, std::size_t x, std::size_t y);
bool qdm_is_perfect_matching(std::size_t lx, std::size_t ly, const Configuration& c);

/// Dyck condition with the fixed boundary charge: 1 + sum_{i<=x} Z_i >= 0 and
/// total charge zero, with Z = +1 for bit 0.
bool fredkin_is_dyck(std::size_t n_sites, const Configuration& c);

std::vector<std::string> model_names();

}  // namespace ddprep
