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
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ddprep/fits.hpp"
#include "ddprep/models.hpp"

namespace ddprep {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

struct SparseHamiltonian {
  SparseMatrix matrix;
  std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
  /// max |H - H^dagger| entry.
  double hermiticity_error() const;
  double quadratic_form(const Eigen::VectorXcd& v) const { return std::real(v.dot(matrix * v)); }
};

SparseHamiltonian assemble(const LayeredModel& model, std::size_t budget = std::size_t{1} << 22);

struct SolverOptions {
  std::size_t block_size = 2;
  double tol = 1e-10;
  std::size_t max_iterations = 5000;
  std::size_t dense_threshold = 2048;
  std::size_t n_eigenvalues = 4;
  std::size_t max_basis = 240;
  double degeneracy_tol = 1e-10;
  bool force_iterative = false;
  std::uint64_t seed = 7;
};

struct GapResult {
  double e0 = 0, e1 = 0, gap = 0;
  std::size_t degeneracy = 1;
  std::vector<double> eigenvalues;  // lowest few, ascending
  Eigen::VectorXcd ground;
  std::size_t iterations = 0;
  double residual = 0;
  std::string method;
};

GapResult lowest_pair(const SparseHamiltonian& h, const SolverOptions& opts = {});

struct GapScalingFit {
  double z = 0;
  Interval ci;
  LinearFit fit;  // log gap vs log N
  std::vector<double> residuals;
};

/// Least squares of log Delta on log N with slope -z/d.
GapScalingFit gap_scaling_fit(const std::vector<double>& sizes, const std::vector<double>& gaps, int dim);

}  // namespace ddprep
