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

#include <Eigen/Core>

#include "ddprep/basis.hpp"

namespace ddprep {

using cplx = std::complex<double>;

/// Complex amplitudes over a SectorBasis.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(BasisPtr basis)
      : basis_(std::move(basis)), amps_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->size()))) {}
  StateVector(BasisPtr basis, Eigen::VectorXcd amps);

  static StateVector basis_state(BasisPtr basis, const Configuration& c);
  /// Equal-amplitude superposition over every member of the basis.
  static StateVector uniform(BasisPtr basis);

  const BasisPtr& basis() const { return basis_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[static_cast<Eigen::Index>(i)]; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  double squared_norm() const { return amps_.squaredNorm(); }
  /// Returns the norm before scaling.
  double normalize();

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amps_;
};

void require_same_basis(const SectorBasis* a, const SectorBasis* b);

}  // namespace ddprep
