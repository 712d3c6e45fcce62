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

#include "ddprep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "ddprep/errors.hpp"
#include "ddprep/rng.hpp"

namespace ddprep {

double SparseHamiltonian::hermiticity_error() const {
  const SparseMatrix diff = matrix - SparseMatrix(matrix.adjoint());
  double m = 0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

SparseHamiltonian assemble(const LayeredModel& model, std::size_t budget) {
  const std::size_t dim = model.basis->size();
  if (dim > budget) throw CapacityError("hamiltonian dimension exceeds budget", dim, budget);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const auto& term : model.terms) {
    const auto& k = term.kernel;
    for (std::size_t g = 0; g < k.n_groups(); ++g) {
      const std::int32_t* slots = &k.slots[g * k.width];
      for (const auto& vec : k.vectors)
        for (const auto& a : vec) {
          if (slots[a.pattern] < 0) continue;
          for (const auto& b : vec) {
            if (slots[b.pattern] < 0) continue;
            trips.emplace_back(slots[a.pattern], slots[b.pattern], a.value * std::conj(b.value));
          }
        }
    }
  }
  SparseHamiltonian h;
  h.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.matrix.setFromTriplets(trips.begin(), trips.end());
  h.matrix.prune(1e-15, 1.0);
  return h;
}

namespace {

void finish_gap(GapResult& r, const std::vector<double>& evals, double tol) {
  r.eigenvalues = evals;
  r.e0 = evals.front();
  r.degeneracy = 1;
  while (r.degeneracy < evals.size() && evals[r.degeneracy] - r.e0 < tol) ++r.degeneracy;
  if (r.degeneracy >= evals.size())
    throw ConvergenceError("ground manifold fills every computed eigenvalue; raise n_eigenvalues");
  r.e1 = evals[r.degeneracy];
  r.gap = r.e1 - r.e0;
}

template <class Matrix>
GapResult dense_solve(const Matrix& dense, const SparseHamiltonian& h, const SolverOptions& opts) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(dense);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  std::vector<double> evals;
  const auto want = static_cast<Eigen::Index>(std::max<std::size_t>(opts.n_eigenvalues, 2));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (i >= want && ev[i] - ev[0] >= opts.degeneracy_tol && ev[i - 1] - ev[0] >= opts.degeneracy_tol) break;
    evals.push_back(ev[i]);
  }
  GapResult r;
  r.method = "dense";
  r.ground = es.eigenvectors().col(0).template cast<cplx>();
  r.residual = (h.matrix * r.ground - evals.front() * r.ground).norm();
  finish_gap(r, evals, opts.degeneracy_tol);
  return r;
}

GapResult dense_lowest(const SparseHamiltonian& h, const SolverOptions& opts) {
  double max_imag = 0;
  for (int k = 0; k < h.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(h.matrix, k); it; ++it) max_imag = std::max(max_imag, std::abs(it.value().imag()));
  if (max_imag < 1e-15) return dense_solve(Eigen::MatrixXd(Eigen::MatrixXcd(h.matrix).real()), h, opts);
  return dense_solve(Eigen::MatrixXcd(h.matrix), h, opts);
}

// Orthonormalizes the columns of `block` against `basis` (two passes) and
// among themselves; returns the number of columns kept.
Eigen::Index orthonormalize(const Eigen::MatrixXcd& basis, Eigen::Index m, Eigen::MatrixXcd& block) {
  Eigen::Index kept = 0;
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    Eigen::VectorXcd v = block.col(c);
    const double n0 = v.norm();
    if (!(n0 > 0)) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (m > 0) v -= basis.leftCols(m) * (basis.leftCols(m).adjoint() * v);
      for (Eigen::Index j = 0; j < kept; ++j) v -= block.col(j) * block.col(j).dot(v);
    }
    const double n1 = v.norm();
    if (n1 < 1e-10 * n0) continue;
    block.col(kept++) = v / n1;
  }
  return kept;
}

GapResult iterative_lowest(const SparseHamiltonian& h, const SolverOptions& opts) {
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  const auto b = static_cast<Eigen::Index>(std::max<std::size_t>(1, opts.block_size));
  const auto nev = static_cast<Eigen::Index>(std::max<std::size_t>(2, opts.n_eigenvalues));
  const Eigen::Index max_basis = std::min<Eigen::Index>(dim, std::max<Eigen::Index>(
                                                               static_cast<Eigen::Index>(opts.max_basis), 3 * (nev + b)));
  Rng rng(opts.seed);
  auto random_block = [&](Eigen::Index cols) {
    Eigen::MatrixXcd blk(dim, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index i = 0; i < dim; ++i) blk(i, c) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    return blk;
  };

  Eigen::MatrixXcd V(dim, max_basis), W(dim, max_basis);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(max_basis, max_basis);
  Eigen::Index m = 0;
  auto append = [&](Eigen::MatrixXcd blk) {
    Eigen::Index k = orthonormalize(V, m, blk);
    if (k == 0) {
      blk = random_block(b);
      k = orthonormalize(V, m, blk);
    }
    k = std::min(k, max_basis - m);
    for (Eigen::Index c = 0; c < k; ++c) {
      V.col(m + c) = blk.col(c);
      W.col(m + c) = h.matrix * blk.col(c);
    }
    const Eigen::MatrixXcd cross = V.leftCols(m + k).adjoint() * W.middleCols(m, k);
    T.block(0, m, m + k, k) = cross;
    T.block(m, 0, k, m + k) = cross.adjoint();
    m += k;
  };
  append(random_block(b));

  GapResult r;
  r.method = "block-lanczos";
  constexpr int kBlocksPerCheck = 8;
  Eigen::Index last = 0;
  int since_check = kBlocksPerCheck;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    r.iterations = it;
    if (since_check < kBlocksPerCheck && m + b <= max_basis && m < dim) {
      ++since_check;
      const Eigen::Index before = m;
      append(W.middleCols(last, m - last));
      last = before;
      continue;
    }
    since_check = 0;
    Eigen::MatrixXcd tm = T.topLeftCorner(m, m);
    tm = 0.5 * (tm + tm.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tm);
    const Eigen::Index k = std::min(nev, m);
    const Eigen::MatrixXcd Y = es.eigenvectors().leftCols(k);
    const Eigen::MatrixXcd X = V.leftCols(m) * Y;
    const Eigen::MatrixXcd R = W.leftCols(m) * Y - X * es.eigenvalues().head(k).asDiagonal();
    double worst = 0;
    std::vector<Eigen::Index> open;
    for (Eigen::Index c = 0; c < k; ++c) {
      const double res = R.col(c).norm();
      worst = std::max(worst, res);
      if (res > opts.tol * std::max(1.0, std::abs(es.eigenvalues()[c]))) open.push_back(c);
    }
    r.residual = worst;
    if (open.empty() && k == nev) {
      std::vector<double> evals(es.eigenvalues().data(), es.eigenvalues().data() + k);
      r.ground = X.col(0);
      r.residual = R.col(0).norm();
      finish_gap(r, evals, opts.degeneracy_tol);
      return r;
    }
    if (m == dim) throw ConvergenceError("krylov space exhausted without convergence");
    Eigen::MatrixXcd next(dim, std::min<Eigen::Index>(b, static_cast<Eigen::Index>(open.size())));
    for (Eigen::Index c = 0; c < next.cols(); ++c) next.col(c) = R.col(open[static_cast<std::size_t>(c)]);
    if (next.cols() == 0) next = random_block(b);
    if (m + next.cols() > max_basis) {
      // thick restart on the lowest Ritz vectors
      const Eigen::Index keep = std::min<Eigen::Index>(m, nev + 2 * b);
      const Eigen::MatrixXcd Yk = es.eigenvectors().leftCols(keep);
      const Eigen::MatrixXcd Vk = V.leftCols(m) * Yk;
      const Eigen::MatrixXcd Wk = W.leftCols(m) * Yk;
      V.leftCols(keep) = Vk;
      W.leftCols(keep) = Wk;
      T.setZero();
      T.topLeftCorner(keep, keep) = es.eigenvalues().head(keep).asDiagonal();
      m = keep;
    }
    last = m;
    append(next);
  }
  throw ConvergenceError("block Lanczos did not converge in " + std::to_string(opts.max_iterations) +
                         " iterations (residual " + std::to_string(r.residual) + ")");
}

}  // namespace

GapResult lowest_pair(const SparseHamiltonian& h, const SolverOptions& opts) {
  if (h.dimension() < 2) throw InvalidArgument("lowest_pair needs dimension >= 2");
  if (!opts.force_iterative && h.dimension() < opts.dense_threshold) return dense_lowest(h, opts);
  if (h.dimension() <= opts.n_eigenvalues + opts.block_size) return dense_lowest(h, opts);
  return iterative_lowest(h, opts);
}

GapScalingFit gap_scaling_fit(const std::vector<double>& sizes, const std::vector<double>& gaps, int dim) {
  if (sizes.size() != gaps.size()) throw FitError("sizes and gaps differ in length");
  if (sizes.size() < 4) throw FitError("gap scaling fit needs at least four sizes");
  const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
  if (*mx < 1.5 * *mn) throw FitError("degenerate fit: sizes span less than a factor 1.5");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(gaps[i] > 0)) throw FitError("gaps must be positive");
    lx.push_back(std::log(sizes[i]));
    ly.push_back(std::log(gaps[i]));
  }
  GapScalingFit g;
  g.fit = linear_fit(lx, ly);
  g.z = -g.fit.slope * dim;
  const double half = kIntervalZ * g.fit.slope_se * dim;
  g.ci = {g.z - half, g.z + half};
  for (std::size_t i = 0; i < lx.size(); ++i) g.residuals.push_back(ly[i] - (g.fit.intercept + g.fit.slope * lx[i]));
  return g;
}

}  // namespace ddprep
