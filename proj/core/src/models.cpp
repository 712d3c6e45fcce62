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

#include "ddprep/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "ddprep/errors.hpp"
#include "ddprep/statevec.hpp"

namespace ddprep {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kNonzero = 1e-14;

Configuration local_pattern(const std::vector<std::size_t>& support, std::size_t p) {
  Configuration c;
  for (std::size_t j = 0; j < support.size(); ++j)
    if ((p >> j) & 1u) c.set(support[j]);
  return c;
}

Eigen::VectorXcd singlet_vector() {
  // local bit 0 = first support site; (|01> - |10>)/sqrt2
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[1] = 1.0 / std::numbers::sqrt2;
  v[2] = -1.0 / std::numbers::sqrt2;
  return v;
}

ProjectorTerm singlet_term(std::size_t a, std::size_t b) {
  ProjectorTerm t;
  t.support = {std::min(a, b), std::max(a, b)};
  t.local_vectors = {singlet_vector()};
  t.correction = PauliString::single(std::min(a, b), 'Z');
  return t;
}

void compile_kernel(ProjectorTerm& term, const SectorBasis& basis) {
  const std::size_t k = term.support.size();
  const std::size_t width = std::size_t{1} << k;
  Configuration mask;
  for (auto s : term.support) {
    if (s >= basis.n_sites()) throw InvalidArgument("term support exceeds n_sites");
    mask.set(s);
  }
  std::vector<Configuration> patterns(width);
  for (std::size_t p = 0; p < width; ++p) patterns[p] = local_pattern(term.support, p);

  std::vector<std::vector<std::size_t>> nonzero(term.local_vectors.size());
  for (std::size_t j = 0; j < term.local_vectors.size(); ++j)
    for (std::size_t p = 0; p < width; ++p)
      if (std::abs(term.local_vectors[j][static_cast<Eigen::Index>(p)]) > kNonzero) nonzero[j].push_back(p);

  TermKernel kern;
  kern.width = width;
  for (std::size_t j = 0; j < term.local_vectors.size(); ++j) {
    std::vector<TermKernel::Entry> entries;
    for (auto p : nonzero[j])
      entries.push_back({static_cast<std::uint32_t>(p), term.local_vectors[j][static_cast<Eigen::Index>(p)]});
    kern.vectors.push_back(std::move(entries));
  }
  std::unordered_map<Configuration, char, ConfigurationHash> seen;
  seen.reserve(basis.size());
  std::vector<std::int32_t> slots(width);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Configuration comp = basis[i] ^ (basis[i] & mask);
    if (!seen.emplace(comp, 0).second) continue;
    for (std::size_t p = 0; p < width; ++p)
      slots[p] = static_cast<std::int32_t>(basis.find(comp | patterns[p]));
    bool active = false;
    for (std::size_t j = 0; j < nonzero.size(); ++j) {
      std::size_t present = 0;
      for (auto p : nonzero[j]) present += slots[p] >= 0;
      if (present > 0 && present < nonzero[j].size()) {
        std::ostringstream os;
        os << "projector on sites {";
        for (auto s : term.support) os << s << ' ';
        os << "} leaves sector " << basis.label() << " from " << basis[i].to_string(basis.n_sites());
        throw SectorEscapeError(os.str());
      }
      active = active || present > 0;
    }
    if (active) kern.slots.insert(kern.slots.end(), slots.begin(), slots.end());
  }
  term.kernel = std::move(kern);
}

std::vector<bool> diagonal_sites(const ProjectorTerm& t) {
  const Eigen::MatrixXcd p = t.local_matrix();
  std::vector<bool> diag(t.support.size());
  for (std::size_t j = 0; j < t.support.size(); ++j) {
    const Eigen::MatrixXcd z = PauliString::single(t.support[j], 'Z').local_matrix(t.support);
    diag[j] = (p * z - z * p).norm() < kOrthoTol;
  }
  return diag;
}

void set_dicke_ground(LayeredModel& m) {
  m.ground_state = StateVector::uniform(m.basis);
  m.ground_manifold = {*m.ground_state};
}

std::string join_sites(const std::vector<std::size_t>& s) {
  std::string out;
  for (auto v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

}  // namespace

Eigen::MatrixXcd ProjectorTerm::local_matrix() const {
  const auto w = static_cast<Eigen::Index>(std::size_t{1} << support.size());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(w, w);
  for (const auto& v : local_vectors) p += v * v.adjoint();
  return p;
}

std::string LayeredModel::label() const {
  std::string s = name + "@";
  bool first = true;
  for (const auto& [k, v] : parameters) {
    s += (first ? "" : ",") + k + "=" + v;
    first = false;
  }
  return s;
}

void finalize_model(LayeredModel& m) {
  if (!m.basis) throw InvalidArgument("model has no basis");
  const std::size_t n_terms = m.terms.size();

  std::vector<int> owner(n_terms, -1);
  for (std::size_t a = 0; a < m.layers.size(); ++a) {
    for (auto t : m.layers[a]) {
      if (t >= n_terms) throw InvalidArgument("layer references unknown term");
      if (owner[t] >= 0) throw InvalidArgument("term " + std::to_string(t) + " appears in two layers");
      owner[t] = static_cast<int>(a);
    }
  }
  for (std::size_t t = 0; t < n_terms; ++t)
    if (owner[t] < 0) throw InvalidArgument("term " + std::to_string(t) + " is in no layer");

  std::vector<std::vector<bool>> diag(n_terms);
  for (std::size_t t = 0; t < n_terms; ++t) {
    auto& term = m.terms[t];
    const std::size_t width = std::size_t{1} << term.support.size();
    if (term.support.empty() || term.local_vectors.empty()) throw InvalidArgument("empty projector term");
    for (std::size_t i = 0; i < term.local_vectors.size(); ++i) {
      if (static_cast<std::size_t>(term.local_vectors[i].size()) != width)
        throw InvalidArgument("local vector has wrong dimension");
      for (std::size_t j = 0; j <= i; ++j) {
        const cplx ip = term.local_vectors[j].dot(term.local_vectors[i]);
        if (std::abs(ip - cplx(i == j ? 1.0 : 0.0)) > kOrthoTol)
          throw InvalidArgument("local vectors of term on {" + join_sites(term.support) + "} not orthonormal");
      }
    }
    Configuration mask;
    for (auto s : term.support) mask.set(s);
    if (((term.correction.x | term.correction.z) & mask) != (term.correction.x | term.correction.z))
      throw InvalidArgument("correction acts outside the term support");
    const Eigen::MatrixXcd p = term.local_matrix();
    const Eigen::MatrixXcd u = term.correction.local_matrix(term.support);
    if ((p * u - u * p).norm() < kOrthoTol)
      throw InvalidArgument("correction commutes with the projector on {" + join_sites(term.support) + "}");
    diag[t] = diagonal_sites(term);
  }

  for (const auto& layer : m.layers) {
    for (std::size_t i = 0; i < layer.size(); ++i) {
      for (std::size_t j = i + 1; j < layer.size(); ++j) {
        const auto& a = m.terms[layer[i]];
        const auto& b = m.terms[layer[j]];
        for (std::size_t ja = 0; ja < a.support.size(); ++ja) {
          for (std::size_t jb = 0; jb < b.support.size(); ++jb) {
            if (a.support[ja] == b.support[jb] && !(diag[layer[i]][ja] && diag[layer[j]][jb]))
              throw InvalidArgument("terms " + std::to_string(layer[i]) + " and " + std::to_string(layer[j]) +
                                    " share site " + std::to_string(a.support[ja]) + " within a layer");
          }
        }
      }
    }
  }

  for (auto& term : m.terms) {
    compile_kernel(term, *m.basis);
    if (term.correction.x.any()) {
      for (const auto& c : m.basis->configs())
        if (!m.basis->contains(term.correction.target(c)))
          throw SectorEscapeError("correction " + term.correction.to_string(m.basis->n_sites()) +
                                  " leaves sector " + m.basis->label());
    }
  }

  auto check_state = [&](const StateVector& s, const char* what) {
    require_same_basis(s.basis().get(), m.basis.get());
    if (std::abs(s.norm() - 1.0) > 1e-10) throw InvalidArgument(std::string(what) + " is not normalized");
  };
  check_state(m.initial_state, "initial state");
  if (m.ground_state) {
    check_state(*m.ground_state, "ground state");
    for (const auto& term : m.terms) {
      if (std::sqrt(term_expectation(*m.ground_state, term)) > 1e-10)
        throw InvalidArgument("ground state is not annihilated by every projector");
    }
  }
  for (const auto& g : m.ground_manifold) check_state(g, "ground manifold vector");
}

LayeredModel build_heisenberg_chain(std::size_t n, bool periodic, std::size_t n_up) {
  if (n < 4 || n % 2) throw InvalidArgument("heisenberg chain needs an even n_sites >= 4");
  if (n_up > n) throw InvalidArgument("n_up exceeds n_sites");
  LayeredModel m;
  m.name = "heisenberg_chain";
  m.parameters = {{"n_sites", std::to_string(n)}, {"periodic", periodic ? "1" : "0"}, {"n_up", std::to_string(n_up)}};
  m.basis = enumerate_magnetization_sector(n, n_up);
  m.layers.resize(2);
  const std::size_t n_bonds = periodic ? n : n - 1;
  for (std::size_t i = 0; i < n_bonds; ++i) {
    m.layers[i % 2].push_back(m.terms.size());
    m.terms.push_back(singlet_term(i, (i + 1) % n));
  }
  Configuration neel;
  std::size_t placed = 0;
  for (std::size_t pass = 0; pass < 2; ++pass)
    for (std::size_t i = 1 - pass; i < n && placed < n_up; i += 2, ++placed) neel.set(i);
  m.initial_state = StateVector::basis_state(m.basis, neel);
  set_dicke_ground(m);
  m.lattice_dim = 1;
  m.system_size = static_cast<double>(n);
  m.layer_schedule = "even bonds, odd bonds";
  finalize_model(m);
  return m;
}

LayeredModel build_heisenberg_single_particle(int dim, std::size_t length) {
  if (dim < 1 || dim > 3) throw InvalidArgument("single-particle dimension must be 1, 2 or 3");
  if (length < 4 || length % 2) throw InvalidArgument("single-particle length must be even and >= 4");
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= length;
  if (n > kMaxSites) throw CapacityError("single-particle lattice exceeds site capacity", n, kMaxSites);

  LayeredModel m;
  m.name = "heisenberg_single_particle";
  m.parameters = {{"dim", std::to_string(dim)}, {"length", std::to_string(length)}};
  m.basis = enumerate_magnetization_sector(n, 1);
  m.layers.resize(2 * static_cast<std::size_t>(dim));
  std::size_t stride = 1;
  for (int a = 0; a < dim; ++a) {
    for (std::size_t site = 0; site < n; ++site) {
      const std::size_t xa = (site / stride) % length;
      const std::size_t nb = site - xa * stride + ((xa + 1) % length) * stride;
      m.layers[2 * static_cast<std::size_t>(a) + xa % 2].push_back(m.terms.size());
      m.terms.push_back(singlet_term(site, nb));
    }
    stride *= length;
  }
  for (auto& layer : m.layers) std::sort(layer.begin(), layer.end());

  StateVector psi0(m.basis);
  Configuration c0, c1;
  c0.set(0);
  c1.set(1);
  psi0[m.basis->index(c0)] = 1.0 / std::numbers::sqrt2;
  psi0[m.basis->index(c1)] = 1.0 / std::numbers::sqrt2;
  m.initial_state = psi0;
  set_dicke_ground(m);
  m.lattice_dim = dim;
  m.system_size = static_cast<double>(n);
  m.dispersion = [](const std::vector<double>& k) {
    double e = 0;
    for (double ka : k) e += 1.0 - std::cos(ka);
    return e;
  };
  m.layer_schedule = "axis-major, even then odd bonds";
  finalize_model(m);
  return m;
}

LayeredModel build_heisenberg_2d(std::size_t lx, std::size_t ly, bool open_boundaries, std::size_t n_up) {
  if (lx < 2 || ly < 2) throw InvalidArgument("2d lattice needs lx, ly >= 2");
  if (!open_boundaries && (lx % 2 || ly % 2 || lx < 4 || ly < 4))
    throw InvalidArgument("periodic 2d lattice needs even lx, ly >= 4");
  const std::size_t n = lx * ly;
  if (n_up > n) throw InvalidArgument("n_up exceeds site count");
  LayeredModel m;
  m.name = "heisenberg_2d";
  m.parameters = {{"lx", std::to_string(lx)},
                  {"ly", std::to_string(ly)},
                  {"open", open_boundaries ? "1" : "0"},
                  {"n_up", std::to_string(n_up)}};
  m.basis = enumerate_magnetization_sector(n, n_up);
  m.layers.resize(4);
  auto site = [lx](std::size_t x, std::size_t y) { return x + lx * y; };
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x) {
      if (x + 1 < lx || !open_boundaries) {
        m.layers[x % 2].push_back(m.terms.size());
        m.terms.push_back(singlet_term(site(x, y), site((x + 1) % lx, y)));
      }
    }
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x) {
      if (y + 1 < ly || !open_boundaries) {
        m.layers[2 + y % 2].push_back(m.terms.size());
        m.terms.push_back(singlet_term(site(x, y), site(x, (y + 1) % ly)));
      }
    }
  Configuration neel;
  std::size_t placed = 0;
  for (std::size_t pass = 0; pass < 2; ++pass)
    for (std::size_t y = 0; y < ly; ++y)
      for (std::size_t x = 0; x < lx; ++x)
        if ((x + y) % 2 == 1 - pass && placed < n_up) {
          neel.set(site(x, y));
          ++placed;
        }
  m.initial_state = StateVector::basis_state(m.basis, neel);
  set_dicke_ground(m);
  m.lattice_dim = 2;
  m.system_size = static_cast<double>(n);
  m.layer_schedule = "horizontal even, horizontal odd, vertical even, vertical odd";
  finalize_model(m);
  return m;
}

bool fredkin_is_dyck(std::size_t n, const Configuration& c) {
  long h = 1;
  for (std::size_t i = 0; i < n; ++i) {
    h += c.test(i) ? -1 : 1;
    if (h < 0) return false;
  }
  return h == 1;
}

LayeredModel build_fredkin(std::size_t n) {
  if (n < 4 || n % 2) throw InvalidArgument("fredkin chain needs an even n_sites >= 4");
  LayeredModel m;
  m.name = "fredkin";
  m.parameters = {{"n_sites", std::to_string(n)}};

  // Paper site j (1-based) is bit j-1; boundary sites 0 and N+1 are implicit.
  std::vector<LocalMove> moves;
  m.layers.resize(3);
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    const std::size_t a = j - 1, b = j;
    ProjectorTerm t;
    const bool left_bulk = j > 1, right_bulk = j + 1 < n;
    if (left_bulk && right_bulk) {
      // support: [left ctrl, a, b, right ctrl]; kept controls 00, 01, 11
      t.support = {a - 1, a, b, b + 1};
      for (std::size_t ctrl : {0u, 1u, 3u}) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
        const std::size_t lc = ctrl >> 1, rc = ctrl & 1u;  // ctrl bits: (site j-1, site j+2)
        const std::size_t base = lc | (rc << 3);
        v[static_cast<Eigen::Index>(base | 0b0100)] = 1.0 / std::numbers::sqrt2;   // a=0, b=1
        v[static_cast<Eigen::Index>(base | 0b0010)] = -1.0 / std::numbers::sqrt2;  // a=1, b=0
        t.local_vectors.push_back(v);
        const std::string l(1, lc ? '1' : '0'), r(1, rc ? '1' : '0');
        moves.push_back({t.support, l + "01" + r, l + "10" + r});
      }
    } else {
      // "10" on the controls is excluded by the fixed boundary charges
      t.support = {a, b};
      t.local_vectors = {singlet_vector()};
      moves.push_back({t.support, "01", "10"});
    }
    t.correction = PauliString::single(a, 'Z');
    m.layers[j % 3].push_back(m.terms.size());
    m.terms.push_back(std::move(t));
  }
  Configuration neel;
  for (std::size_t i = 1; i < n; i += 2) neel.set(i);
  m.basis = enumerate_reachable_sector(n, neel, moves, "dyck");
  m.initial_state = StateVector::basis_state(m.basis, neel);
  set_dicke_ground(m);
  m.lattice_dim = 1;
  m.system_size = static_cast<double>(n);
  m.layer_schedule = "j mod 3";
  finalize_model(m);
  return m;
}

std::size_t qdm_horizontal_link(std::size_t lx, std::size_t x, std::size_t y) { return y * (lx - 1) + x; }

std::size_t qdm_vertical_link(std::size_t lx, std::size_t ly, std::size_t x, std::size_t y) {
  return ly * (lx - 1) + y * lx + x;
}

bool qdm_is_perfect_matching(std::size_t lx, std::size_t ly, const Configuration& c) {
  std::vector<int> cover(lx * ly, 0);
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x + 1 < lx; ++x)
      if (c.test(qdm_horizontal_link(lx, x, y))) {
        ++cover[x + lx * y];
        ++cover[x + 1 + lx * y];
      }
  for (std::size_t y = 0; y + 1 < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x)
      if (c.test(qdm_vertical_link(lx, ly, x, y))) {
        ++cover[x + lx * y];
        ++cover[x + lx * (y + 1)];
      }
  return std::all_of(cover.begin(), cover.end(), [](int v) { return v == 1; });
}

LayeredModel build_qdm(std::size_t lx, std::size_t ly) {
  if (lx < 2 || ly < 2) throw InvalidArgument("dimer lattice needs at least 2x2 sites");
  if ((lx * ly) % 2) throw InvalidArgument("dimer lattice with an odd number of sites has no perfect matching");
  const std::size_t n_links = ly * (lx - 1) + (ly - 1) * lx;
  if (n_links > kMaxSites) throw CapacityError("dimer lattice exceeds link capacity", n_links, kMaxSites);
  LayeredModel m;
  m.name = "qdm";
  m.parameters = {{"lx_sites", std::to_string(lx)}, {"ly_sites", std::to_string(ly)}};
  m.layers.resize(2);
  std::vector<LocalMove> moves;
  for (std::size_t py = 0; py + 1 < ly; ++py)
    for (std::size_t px = 0; px + 1 < lx; ++px) {
      ProjectorTerm t;
      // bottom, top, left, right
      t.support = {qdm_horizontal_link(lx, px, py), qdm_horizontal_link(lx, px, py + 1),
                   qdm_vertical_link(lx, ly, px, py), qdm_vertical_link(lx, ly, px + 1, py)};
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
      v[0b0011] = 1.0 / std::numbers::sqrt2;
      v[0b1100] = -1.0 / std::numbers::sqrt2;
      t.local_vectors = {v};
      t.correction = PauliString::single(t.support[0], 'Z');
      moves.push_back({t.support, "1100", "0011"});
      m.layers[(px + py) % 2].push_back(m.terms.size());
      m.terms.push_back(std::move(t));
    }
  Configuration columnar;
  if (lx % 2 == 0) {
    for (std::size_t y = 0; y < ly; ++y)
      for (std::size_t x = 0; x < lx; x += 2) columnar.set(qdm_horizontal_link(lx, x, y));
  } else {
    for (std::size_t y = 0; y < ly; y += 2)
      for (std::size_t x = 0; x < lx; ++x) columnar.set(qdm_vertical_link(lx, ly, x, y));
  }
  m.basis = enumerate_reachable_sector(n_links, columnar, moves, "dimer-krylov");
  m.initial_state = StateVector::basis_state(m.basis, columnar);
  set_dicke_ground(m);
  m.lattice_dim = 2;
  m.system_size = static_cast<double>(lx * ly);
  m.layer_schedule = "checkerboard (px+py) mod 2";
  finalize_model(m);
  return m;
}

LayeredModel build_cluster_ising(std::size_t n) {
  if (n < 6 || n % 3) throw InvalidArgument("cluster-Ising ring needs n_sites divisible by 3 and >= 6");
  LayeredModel m;
  m.name = "cluster_ising";
  m.parameters = {{"n_sites", std::to_string(n)}, {"g", "0"}};
  m.basis = enumerate_full_space(n);
  m.layers.resize(3);
  for (std::size_t i = 0; i < n; ++i) {
    ProjectorTerm t;
    t.support = {(i + n - 1) % n, i, (i + 1) % n};
    const auto& s = t.support;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
    const Eigen::MatrixXcd zxz = PauliString::from_letters(s, "ZXZ").local_matrix(s);
    const Eigen::MatrixXcd zzi = PauliString::from_letters(s, "ZZI").local_matrix(s);
    const Eigen::MatrixXcd izz = PauliString::from_letters(s, "IZZ").local_matrix(s);
    const Eigen::MatrixXcd ixi = PauliString::from_letters(s, "IXI").local_matrix(s);
    const Eigen::MatrixXcd p = 0.5 * id + 0.25 * zxz - 0.25 * (zzi + izz) - 0.25 * ixi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
    for (Eigen::Index c = 0; c < 8; ++c)
      if (es.eigenvalues()[c] > 0.5) t.local_vectors.push_back(es.eigenvectors().col(c));
    // sparsify numerically-zero components so kernels see the true support
    for (auto& v : t.local_vectors)
      for (Eigen::Index r = 0; r < v.size(); ++r)
        if (std::abs(v[r]) < 1e-15) v[r] = 0;
    t.correction = PauliString::single(i, 'X');
    m.layers[i % 3].push_back(m.terms.size());
    m.terms.push_back(std::move(t));
  }
  StateVector plus(m.basis);
  plus.amplitudes().setConstant(std::pow(0.5, 0.5 * static_cast<double>(n)));
  m.initial_state = plus;
  Configuration ones;
  for (std::size_t i = 0; i < n; ++i) ones.set(i);
  StateVector g0 = StateVector::basis_state(m.basis, Configuration{});
  StateVector g1 = StateVector::basis_state(m.basis, ones);
  StateVector ghz(m.basis);
  ghz.amplitudes() = (g0.amplitudes() + g1.amplitudes()) / std::numbers::sqrt2;
  m.ground_state = ghz;
  m.ground_manifold = {g0, g1};
  m.lattice_dim = 1;
  m.system_size = static_cast<double>(n);
  m.layer_schedule = "i mod 3";
  finalize_model(m);
  return m;
}

LayeredModel with_full_space(const LayeredModel& src, std::size_t budget) {
  LayeredModel m;
  m.name = src.name;
  m.parameters = src.parameters;
  m.parameters["space"] = "full";
  m.basis = enumerate_full_space(src.basis->n_sites(), budget);
  m.terms = src.terms;
  for (auto& t : m.terms) t.kernel = {};
  m.layers = src.layers;
  m.lattice_dim = src.lattice_dim;
  m.system_size = src.system_size;
  m.dispersion = src.dispersion;
  m.layer_schedule = src.layer_schedule;

  auto embed = [&](const StateVector& s) {
    StateVector out(m.basis);
    for (std::size_t i = 0; i < s.size(); ++i) out[m.basis->index((*s.basis())[i])] = s[i];
    return out;
  };
  m.initial_state = embed(src.initial_state);
  if (src.ground_state) m.ground_state = embed(*src.ground_state);

  for (auto& t : m.terms) compile_kernel(t, *m.basis);
  const auto dim = static_cast<Eigen::Index>(m.basis->size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    StateVector e(m.basis);
    e[static_cast<std::size_t>(c)] = 1.0;
    h.col(c) = apply_hamiltonian(e, m.terms).amplitudes();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  for (Eigen::Index c = 0; c < dim && es.eigenvalues()[c] < 1e-9; ++c)
    m.ground_manifold.emplace_back(m.basis, es.eigenvectors().col(c));
  finalize_model(m);
  return m;
}

std::vector<std::string> model_names() {
  return {"heisenberg_chain", "heisenberg_single_particle", "heisenberg_2d", "fredkin", "qdm", "cluster_ising"};
}

}  // namespace ddprep
