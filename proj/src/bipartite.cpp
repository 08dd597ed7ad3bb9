// SPDX-License-Identifier: Apache-2.0
#include "dqc1/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace dqc1 {

int Bipartition::size_a() const { return std::popcount(mask_a); }

std::vector<int> Bipartition::party_a() const {
  std::vector<int> qubits;
  for (int k = 0; k < total_qubits; ++k) {
    if (mask_a & (1u << k)) qubits.push_back(k);
  }
  return qubits;
}

std::vector<int> Bipartition::party_b() const {
  std::vector<int> qubits;
  for (int k = 0; k < total_qubits; ++k) {
    if (!(mask_a & (1u << k))) qubits.push_back(k);
  }
  return qubits;
}

std::size_t Bipartition::basis_mask_a() const {
  std::size_t bits = 0;
  for (int k = 0; k < total_qubits; ++k) {
    if (mask_a & (1u << k)) bits |= std::size_t{1} << (total_qubits - 1 - k);
  }
  return bits;
}

Bipartition Bipartition::canonical() const {
  const unsigned full = (1u << total_qubits) - 1u;
  const unsigned comp = full & ~mask_a;
  const int na = std::popcount(mask_a);
  const int nb = std::popcount(comp);
  if (na != nb) {
    return Bipartition{total_qubits, na < nb ? mask_a : comp};
  }
  return Bipartition{total_qubits, (mask_a & 1u) ? mask_a : comp};
}

std::string Bipartition::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int q : party_a()) {
    if (!first) out << ',';
    out << q;
    first = false;
  }
  return out.str();
}

namespace {

void check_bipartition(const Bipartition& bp) {
  if (bp.total_qubits < 2) {
    throw std::invalid_argument("bipartition needs at least two qubits");
  }
  const unsigned full = (1u << bp.total_qubits) - 1u;
  if (bp.mask_a == 0 || bp.mask_a >= full || (bp.mask_a & ~full)) {
    throw std::invalid_argument("bipartition must be nontrivial");
  }
}

}  // namespace

Bipartition make_bipartition(int total_qubits, const std::vector<int>& party_a) {
  if (total_qubits < 2) {
    throw std::invalid_argument("bipartition needs at least two qubits");
  }
  unsigned mask = 0;
  for (int q : party_a) {
    if (q < 0 || q >= total_qubits) {
      throw std::invalid_argument("bipartition qubit out of range");
    }
    if (mask & (1u << q)) {
      throw std::invalid_argument("bipartition repeats a qubit");
    }
    mask |= 1u << q;
  }
  const Bipartition bp{total_qubits, mask};
  check_bipartition(bp);
  return bp;
}

Bipartition bipartition_from_string(const std::string& text, int total_qubits) {
  std::vector<int> qubits;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      size_t pos = 0;
      const int q = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      qubits.push_back(q);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad bipartition '" + text + "'");
    }
  }
  if (qubits.empty()) {
    throw std::invalid_argument("bad bipartition '" + text + "'");
  }
  return make_bipartition(total_qubits, qubits);
}

std::vector<Bipartition> enumerate_bipartitions(int total_qubits) {
  if (total_qubits < 2) {
    throw std::invalid_argument("bipartition needs at least two qubits");
  }
  if (total_qubits > max_register_qubits()) {
    throw validation_error("register too large");
  }
  std::vector<Bipartition> out;
  const unsigned full = (1u << total_qubits) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    const Bipartition bp{total_qubits, mask};
    if (bp.canonical().mask_a == mask) out.push_back(bp);
  }
  return out;
}

std::size_t compose_index(const Bipartition& bp, std::size_t a_index,
                          std::size_t b_index) {
  std::size_t full = 0;
  int a_left = bp.size_a();
  int b_left = bp.size_b();
  for (int k = 0; k < bp.total_qubits; ++k) {
    int bit;
    if (bp.mask_a & (1u << k)) {
      --a_left;
      bit = static_cast<int>((a_index >> a_left) & 1u);
    } else {
      --b_left;
      bit = static_cast<int>((b_index >> b_left) & 1u);
    }
    if (bit) full |= std::size_t{1} << (bp.total_qubits - 1 - k);
  }
  return full;
}

std::pair<std::size_t, std::size_t> split_index(const Bipartition& bp,
                                                std::size_t full_index) {
  std::size_t a = 0;
  std::size_t b = 0;
  for (int k = 0; k < bp.total_qubits; ++k) {
    const int bit = bit_of(full_index, k, bp.total_qubits);
    if (bp.mask_a & (1u << k)) {
      a = (a << 1) | static_cast<std::size_t>(bit);
    } else {
      b = (b << 1) | static_cast<std::size_t>(bit);
    }
  }
  return {a, b};
}

Matrix partial_transpose(const DensityMatrix& state, const Bipartition& bp) {
  check_bipartition(bp);
  if (bp.total_qubits != state.qubits) {
    throw std::invalid_argument("bipartition does not match register");
  }
  const std::size_t dim = state.dim();
  const std::size_t abits = bp.basis_mask_a();
  Matrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t rr = (r & ~abits) | (c & abits);
      const std::size_t cc = (c & ~abits) | (r & abits);
      out(rr, cc) = state.rho(r, c);
    }
  }
  return out;
}

double ppt_tolerance(std::size_t dim) {
  return 1e-9 * static_cast<double>(dim);
}

PptVerdict is_ppt(const DensityMatrix& state, const Bipartition& bp,
                  double tol) {
  const SortedSpectrum s = hermitian_spectrum(partial_transpose(state, bp));
  const double min_eig = s.values(s.size() - 1);
  return PptVerdict{min_eig >= -tol, min_eig};
}

PptVerdict is_ppt(const DensityMatrix& state, const Bipartition& bp) {
  return is_ppt(state, bp, ppt_tolerance(state.dim()));
}

double negativity(const DensityMatrix& state, const Bipartition& bp) {
  const SortedSpectrum s = hermitian_spectrum(partial_transpose(state, bp));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s.values(i) < 0.0) acc -= s.values(i);
  }
  return acc;
}

bool pt_witness(const DensityMatrix& state, const Bipartition& bp,
                const Vector& phi, const Vector& psi, double tol) {
  const Matrix pt = partial_transpose(state, bp);
  if (phi.size() != pt.rows() || psi.size() != pt.rows()) {
    throw std::invalid_argument("witness vector dimension mismatch");
  }
  const double diag = std::abs((phi.adjoint() * pt * phi)(0, 0));
  const double cross = std::abs((psi.adjoint() * pt * phi)(0, 0));
  return diag <= tol && cross > tol;
}

bool pt_witness(const DensityMatrix& state, const Bipartition& bp,
                const Vector& phi, const Vector& psi) {
  return pt_witness(state, bp, phi, psi, ppt_tolerance(state.dim()));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("register size mismatch");
  }
  return trace_norm(a.rho - b.rho);
}

Matrix partial_trace(const DensityMatrix& state, const Bipartition& bp) {
  check_bipartition(bp);
  if (bp.total_qubits != state.qubits) {
    throw std::invalid_argument("bipartition does not match register");
  }
  const std::size_t da = std::size_t{1} << bp.size_a();
  const std::size_t db = std::size_t{1} << bp.size_b();
  Matrix out = Matrix::Zero(da, da);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      Complex acc = 0.0;
      for (std::size_t beta = 0; beta < db; ++beta) {
        acc += state.rho(compose_index(bp, i, beta), compose_index(bp, j, beta));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

BoundaryOrbitDemo boundary_orbit_demo(int n, const Bipartition& bp,
                                      double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const DensityMatrix state = dqc1_state(n, 0.0);
  check_bipartition(bp);
  if (bp.total_qubits != state.qubits) {
    throw std::invalid_argument("bipartition does not match register");
  }

  // Rotation pair: the lowest-index qubit of each party; one of them is the
  // clean qubit 0.
  const int qa = bp.party_a().front();
  const int qb = bp.party_b().front();
  const std::vector<int> targets{std::min(qa, qb), std::max(qa, qb)};

  // The embedded rotation differs from the identity only on the target
  // pair, so the full-register trace norm is the 4x4 norm times the
  // spectator multiplicity.  It grows monotonically on [0, pi/4]; bisect
  // the angle so the full norm hits epsilon/2 (capped at the theta = pi/4
  // value for large epsilon).
  const double spectators =
      static_cast<double>(std::size_t{1} << (state.qubits - 2));
  const auto norm_at = [spectators](double theta) {
    return spectators *
           trace_norm(r_theta(theta).matrix - Matrix::Identity(4, 4));
  };
  const double pi = std::acos(-1.0);
  const double target = std::min(0.5 * epsilon, norm_at(pi / 4.0));
  double lo = 0.0;
  double hi = pi / 4.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) < target ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);

  BoundaryOrbitDemo demo;
  demo.u = Unitary{state.qubits,
                   embed(r_theta(theta).matrix, targets, state.qubits)};
  demo.distance_to_identity =
      trace_norm(demo.u.matrix -
                 Matrix::Identity(demo.u.matrix.rows(), demo.u.matrix.cols()));
  demo.negativity = negativity(evolve(demo.u, state), bp);
  if (demo.negativity <= 1e-12 * static_cast<double>(state.dim())) {
    throw validation_error("epsilon below numeric resolution");
  }
  return demo;
}

}  // namespace dqc1
