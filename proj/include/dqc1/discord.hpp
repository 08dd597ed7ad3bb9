// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/bipartite.hpp"

#include <vector>

namespace dqc1 {

// Party-B operator blocks of a state in the computational basis of party A:
// B_{ij} = (<i| (x) I) rho (|j> (x) I) after index regrouping.
struct BlockDecomposition {
  int a_qubits = 0;
  int b_qubits = 0;
  std::vector<Matrix> data;  // row-major, a_dim x a_dim entries

  Eigen::Index a_dim() const { return Eigen::Index{1} << a_qubits; }
  Eigen::Index b_dim() const { return Eigen::Index{1} << b_qubits; }
  const Matrix& at(Eigen::Index i, Eigen::Index j) const {
    return data[static_cast<std::size_t>(i * a_dim() + j)];
  }
};

BlockDecomposition blocks(const DensityMatrix& state, const Bipartition& bp);

// Inverse of blocks(): rebuilds the full matrix in regrouped (A, B) index
// order.  Mostly for tests.
Matrix assemble_blocks(const BlockDecomposition& decomposition);

struct DiscordVerdict {
  bool zero_discord = false;
  double offdiag_max = 0.0;  // largest off-diagonal block entry found
  double tol = 0.0;
  Matrix basis;  // candidate party-A basis the check was made in
};

// Decides whether the state is classical-quantum with respect to a
// measurement on party A of `bp`: is there an orthonormal A basis in which
// every off-diagonal block vanishes?  The candidate basis is constructed by
// simultaneously diagonalizing the A-side operator family steered out of
// rho (rho_A first, then seeded random Hermitian combinations inside
// degenerate eigenspaces); the verdict is the off-diagonal residual check
// in that basis, so a true answer is constructive.  tol <= 0 selects the
// default 1e-8 * dim.
DiscordVerdict is_zero_discord(const DensityMatrix& state,
                               const Bipartition& bp, double tol = 0.0);

// True iff the is_zero_discord verdict is constant across the depolarized
// family (1-alpha) rho + alpha I/dim, alpha in `alphas`.
bool discord_depolarization_check(const DensityMatrix& state,
                                  const Bipartition& bp,
                                  const std::vector<double>& alphas);

}  // namespace dqc1
