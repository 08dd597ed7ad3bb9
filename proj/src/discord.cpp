// SPDX-License-Identifier: Apache-2.0
#include "dqc1/discord.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dqc1/seeding.hpp"

namespace dqc1 {

namespace {

// Eigenvalues closer than this are treated as one degenerate cluster when
// building the candidate measurement basis.
constexpr double kClusterGap = 1e-8;

// Internal seed for the steered refinement operators; fixed so verdicts are
// reproducible call to call.
constexpr std::uint64_t kSteerSeed = 0x0d15c0dd5eedULL;

void check_partition(const DensityMatrix& state, const Bipartition& bp) {
  if (bp.total_qubits != state.qubits) {
    throw std::invalid_argument("bipartition does not match register");
  }
}

// Rearranges rho so the row/column index factors as (A-subindex, B-subindex)
// with the A part major: out(i*dB+b, j*dB+c) = rho(compose(i,b), compose(j,c)).
Matrix regroup(const DensityMatrix& state, const Bipartition& bp) {
  const Eigen::Index da = Eigen::Index{1} << bp.size_a();
  const Eigen::Index db = state.dim() / da;
  Matrix out(state.dim(), state.dim());
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index b = 0; b < db; ++b) {
      const auto row = static_cast<Eigen::Index>(compose_index(
          bp, static_cast<std::size_t>(i), static_cast<std::size_t>(b)));
      for (Eigen::Index j = 0; j < da; ++j) {
        for (Eigen::Index c = 0; c < db; ++c) {
          const auto col = static_cast<Eigen::Index>(compose_index(
              bp, static_cast<std::size_t>(j), static_cast<std::size_t>(c)));
          out(i * db + b, j * db + c) = state.rho(row, col);
        }
      }
    }
  }
  return out;
}

// Party-A reduction of a regrouped matrix: (i,j) entry is the trace of the
// (i,j) block.
Matrix reduce_a(const Matrix& regrouped, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out(i, j) = regrouped.block(i * db, j * db, db, db).trace();
    }
  }
  return out;
}

// Hermitian party-A operator steered out of the state by a party-B probe C:
// G = tr_B[rho (I (x) C)] + h.c.  Entrywise, G(i,j) accumulates the trace of
// the (i,j) block against C before Hermitization.
Matrix steered_operator(const Matrix& regrouped, Eigen::Index da,
                        Eigen::Index db, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix probe(db, db);
  for (Eigen::Index r = 0; r < db; ++r) {
    for (Eigen::Index c = 0; c < db; ++c) {
      probe(r, c) = Complex(gauss(engine), gauss(engine));
    }
  }
  Matrix g(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      g(i, j) = (regrouped.block(i * db, j * db, db, db) * probe).trace();
    }
  }
  g = (g + g.adjoint()).eval();
  const double scale = g.norm();
  if (scale > 0.0) {
    g /= scale;
  }
  return g;
}

// Splits positions [0, count) into runs whose consecutive values differ by
// more than kClusterGap; values must be sorted.
std::vector<std::pair<Eigen::Index, Eigen::Index>> gap_clusters(
    const RealVector& values) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> runs;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    if (std::abs(values(k) - values(k - 1)) > kClusterGap) {
      runs.emplace_back(start, k - start);
      start = k;
    }
  }
  runs.emplace_back(start, values.size() - start);
  return runs;
}

// Conjugates the regrouped matrix by (W (x) I_B) without forming the
// Kronecker factor: rows first, then columns, one fixed B-subindex at a time.
Matrix conjugate_party_a(const Matrix& regrouped, const Matrix& w,
                         Eigen::Index da, Eigen::Index db) {
  const Eigen::Index dim = regrouped.rows();
  Matrix halfway(dim, dim);
  Matrix slab(da, dim);
  for (Eigen::Index b = 0; b < db; ++b) {
    for (Eigen::Index i = 0; i < da; ++i) {
      slab.row(i) = regrouped.row(i * db + b);
    }
    slab = (w.adjoint() * slab).eval();
    for (Eigen::Index i = 0; i < da; ++i) {
      halfway.row(i * db + b) = slab.row(i);
    }
  }
  Matrix out(dim, dim);
  Matrix cols(dim, da);
  for (Eigen::Index b = 0; b < db; ++b) {
    for (Eigen::Index j = 0; j < da; ++j) {
      cols.col(j) = halfway.col(j * db + b);
    }
    cols = (cols * w).eval();
    for (Eigen::Index j = 0; j < da; ++j) {
      out.col(j * db + b) = cols.col(j);
    }
  }
  return out;
}

double offdiagonal_block_max(const Matrix& regrouped, Eigen::Index da,
                             Eigen::Index db) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      if (i == j) continue;
      const double local =
          regrouped.block(i * db, j * db, db, db).cwiseAbs().maxCoeff();
      worst = std::max(worst, local);
    }
  }
  return worst;
}

}  // namespace

BlockDecomposition blocks(const DensityMatrix& state, const Bipartition& bp) {
  check_partition(state, bp);
  const Eigen::Index da = Eigen::Index{1} << bp.size_a();
  const Eigen::Index db = state.dim() / da;
  const Matrix regrouped = regroup(state, bp);
  BlockDecomposition out;
  out.a_qubits = bp.size_a();
  out.b_qubits = state.qubits - bp.size_a();
  out.data.reserve(static_cast<std::size_t>(da * da));
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.data.push_back(regrouped.block(i * db, j * db, db, db));
    }
  }
  return out;
}

Matrix assemble_blocks(const BlockDecomposition& decomposition) {
  const Eigen::Index da = decomposition.a_dim();
  const Eigen::Index db = decomposition.b_dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = decomposition.at(i, j);
    }
  }
  return out;
}

DiscordVerdict is_zero_discord(const DensityMatrix& state,
                               const Bipartition& bp, double tol) {
  check_partition(state, bp);
  const Eigen::Index da = Eigen::Index{1} << bp.size_a();
  const Eigen::Index db = state.dim() / da;
  if (tol <= 0.0) {
    tol = 1e-8 * static_cast<double>(state.dim());
  }

  const Matrix regrouped = regroup(state, bp);

  // Candidate basis: eigenbasis of the party-A reduction.  When that
  // reduction is degenerate the basis is only fixed up to rotations inside
  // each eigenspace, so degenerate clusters are refined below.
  auto [avalues, w] = hermitian_eigensystem(reduce_a(regrouped, da, db));

  // Worklist of unresolved clusters: column range into w plus the number of
  // refinement attempts left.  A steered operator either splits a cluster
  // (each part re-enters with a fresh budget) or burns one attempt; a
  // cluster that survives every attempt is isotropic for the state --
  // any basis of it behaves the same -- and is accepted as-is.
  struct Cluster {
    Eigen::Index start;
    Eigen::Index count;
    int attempts;
  };
  constexpr int kAttempts = 4;
  std::vector<Cluster> work;
  for (const auto& [start, count] : gap_clusters(avalues.values)) {
    if (count > 1) {
      work.push_back({start, count, kAttempts});
    }
  }

  std::uint64_t draw = 0;
  while (!work.empty()) {
    Cluster cluster = work.back();
    work.pop_back();
    auto engine = make_engine(derive_seed(kSteerSeed, draw++));
    const Matrix g = steered_operator(regrouped, da, db, engine);
    const Matrix sub = w.middleCols(cluster.start, cluster.count);
    const Matrix compressed = (sub.adjoint() * g * sub).eval();
    auto [gvalues, rotation] = hermitian_eigensystem(
        ((compressed + compressed.adjoint()) / 2.0).eval());
    w.middleCols(cluster.start, cluster.count) = sub * rotation;
    const auto parts = gap_clusters(gvalues.values);
    for (const auto& [offset, count] : parts) {
      if (count <= 1) continue;
      const int attempts =
          parts.size() > 1 ? kAttempts : cluster.attempts - 1;
      if (attempts > 0) {
        work.push_back({cluster.start + offset, count, attempts});
      }
    }
  }

  DiscordVerdict verdict;
  verdict.tol = tol;
  verdict.basis = w;
  verdict.offdiag_max =
      offdiagonal_block_max(conjugate_party_a(regrouped, w, da, db), da, db);
  verdict.zero_discord = verdict.offdiag_max <= tol;
  return verdict;
}

bool discord_depolarization_check(const DensityMatrix& state,
                                  const Bipartition& bp,
                                  const std::vector<double>& alphas) {
  if (alphas.empty()) {
    throw std::invalid_argument("alpha list is empty");
  }
  bool first = true;
  bool reference = false;
  for (const double alpha : alphas) {
    const bool verdict = is_zero_discord(depolarize(state, alpha), bp).zero_discord;
    if (first) {
      reference = verdict;
      first = false;
    } else if (verdict != reference) {
      return false;
    }
  }
  return true;
}

}  // namespace dqc1
