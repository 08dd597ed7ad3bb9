// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/tensor.hpp"

namespace dqc1 {

// A density matrix on a register of `qubits` qubits.  Qubit 0 (the clean
// qubit in the one-clean-qubit model) is the most significant bit of a
// basis index.
struct DensityMatrix {
  int qubits = 0;
  Matrix rho;

  std::size_t dim() const { return std::size_t{1} << qubits; }
};

// Checks Hermiticity, unit trace, and positivity within the library
// tolerances; throws validation_error on failure.
void validate_density(const DensityMatrix& state);

// One-clean-qubit input state on n+1 qubits with clean-qubit polarization
// 1-alpha: diagonal, with the top 2^n entries (2-alpha)/2^(n+1) and the
// bottom 2^n entries alpha/2^(n+1).
DensityMatrix dqc1_state(int n, double alpha);

// Spectrum of dqc1_state(n, alpha) in closed form, sorted non-increasing.
SortedSpectrum dqc1_spectrum(int n, double alpha);

// Uniform mixture over the 2^(n+1)-2 middle computational basis states of
// an (n+1)-qubit register; the first and last basis states carry weight 0.
DensityMatrix tau_state(int n);

// Convex mix toward the maximally mixed state:
// (1-alpha) rho + alpha I/2^q.
DensityMatrix depolarize(const DensityMatrix& state, double alpha);

double purity(const DensityMatrix& state);

// Spectrum of a density matrix with tiny eigensolver negatives clamped to
// zero (after checking they exceed -kEigenTol); safe to feed to the
// spectrum criteria, which reject negative input.
SortedSpectrum state_spectrum(const DensityMatrix& state);

}  // namespace dqc1
