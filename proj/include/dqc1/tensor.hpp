// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dqc1 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances used throughout the library.  Hermiticity checks use
// a max-entry norm; eigenvalue checks absorb eigensolver backward error.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenTol = 1e-9;

// Thrown when a runtime numeric check fails (as opposed to a malformed call,
// which raises std::invalid_argument).  The CLI maps the two classes to
// distinct exit codes.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Registers are capped to keep dense eigendecompositions at desk scale.
// The cap applies to every constructor that allocates a full register.
int max_register_qubits();
void set_max_register_qubits(int qubits);
std::size_t max_register_dim();

// Eigenvalues sorted in non-increasing order.
struct SortedSpectrum {
  RealVector values;

  Eigen::Index size() const { return values.size(); }
  double operator()(Eigen::Index i) const { return values(i); }
};

// Sorts a raw eigenvalue vector into non-increasing order.
SortedSpectrum sorted_spectrum(RealVector raw);

// Throws validation_error("invalid spectrum") unless the values are
// non-increasing and nonnegative (within `tol` below zero).
void validate_spectrum(const SortedSpectrum& s, double tol = kEigenTol);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// Kronecker product, first factor on the most significant index block.
// Guards the dimension product against the register cap.
Matrix kron(const Matrix& a, const Matrix& b);

// Spectrum of a Hermitian matrix, non-increasing.  Rejects non-Hermitian
// input (max-entry deviation above kHermitianTol).
SortedSpectrum hermitian_spectrum(const Matrix& h);

// Spectrum plus matching eigenvector columns, both sorted non-increasing.
std::pair<SortedSpectrum, Matrix> hermitian_eigensystem(const Matrix& h);

// Sum of singular values (Schatten-1 norm) of a square matrix.
double trace_norm(const Matrix& a);

// Lifts `gate` (on 2^t dimensions) to `total_qubits`, acting on the listed
// target qubits and as identity elsewhere.  Qubit 0 is the most significant
// bit of a basis index, and targets[0] is the most significant bit of the
// gate-local index.  Built by bit-index placement, not by a Kronecker chain.
Matrix embed(const Matrix& gate, const std::vector<int>& targets,
             int total_qubits);

// In-place left action u <- embed(gate, targets, total) * u without forming
// the embedded operator.
void apply_embedded_left(const Matrix& gate, const std::vector<int>& targets,
                         int total_qubits, Matrix& u);

// Bit of `qubit` inside a basis index, under the qubit-0-is-MSB convention.
inline int bit_of(std::size_t index, int qubit, int total_qubits) {
  return static_cast<int>((index >> (total_qubits - 1 - qubit)) & 1u);
}

}  // namespace dqc1
