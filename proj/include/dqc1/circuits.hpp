// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/states.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dqc1 {

struct Unitary {
  int qubits = 0;
  Matrix matrix;

  std::size_t dim() const { return std::size_t{1} << qubits; }
};

enum class PauliAxis { X, Y };

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();

// Two-qubit rotation acting only on the span of |01> and |10>:
// |01> -> cos t |01> + sin t |10>,  |10> -> -sin t |01> + cos t |10>.
Unitary r_theta(double theta);

// Trace-estimation circuit for an n-qubit unitary v: Hadamard on the clean
// qubit followed by v controlled on it,
// (|0><0| (x) I + |1><1| (x) v) (H (x) I).
Unitary cdqc1_unitary(const Unitary& v);

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// of the R diagonal fixed.  Deterministic for a given seed.
Unitary haar_random_unitary(int qubits, std::uint64_t seed);

DensityMatrix evolve(const Unitary& u, const DensityMatrix& state);

// Exact expectation tr[U rho U^dag (sigma_mu (x) I)] of a clean-qubit Pauli
// measurement after running `u` on the one-clean-qubit input state.
double dqc1_expectation(const Unitary& u, double alpha, PauliAxis axis);

struct SampleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long shots = 0;
};

// Mean of `shots` outcomes in {-1,+1} drawn from the exact Born distribution
// of the clean-qubit Pauli measurement, with the sample standard error.
SampleEstimate sample_dqc1(const Unitary& u, double alpha, PauliAxis axis,
                           long shots, std::uint64_t seed);

struct TraceEstimate {
  Complex estimate;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  long shots = 0;
};

// Sampled estimate of tr(v)/2^n from the two Pauli measurement runs,
// rescaled by the clean-qubit polarization 1-alpha.  alpha = 1 carries no
// signal and is rejected.
TraceEstimate normalized_trace_estimate(const Unitary& v, double alpha,
                                        long shots, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Circuit text format: one gate per line, `#` starts a comment.
//   H q | X q | Y q | Z q | S q | T q
//   CNOT control target | CZ a b
//   RTHETA a b theta | CPHASE a b theta
struct GateOp {
  std::string name;
  int q0 = -1;
  int q1 = -1;
  double param = 0.0;
};

std::vector<GateOp> parse_circuit(std::istream& in);
std::vector<GateOp> parse_circuit_file(const std::string& path);

// Highest referenced qubit index plus one; zero for an empty circuit.
int circuit_qubit_count(const std::vector<GateOp>& ops);

// Dense unitary of the circuit on `qubits` qubits, gates applied in file
// order (the first line acts first).
Unitary circuit_unitary(const std::vector<GateOp>& ops, int qubits);

}  // namespace dqc1
