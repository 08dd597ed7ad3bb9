// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/circuits.hpp"
#include "dqc1/states.hpp"

#include <string>
#include <vector>

namespace dqc1 {

// A two-party split of a register.  `mask_a` has bit k set when qubit k
// belongs to party A.  The canonical representative puts the smaller party
// on the A side, breaking ties toward the side containing qubit 0.
struct Bipartition {
  int total_qubits = 0;
  unsigned mask_a = 0;

  int size_a() const;
  int size_b() const { return total_qubits - size_a(); }
  std::vector<int> party_a() const;
  std::vector<int> party_b() const;
  // Bit positions of party A inside a basis index (MSB convention).
  std::size_t basis_mask_a() const;
  Bipartition canonical() const;
  std::string to_string() const;  // comma-separated party-A qubits

  bool operator==(const Bipartition& other) const {
    return total_qubits == other.total_qubits && mask_a == other.mask_a;
  }
};

// Builds a bipartition from explicit party-A qubit indices.
Bipartition make_bipartition(int total_qubits, const std::vector<int>& party_a);

// Parses "0,2,3" into a bipartition of `total_qubits`.
Bipartition bipartition_from_string(const std::string& text, int total_qubits);

// All 2^(q-1) - 1 nontrivial bipartitions, one canonical representative
// each, ordered by ascending party-A mask.
std::vector<Bipartition> enumerate_bipartitions(int total_qubits);

// Index regrouping for a bipartition: a full basis index splits into a
// party-A index and a party-B index (each in ascending-qubit order).
std::size_t compose_index(const Bipartition& bp, std::size_t a_index,
                          std::size_t b_index);
std::pair<std::size_t, std::size_t> split_index(const Bipartition& bp,
                                                std::size_t full_index);

// Partial transpose over party A, as an index-group swap between row and
// column.  Transposing over B instead gives the transpose, so PPT verdicts
// do not depend on the side.
Matrix partial_transpose(const DensityMatrix& state, const Bipartition& bp);

// Default tolerance for PPT verdicts; scales with dimension because
// eigensolver backward error does.
double ppt_tolerance(std::size_t dim);

struct PptVerdict {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

PptVerdict is_ppt(const DensityMatrix& state, const Bipartition& bp,
                  double tol);
PptVerdict is_ppt(const DensityMatrix& state, const Bipartition& bp);

// Sum of the magnitudes of the negative partial-transpose eigenvalues.
// Zero does not certify separability; positive certifies entanglement.
double negativity(const DensityMatrix& state, const Bipartition& bp);

// Entanglement witness on the partial transpose: fires when
// |<phi|PT|phi>| <= tol and |<psi|PT|phi>| > tol, which certifies a
// negative PT eigenvalue.
bool pt_witness(const DensityMatrix& state, const Bipartition& bp,
                const Vector& phi, const Vector& psi, double tol);
bool pt_witness(const DensityMatrix& state, const Bipartition& bp,
                const Vector& phi, const Vector& psi);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on party A of `bp` (partial trace over party B), indexed in
// ascending qubit order of party A.
Matrix partial_trace(const DensityMatrix& state, const Bipartition& bp);

struct BoundaryOrbitDemo {
  Unitary u;
  double negativity = 0.0;
  double distance_to_identity = 0.0;  // ||u - I|| in trace norm
};

// Constructive near-identity entangler: a two-qubit rotation across the cut
// with the angle chosen so ||U - I||_1 = epsilon/2, applied to the alpha = 0
// one-clean-qubit state.  The rotation pairs the lowest-index qubit of each
// party.  Throws when epsilon is too small for the resulting negativity to
// clear numeric resolution.
BoundaryOrbitDemo boundary_orbit_demo(int n, const Bipartition& bp,
                                      double epsilon);

}  // namespace dqc1
