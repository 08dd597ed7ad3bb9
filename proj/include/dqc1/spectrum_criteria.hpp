// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/bipartite.hpp"

#include <cstdint>
#include <vector>

namespace dqc1 {

struct CriterionVerdict {
  bool ok = false;
  double margin = 0.0;
};

// Separability-from-spectrum test for {1; n} cuts:
// lambda_1 <= lambda_{d-1} + 2 sqrt(lambda_{d-2} lambda_d).
// margin = RHS - lambda_1, boundary inclusive-true.
CriterionVerdict johnston_sfs(const SortedSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Linear orderings of index pairs.  sigma_plus ranks the pairs (i,j) with
// 1 <= i <= j <= p from 1 (largest product) to p(p+1)/2; sigma_minus ranks
// the strict pairs 1 <= i < j <= p consistently with sigma_plus.
struct OrderingPair {
  int p = 0;
  std::vector<int> sigma_plus;   // indexed by pair_index_leq
  std::vector<int> sigma_minus;  // indexed by pair_index_lt
};

// Zero-based storage slot of the 1-based pair (i,j), i <= j respectively
// i < j; the ranks stored at those slots are 1-based.
int pair_index_leq(int i, int j, int p);
int pair_index_lt(int i, int j, int p);

// Ordering realized by a strictly decreasing positive vector: pairs ranked
// by decreasing product x_i * x_j, exact ties broken toward the
// lexicographically smaller pair.
OrderingPair ordering_from_vector(const RealVector& x);

// The unique sigma_minus consistent with sigma_plus: restrict to strict
// pairs and rank-compress.
std::vector<int> consistent_sigma_minus(const std::vector<int>& sigma_plus,
                                        int p);

struct OrderingSet {
  int p = 0;
  std::vector<OrderingPair> orderings;
  // True when the final 10% of samples found nothing new; a false value is
  // a saturation warning, not an error.
  bool saturated = false;
};

// Orderings realized by sampled strictly decreasing positive vectors,
// deduplicated.  Deterministic for a given seed.
OrderingSet realizable_orderings(int p, long samples, std::uint64_t seed);

// Sample-count defaults per party dimension, sized so the sampled sets
// stop growing well before the budget at p <= 8.
long default_ordering_samples(int p);

// The ordering set the one-argument hildebrand_ppt_from_spectrum overload
// uses for a 2^k-dimensional party: default sample count, fixed seed.
// Exposed so sweeps can compute it once and reuse it.
OrderingSet default_realizable_orderings(int k);

// The p x p matrix Lambda with entries lambda_{d+1-sigma_plus(k,l)} on and
// above the diagonal and -lambda_{sigma_minus(l,k)} below it (1-based
// eigenvalue indices into the sorted spectrum).
RealMatrix lambda_matrix(const SortedSpectrum& spectrum,
                         const OrderingPair& ordering, int p);

// PPT-from-spectrum for party dims (2^k, 2^(total-k)): Lambda + Lambda^T
// must be PSD for every realizable ordering.  A true verdict certifies PPT
// of every unitary-orbit point at those dims.  margin is the smallest
// Lambda + Lambda^T eigenvalue seen.
CriterionVerdict hildebrand_ppt_from_spectrum(const SortedSpectrum& spectrum,
                                              int k, int total);
CriterionVerdict hildebrand_ppt_from_spectrum(const SortedSpectrum& spectrum,
                                              int k, int total,
                                              const OrderingSet& orderings);

// ---------------------------------------------------------------------------
// Two-eigenvalue closed form.
struct DegeneratePair {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

// PPT-from-spectrum for a two-valued spectrum whose top eigenvalue has
// degeneracy >= p(p-1)/2 and bottom degeneracy >= p(p+1)/2, p = 2^m:
// (lambda_plus + lambda_minus) - 2^m (lambda_plus - lambda_minus) >= 0.
// Valid only under those degeneracy premises; see in_degenerate_class.
CriterionVerdict degenerate_ppt_condition(const DegeneratePair& pair, int m);

// Checks the degeneracy premises of the closed form against an actual
// spectrum: top p(p-1)/2 values equal, bottom p(p+1)/2 values equal
// (within tol), with p = 2^m.
bool in_degenerate_class(const SortedSpectrum& spectrum, int m,
                         double tol = kEigenTol);
DegeneratePair degenerate_pair_from(const SortedSpectrum& spectrum);

// Clean-qubit noise threshold above which the one-clean-qubit state is PPT
// from spectrum at every cut with a 2^k-dimensional party: 1 - 1/2^k.
double dqc1_alpha_threshold(int k);

// (necessary, sufficient) thresholds covering all bipartitions at once:
// 1 - 2^(-floor(n/2)) and 1 - 2^(-floor((n+1)/2)); equal iff n is even.
std::pair<double, double> dqc1_all_cuts_bounds(int n);

// ---------------------------------------------------------------------------
struct SearchResult {
  Unitary u;
  double best_negativity = 0.0;
  long evaluations = 0;
};

// Seeded random search with greedy local refinement for a unitary whose
// orbit point is non-PPT at the given cut.  Starts from two deterministic
// extremal-arrangement candidates, then Haar restarts with Givens-rotation
// refinement.  The budget counts negativity evaluations.  A zero result is
// NOT a separability certificate.
SearchResult search_entangling_unitary(const DensityMatrix& state,
                                       const Bipartition& bp, long budget,
                                       std::uint64_t seed);

// Same search applied to the one-clean-qubit input state.
SearchResult search_entangling_unitary(int n, double alpha,
                                       const Bipartition& bp, long budget,
                                       std::uint64_t seed);

}  // namespace dqc1
