// SPDX-License-Identifier: Apache-2.0
#include "dqc1/spectrum_criteria.hpp"

#include "dqc1/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace dqc1 {

namespace {

bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

}  // namespace

CriterionVerdict johnston_sfs(const SortedSpectrum& spectrum) {
  const Eigen::Index d = spectrum.size();
  if (d < 4 || !is_power_of_two(d)) {
    throw std::invalid_argument("spectrum dimension must be a power of two, at least 4");
  }
  validate_spectrum(spectrum);
  const double rhs =
      spectrum.values(d - 2) +
      2.0 * std::sqrt(std::max(spectrum.values(d - 3), 0.0) *
                      std::max(spectrum.values(d - 1), 0.0));
  const double margin = rhs - spectrum.values(0);
  return CriterionVerdict{margin >= -1e-12, margin};
}

// ---------------------------------------------------------------------------

int pair_index_leq(int i, int j, int p) {
  // pairs (1,1),(1,2),...,(1,p),(2,2),...  row-major over i <= j
  return (i - 1) * p - (i - 1) * (i - 2) / 2 + (j - i);
}

int pair_index_lt(int i, int j, int p) {
  return (i - 1) * (p - 1) - (i - 1) * (i - 2) / 2 + (j - i - 1);
}

std::vector<int> consistent_sigma_minus(const std::vector<int>& sigma_plus,
                                        int p) {
  const int strict = p * (p - 1) / 2;
  // Collect the sigma_plus ranks of the strict pairs, then rank-compress.
  std::vector<std::pair<int, int>> ranked;  // (sigma_plus rank, strict index)
  ranked.reserve(strict);
  for (int i = 1; i <= p; ++i) {
    for (int j = i + 1; j <= p; ++j) {
      ranked.emplace_back(sigma_plus[pair_index_leq(i, j, p)],
                          pair_index_lt(i, j, p));
    }
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> sigma_minus(strict, 0);
  for (int r = 0; r < strict; ++r) sigma_minus[ranked[r].second] = r + 1;
  return sigma_minus;
}

OrderingPair ordering_from_vector(const RealVector& x) {
  const int p = static_cast<int>(x.size());
  if (p < 2) throw std::invalid_argument("need at least two entries");
  for (int i = 0; i < p; ++i) {
    if (!(x(i) > 0.0) || (i > 0 && !(x(i) < x(i - 1)))) {
      throw std::invalid_argument("entries must be strictly decreasing and positive");
    }
  }
  struct Entry {
    double product;
    int i, j;
  };
  std::vector<Entry> entries;
  entries.reserve(p * (p + 1) / 2);
  for (int i = 1; i <= p; ++i) {
    for (int j = i; j <= p; ++j) {
      entries.push_back(Entry{x(i - 1) * x(j - 1), i, j});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.product != b.product) return a.product > b.product;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  OrderingPair ordering;
  ordering.p = p;
  ordering.sigma_plus.assign(entries.size(), 0);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    ordering.sigma_plus[pair_index_leq(entries[r].i, entries[r].j, p)] =
        static_cast<int>(r) + 1;
  }
  ordering.sigma_minus = consistent_sigma_minus(ordering.sigma_plus, p);
  return ordering;
}

OrderingSet realizable_orderings(int p, long samples, std::uint64_t seed) {
  if (p < 2 || p > 16) {
    throw std::invalid_argument("party dimension too large for ordering enumeration");
  }
  if (samples < 1) throw std::invalid_argument("samples must be positive");

  auto rng = make_engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  OrderingSet set;
  set.p = p;
  std::unordered_set<std::string> seen;
  const long tail_start = samples - samples / 10;
  long found_at_tail_start = 0;

  for (long s = 0; s < samples; ++s) {
    if (s == tail_start) {
      found_at_tail_start = static_cast<long>(set.orderings.size());
    }
    RealVector x(p);
    for (int i = 0; i < p; ++i) x(i) = std::abs(gauss(rng));
    std::sort(x.data(), x.data() + p, std::greater<double>());
    // Exact float collisions (in the entries or in pairwise products) are
    // vanishingly rare; nudge and move on rather than bias the ordering.
    bool distinct = true;
    for (int i = 0; i + 1 < p && distinct; ++i) {
      if (x(i) == x(i + 1)) distinct = false;
    }
    if (distinct) {
      std::vector<double> products;
      products.reserve(p * (p + 1) / 2);
      for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) products.push_back(x(i) * x(j));
      }
      std::sort(products.begin(), products.end());
      for (std::size_t i = 0; i + 1 < products.size(); ++i) {
        if (products[i] == products[i + 1]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;

    OrderingPair ordering = ordering_from_vector(x);
    std::string key(ordering.sigma_plus.size(), '\0');
    for (std::size_t i = 0; i < ordering.sigma_plus.size(); ++i) {
      key[i] = static_cast<char>(ordering.sigma_plus[i]);
    }
    if (seen.insert(key).second) set.orderings.push_back(std::move(ordering));
  }
  set.saturated =
      static_cast<long>(set.orderings.size()) == found_at_tail_start;
  return set;
}

long default_ordering_samples(int p) {
  if (p <= 2) return 64;
  if (p <= 4) return 10000;
  return 200000;
}

RealMatrix lambda_matrix(const SortedSpectrum& spectrum,
                         const OrderingPair& ordering, int p) {
  if (ordering.p != p || p < 2) {
    throw std::invalid_argument("ordering does not match party dimension");
  }
  const Eigen::Index d = spectrum.size();
  if (d < p * (p + 1) / 2) throw std::invalid_argument("spectrum too short");
  RealMatrix lambda(p, p);
  for (int k = 1; k <= p; ++k) {
    for (int l = 1; l <= p; ++l) {
      if (k <= l) {
        const int rank = ordering.sigma_plus[pair_index_leq(k, l, p)];
        lambda(k - 1, l - 1) = spectrum.values(d - rank);
      } else {
        const int rank = ordering.sigma_minus[pair_index_lt(l, k, p)];
        lambda(k - 1, l - 1) = -spectrum.values(rank - 1);
      }
    }
  }
  return lambda;
}

namespace {

constexpr std::uint64_t kOrderingSeed = 0x5eedu;

}  // namespace

CriterionVerdict hildebrand_ppt_from_spectrum(const SortedSpectrum& spectrum,
                                              int k, int total,
                                              const OrderingSet& orderings) {
  if (k < 1 || k > 4) {
    throw std::invalid_argument("party dimension too large for ordering enumeration");
  }
  if (k > total - k) {
    throw std::invalid_argument("party A must be the smaller dimension");
  }
  const int p = 1 << k;
  if (orderings.p != p) {
    throw std::invalid_argument("ordering set does not match party dimension");
  }
  if (spectrum.size() != (Eigen::Index{1} << total)) {
    throw std::invalid_argument("spectrum size does not match register");
  }
  if (orderings.orderings.empty()) {
    throw std::invalid_argument("empty ordering set");
  }
  validate_spectrum(spectrum);

  // Distinct orderings often produce the same Lambda (always, for the
  // two-valued spectra of interest); eigensolve each distinct matrix once.
  std::unordered_set<std::string> seen;
  double margin = std::numeric_limits<double>::infinity();
  for (const OrderingPair& ordering : orderings.orderings) {
    RealMatrix lambda = lambda_matrix(spectrum, ordering, p);
    std::string key(reinterpret_cast<const char*>(lambda.data()),
                    sizeof(double) * lambda.size());
    if (!seen.insert(std::move(key)).second) continue;
    const RealMatrix sym = lambda + lambda.transpose();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym,
                                                     Eigen::EigenvaluesOnly);
    margin = std::min(margin, solver.eigenvalues().minCoeff());
  }
  return CriterionVerdict{margin >= -1e-10 * static_cast<double>(p), margin};
}

OrderingSet default_realizable_orderings(int k) {
  if (k < 1 || k > 4) {
    throw std::invalid_argument("party dimension too large for ordering enumeration");
  }
  const int p = 1 << k;
  return realizable_orderings(p, default_ordering_samples(p), kOrderingSeed);
}

CriterionVerdict hildebrand_ppt_from_spectrum(const SortedSpectrum& spectrum,
                                              int k, int total) {
  return hildebrand_ppt_from_spectrum(spectrum, k, total,
                                      default_realizable_orderings(k));
}

// ---------------------------------------------------------------------------

CriterionVerdict degenerate_ppt_condition(const DegeneratePair& pair, int m) {
  if (m < 1) throw std::invalid_argument("party qubit count must be positive");
  if (!(pair.lambda_plus >= pair.lambda_minus) || !(pair.lambda_minus >= 0.0)) {
    throw std::invalid_argument("invalid eigenvalue pair");
  }
  const double margin =
      (pair.lambda_plus + pair.lambda_minus) -
      std::ldexp(pair.lambda_plus - pair.lambda_minus, m);
  return CriterionVerdict{margin >= -1e-12, margin};
}

bool in_degenerate_class(const SortedSpectrum& spectrum, int m, double tol) {
  if (m < 1) return false;
  const long p = 1L << m;
  const long top = p * (p - 1) / 2;
  const long bottom = p * (p + 1) / 2;
  const Eigen::Index d = spectrum.size();
  if (d < top + bottom) return false;
  for (long i = 0; i < top; ++i) {
    if (std::abs(spectrum.values(i) - spectrum.values(0)) > tol) return false;
  }
  for (long i = 0; i < bottom; ++i) {
    if (std::abs(spectrum.values(d - 1 - i) - spectrum.values(d - 1)) > tol) {
      return false;
    }
  }
  return true;
}

DegeneratePair degenerate_pair_from(const SortedSpectrum& spectrum) {
  if (spectrum.size() < 2) throw std::invalid_argument("spectrum too short");
  return DegeneratePair{spectrum.values(0),
                        spectrum.values(spectrum.size() - 1)};
}

double dqc1_alpha_threshold(int k) {
  if (k < 1) throw std::invalid_argument("party qubit count must be positive");
  return 1.0 - std::ldexp(1.0, -k);
}

std::pair<double, double> dqc1_all_cuts_bounds(int n) {
  if (n < 2) throw std::invalid_argument("need at least two mixed qubits");
  return {1.0 - std::ldexp(1.0, -(n / 2)), 1.0 - std::ldexp(1.0, -((n + 1) / 2))};
}

// ---------------------------------------------------------------------------

namespace {

// Columns of an orthonormal completion of `fixed`, seeded from the
// computational basis; deterministic.
Matrix complete_basis(const std::vector<Vector>& fixed, Eigen::Index dim) {
  Matrix basis(dim, dim);
  Eigen::Index have = 0;
  for (const Vector& v : fixed) basis.col(have++) = v;
  for (Eigen::Index e = 0; e < dim && have < dim; ++e) {
    Vector w = Vector::Zero(dim);
    w(e) = 1.0;
    for (Eigen::Index k = 0; k < have; ++k) {
      w -= (basis.col(k).adjoint() * w)(0, 0) * basis.col(k);
    }
    const double norm = w.norm();
    if (norm > 1e-6) basis.col(have++) = w / norm;
  }
  if (have != dim) throw std::logic_error("basis completion failed");
  return basis;
}

// Full basis index with qubit `qa` set to bit sa, qubit `qb` to bit sb,
// all other qubits 0.
std::size_t corner_index(int total, int qa, int sa, int qb, int sb) {
  std::size_t idx = 0;
  if (sa) idx |= std::size_t{1} << (total - 1 - qa);
  if (sb) idx |= std::size_t{1} << (total - 1 - qb);
  return idx;
}

// Extremal eigenvector arrangement for a one-qubit party: the largest
// eigenvalue rides the antisymmetric cross-cut vector, the three smallest
// fill the rest of that 2x2 corner, everything else stays on product basis
// vectors.  This realizes the boundary case of the p=2 spectrum criterion.
Matrix extremal_pair_arrangement(const DensityMatrix& state,
                                 const Bipartition& bp) {
  const Eigen::Index dim = static_cast<Eigen::Index>(state.dim());
  const bool a_small = bp.size_a() == 1;
  const auto idx = [&](std::size_t s, std::size_t l) {
    return a_small ? compose_index(bp, s, l) : compose_index(bp, l, s);
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector sing = Vector::Zero(dim);
  sing(idx(0, 0)) = inv_sqrt2;
  sing(idx(1, 1)) = -inv_sqrt2;
  Vector trip = Vector::Zero(dim);
  trip(idx(0, 0)) = inv_sqrt2;
  trip(idx(1, 1)) = inv_sqrt2;

  Matrix targets(dim, dim);
  targets.col(0) = sing;
  targets.col(dim - 1) = trip;
  targets.col(dim - 2) = Vector::Unit(dim, idx(0, 1));
  targets.col(dim - 3) = Vector::Unit(dim, idx(1, 0));
  Eigen::Index next = 1;
  for (Eigen::Index e = 0; e < dim; ++e) {
    const auto u = static_cast<std::size_t>(e);
    if (u == idx(0, 0) || u == idx(0, 1) || u == idx(1, 0) || u == idx(1, 1)) {
      continue;
    }
    targets.col(next++) = Vector::Unit(dim, e);
  }
  return targets;
}

// Rotates the span of the two smallest eigenvectors into a maximally
// entangled corner across the cut; effective whenever the state has a
// depressed bottom of the spectrum.
Matrix entangled_corner_arrangement(const DensityMatrix& state,
                                    const Bipartition& bp) {
  const Eigen::Index dim = static_cast<Eigen::Index>(state.dim());
  const int qa = bp.party_a().front();
  const int qb = bp.party_b().front();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector bell = Vector::Zero(dim);
  bell(corner_index(state.qubits, qa, 0, qb, 0)) = inv_sqrt2;
  bell(corner_index(state.qubits, qa, 1, qb, 1)) = inv_sqrt2;
  const Vector cross =
      Vector::Unit(dim, corner_index(state.qubits, qa, 0, qb, 1));

  const Matrix completed = complete_basis({bell, cross}, dim);
  Matrix targets(dim, dim);
  targets.col(dim - 1) = completed.col(0);
  targets.col(dim - 2) = completed.col(1);
  for (Eigen::Index e = 2; e < dim; ++e) targets.col(e - 2) = completed.col(e);
  return targets;
}

}  // namespace

SearchResult search_entangling_unitary(const DensityMatrix& state,
                                       const Bipartition& bp, long budget,
                                       std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("search budget must be positive");
  if (bp.total_qubits != state.qubits) {
    throw std::invalid_argument("bipartition does not match register");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(state.dim());

  SearchResult best;
  best.u = Unitary{state.qubits, Matrix::Identity(dim, dim)};

  const auto evaluate = [&](const Matrix& u) {
    const double nu =
        negativity(DensityMatrix{state.qubits, u * state.rho * u.adjoint()}, bp);
    ++best.evaluations;
    if (nu > best.best_negativity) {
      best.best_negativity = nu;
      best.u.matrix = u;
    }
    return nu;
  };

  // Eigenbasis sorted by non-increasing eigenvalue; the deterministic
  // starts prescribe where each eigenvector goes.
  const auto [values, eigvecs] = hermitian_eigensystem(state.rho);
  (void)values;

  if (best.evaluations < budget &&
      (bp.size_a() == 1 || bp.size_b() == 1)) {
    evaluate(extremal_pair_arrangement(state, bp) * eigvecs.adjoint());
  }
  if (best.evaluations < budget) {
    evaluate(entangled_corner_arrangement(state, bp) * eigvecs.adjoint());
  }

  // Haar restarts with greedy Givens refinement.
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  long restart = 0;
  while (best.evaluations < budget) {
    const std::uint64_t restart_seed = derive_seed(seed, 1000 + restart);
    auto rng = make_engine(derive_seed(restart_seed, 7));
    Matrix u = haar_random_unitary(state.qubits, restart_seed).matrix;
    double current = evaluate(u);
    double step = 0.4;
    int fails = 0;
    const long restart_cap =
        std::min(best.evaluations + 250, budget);
    std::uniform_int_distribution<Eigen::Index> pick(0, dim - 1);
    while (best.evaluations < restart_cap && step > 1e-3) {
      Eigen::Index i = pick(rng);
      Eigen::Index j = pick(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      const double phi = angle(rng);
      const Complex phase(std::cos(phi), std::sin(phi));
      const double c = std::cos(step);
      const double s = std::sin(step);
      Matrix candidate = u;
      candidate.row(i) = c * u.row(i) - s * std::conj(phase) * u.row(j);
      candidate.row(j) = s * phase * u.row(i) + c * u.row(j);
      const double nu = evaluate(candidate);
      if (nu > current + 1e-15) {
        u = std::move(candidate);
        current = nu;
        fails = 0;
      } else if (++fails >= 16) {
        step *= 0.5;
        fails = 0;
      }
    }
    ++restart;
  }
  return best;
}

SearchResult search_entangling_unitary(int n, double alpha,
                                       const Bipartition& bp, long budget,
                                       std::uint64_t seed) {
  return search_entangling_unitary(dqc1_state(n, alpha), bp, budget, seed);
}

}  // namespace dqc1
