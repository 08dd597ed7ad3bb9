// SPDX-License-Identifier: Apache-2.0
#include "dqc1/spectrum_criteria.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dqc1/seeding.hpp"

namespace {

using dqc1::RealVector;
using dqc1::SortedSpectrum;

SortedSpectrum random_spectrum(Eigen::Index dim, std::uint64_t seed) {
  auto engine = dqc1::make_engine(seed);
  std::exponential_distribution<double> expo(1.0);
  RealVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = expo(engine);
  v /= v.sum();
  return dqc1::sorted_spectrum(v);
}

}  // namespace

TEST_CASE("single-qubit-cut spectrum criterion on known spectra") {
  // Maximally mixed: RHS = 1/d + 2/d > 1/d = lambda_1.
  RealVector flat = RealVector::Constant(8, 1.0 / 8.0);
  CHECK(dqc1::johnston_sfs(dqc1::sorted_spectrum(flat)).ok);

  // Pure state: RHS = 0 < 1.
  RealVector pure = RealVector::Zero(8);
  pure(0) = 1.0;
  CHECK_FALSE(dqc1::johnston_sfs(dqc1::sorted_spectrum(pure)).ok);

  // Margin formula: lambda_{d-1} + 2 sqrt(lambda_{d-2} lambda_d) - lambda_1.
  RealVector v(4);
  v << 0.4, 0.3, 0.2, 0.1;
  const auto verdict = dqc1::johnston_sfs(dqc1::sorted_spectrum(v));
  const double expected = 0.2 + 2.0 * std::sqrt(0.3 * 0.1) - 0.4;
  CHECK(verdict.margin == doctest::Approx(expected).epsilon(1e-14));
  CHECK(verdict.ok == (expected >= -1e-12));
}

TEST_CASE("single-qubit-cut criterion validates input") {
  RealVector six = RealVector::Constant(6, 1.0 / 6.0);
  CHECK_THROWS_AS((void)dqc1::johnston_sfs(dqc1::sorted_spectrum(six)),
                  std::invalid_argument);
  RealVector two = RealVector::Constant(2, 0.5);
  CHECK_THROWS_AS((void)dqc1::johnston_sfs(dqc1::sorted_spectrum(two)),
                  std::invalid_argument);
  RealVector bad(4);
  bad << 0.7, 0.5, -0.1, -0.1;
  CHECK_THROWS_AS((void)dqc1::johnston_sfs(dqc1::sorted_spectrum(bad)),
                  dqc1::validation_error);
}

TEST_CASE("pair indexing enumerates the triangle row by row") {
  // p = 3 slots: (1,1)=0 (1,2)=1 (1,3)=2 (2,2)=3 (2,3)=4 (3,3)=5.
  CHECK(dqc1::pair_index_leq(1, 1, 3) == 0);
  CHECK(dqc1::pair_index_leq(1, 3, 3) == 2);
  CHECK(dqc1::pair_index_leq(2, 2, 3) == 3);
  CHECK(dqc1::pair_index_leq(3, 3, 3) == 5);
  // Strict-pair slots: (1,2)=0 (1,3)=1 (2,3)=2.
  CHECK(dqc1::pair_index_lt(1, 2, 3) == 0);
  CHECK(dqc1::pair_index_lt(1, 3, 3) == 1);
  CHECK(dqc1::pair_index_lt(2, 3, 3) == 2);
}

TEST_CASE("ordering from a vector ranks pair products") {
  RealVector x(3);
  x << 4.0, 2.0, 1.0;
  // Products: 16 > 8 > {4 = 4} > 2 > 1, tie (1,3) vs (2,2) broken
  // lexicographically toward (1,3).
  const auto ordering = dqc1::ordering_from_vector(x);
  CHECK(ordering.p == 3);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(1, 1, 3)] == 1);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(1, 2, 3)] == 2);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(1, 3, 3)] == 3);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(2, 2, 3)] == 4);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(2, 3, 3)] == 5);
  CHECK(ordering.sigma_plus[dqc1::pair_index_leq(3, 3, 3)] == 6);
  // Strict ranks compress to 1,2,3.
  CHECK(ordering.sigma_minus ==
        dqc1::consistent_sigma_minus(ordering.sigma_plus, 3));
  CHECK(ordering.sigma_minus[dqc1::pair_index_lt(1, 2, 3)] == 1);
  CHECK(ordering.sigma_minus[dqc1::pair_index_lt(1, 3, 3)] == 2);
  CHECK(ordering.sigma_minus[dqc1::pair_index_lt(2, 3, 3)] == 3);

  // The other realizable p=3 ordering: lambda_2^2 above lambda_1 lambda_3.
  RealVector y(3);
  y << 4.0, 3.0, 1.0;  // 16 > 12 > 9 > 4 > 3 > 1
  const auto other = dqc1::ordering_from_vector(y);
  CHECK(other.sigma_plus[dqc1::pair_index_leq(2, 2, 3)] == 3);
  CHECK(other.sigma_plus[dqc1::pair_index_leq(1, 3, 3)] == 4);

  RealVector unsorted(3);
  unsorted << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS((void)dqc1::ordering_from_vector(unsorted),
                  std::invalid_argument);
}

TEST_CASE("realizable ordering counts for small party dimensions") {
  const auto two = dqc1::realizable_orderings(2, 64, 1);
  CHECK(two.orderings.size() == 1);
  CHECK(two.saturated);

  const auto three = dqc1::realizable_orderings(3, 2000, 1);
  CHECK(three.orderings.size() == 2);
  CHECK(three.saturated);

  // p = 4: the count is seed-stable and does not grow when the sample
  // budget doubles.
  const auto base = dqc1::realizable_orderings(4, 20000, 1);
  for (const std::uint64_t seed : {2, 3, 4, 5}) {
    CHECK(dqc1::realizable_orderings(4, 20000, seed).orderings.size() ==
          base.orderings.size());
  }
  CHECK(dqc1::realizable_orderings(4, 40000, 1).orderings.size() ==
        base.orderings.size());
  CHECK(base.saturated);

  CHECK_THROWS_AS((void)dqc1::realizable_orderings(32, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)dqc1::realizable_orderings(1, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("pair-ordering matrix unfolds the spectrum for p = 2") {
  RealVector v(8);
  v << 0.30, 0.20, 0.15, 0.12, 0.10, 0.06, 0.04, 0.03;
  const SortedSpectrum s = dqc1::sorted_spectrum(v);
  const auto set = dqc1::realizable_orderings(2, 64, 1);
  const dqc1::RealMatrix lambda =
      dqc1::lambda_matrix(s, set.orderings.front(), 2);
  CHECK(lambda(0, 0) == 0.03);   // smallest
  CHECK(lambda(0, 1) == 0.04);   // second smallest
  CHECK(lambda(1, 1) == 0.06);   // third smallest
  CHECK(lambda(1, 0) == -0.30);  // minus the largest
}

TEST_CASE("spectra too short for the pair table are rejected") {
  RealVector v = RealVector::Constant(8, 1.0 / 8.0);
  const SortedSpectrum s = dqc1::sorted_spectrum(v);
  const auto set = dqc1::realizable_orderings(4, 10000, 1);
  // p = 4 needs at least 10 eigenvalues.
  CHECK_THROWS_AS(
      (void)dqc1::lambda_matrix(s, set.orderings.front(), 4),
      std::invalid_argument);
}

TEST_CASE("general and single-qubit-cut criteria agree at p = 2") {
  for (int trial = 0; trial < 60; ++trial) {
    const SortedSpectrum s =
        random_spectrum(trial % 2 == 0 ? 8 : 16,
                        dqc1::derive_seed(99, trial));
    const int total = trial % 2 == 0 ? 3 : 4;
    const auto a = dqc1::johnston_sfs(s);
    const auto b = dqc1::hildebrand_ppt_from_spectrum(s, 1, total);
    CHECK(a.ok == b.ok);
    CHECK((a.margin >= 0) == (b.margin >= 0));
  }
}

TEST_CASE("two-plateau closed form flips at the analytic threshold") {
  for (const int k : {1, 2}) {
    const int n = 2 * k;
    const double threshold = dqc1::dqc1_alpha_threshold(k);
    for (double alpha = 0.0; alpha <= 1.0; alpha += 0.05) {
      const SortedSpectrum s = dqc1::dqc1_spectrum(n, alpha);
      REQUIRE(dqc1::in_degenerate_class(s, k));
      const auto verdict = dqc1::degenerate_ppt_condition(
          dqc1::degenerate_pair_from(s), k);
      CHECK(verdict.ok == (alpha >= threshold - 1e-12));
    }
  }
  CHECK(dqc1::dqc1_alpha_threshold(1) == 0.5);
  CHECK(dqc1::dqc1_alpha_threshold(2) == 0.75);
  CHECK(dqc1::dqc1_alpha_threshold(3) == 0.875);
  CHECK(dqc1::dqc1_alpha_threshold(4) == 0.9375);
}

TEST_CASE("degeneracy premises are checked against the actual spectrum") {
  CHECK(dqc1::in_degenerate_class(dqc1::dqc1_spectrum(4, 0.3), 2));
  // Too small a register for p(p+1)/2 bottom values.
  CHECK_FALSE(dqc1::in_degenerate_class(dqc1::dqc1_spectrum(1, 0.3), 2));
  // A generic spectrum is not two-plateau.
  CHECK_FALSE(dqc1::in_degenerate_class(random_spectrum(16, 5), 2));
  const auto pair = dqc1::degenerate_pair_from(dqc1::dqc1_spectrum(2, 0.4));
  CHECK(pair.lambda_plus == doctest::Approx((2.0 - 0.4) / 8.0));
  CHECK(pair.lambda_minus == doctest::Approx(0.4 / 8.0));
}

TEST_CASE("all-cuts noise bounds match the closed form") {
  for (int n = 2; n <= 10; ++n) {
    const auto [necessary, sufficient] = dqc1::dqc1_all_cuts_bounds(n);
    CHECK(necessary == 1.0 - std::ldexp(1.0, -(n / 2)));
    CHECK(sufficient == 1.0 - std::ldexp(1.0, -((n + 1) / 2)));
    CHECK((necessary == sufficient) == (n % 2 == 0));
  }
}

TEST_CASE("entangling search certifies what it reports") {
  // Below the single-qubit-cut threshold an entangler exists.
  const dqc1::Bipartition cut = dqc1::make_bipartition(3, {0});
  const auto found = dqc1::search_entangling_unitary(2, 0.4, cut, 400, 21);
  CHECK(found.best_negativity > 0.0);
  const dqc1::DensityMatrix moved =
      dqc1::evolve(found.u, dqc1::dqc1_state(2, 0.4));
  CHECK(dqc1::negativity(moved, cut) ==
        doctest::Approx(found.best_negativity).epsilon(1e-10));
  CHECK(found.evaluations <= 400);

  // Above the threshold every orbit point is PPT; the search comes back
  // empty-handed.
  const auto blocked = dqc1::search_entangling_unitary(2, 0.8, cut, 150, 21);
  CHECK(blocked.best_negativity == 0.0);

  CHECK_THROWS_AS(
      (void)dqc1::search_entangling_unitary(2, 0.4, cut, 0, 21),
      std::invalid_argument);
}

TEST_CASE("search also entangles the uniform-middle state") {
  for (const int n : {1, 2}) {
    const dqc1::Bipartition cut = dqc1::make_bipartition(n + 1, {0});
    const auto found = dqc1::search_entangling_unitary(
        dqc1::tau_state(n), cut, 2000, 5);
    CHECK(found.best_negativity > 0.0);
  }
}
