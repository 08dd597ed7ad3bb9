// SPDX-License-Identifier: Apache-2.0
#include "dqc1/tensor.hpp"

#include <doctest.h>

#include "dqc1/circuits.hpp"

namespace {

using dqc1::Complex;
using dqc1::Matrix;
using dqc1::RealVector;

bool near(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("kron of Pauli X with itself is the anti-diagonal") {
  const Matrix x = dqc1::pauli_x();
  const Matrix k = dqc1::kron(x, x);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 3) = expected(1, 2) = expected(2, 1) = expected(3, 0) = 1.0;
  CHECK(near(k, expected));
}

TEST_CASE("kron shapes and identity composition") {
  const Matrix a = Matrix::Random(2, 3);
  const Matrix b = Matrix::Random(4, 2);
  const Matrix k = dqc1::kron(a, b);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 6);
  CHECK(near(dqc1::kron(Matrix::Identity(2, 2), Matrix::Identity(4, 4)),
             Matrix::Identity(8, 8)));
  // Entry law: K[(i,p),(j,q)] = a(i,j) b(p,q).
  CHECK(k(1 * 4 + 2, 2 * 2 + 1) == a(1, 2) * b(2, 1));
}

TEST_CASE("kron refuses results beyond the register cap") {
  const Matrix big = Matrix::Identity(64, 64);
  CHECK_THROWS_AS((void)dqc1::kron(big, big), dqc1::validation_error);
}

TEST_CASE("sorted_spectrum sorts non-increasing") {
  RealVector v(4);
  v << 0.1, 0.4, 0.2, 0.3;
  const dqc1::SortedSpectrum s = dqc1::sorted_spectrum(v);
  CHECK(s.values(0) == 0.4);
  CHECK(s.values(3) == 0.1);
  for (Eigen::Index i = 1; i < s.size(); ++i) {
    CHECK(s.values(i - 1) >= s.values(i));
  }
}

TEST_CASE("validate_spectrum accepts distributions and rejects junk") {
  RealVector good(3);
  good << 0.5, 0.3, 0.2;
  CHECK_NOTHROW(dqc1::validate_spectrum(dqc1::sorted_spectrum(good)));

  RealVector negative(3);
  negative << 0.8, 0.4, -0.2;
  CHECK_THROWS_AS(dqc1::validate_spectrum(dqc1::sorted_spectrum(negative)),
                  dqc1::validation_error);

  RealVector unnormalized(2);
  unnormalized << 0.9, 0.3;
  CHECK_THROWS_AS(dqc1::validate_spectrum(dqc1::sorted_spectrum(unnormalized)),
                  dqc1::validation_error);
}

TEST_CASE("hermitian_spectrum matches a known diagonal and rejects others") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = -1.5;
  d(2, 2) = 2.0;
  const dqc1::SortedSpectrum s = dqc1::hermitian_spectrum(d);
  CHECK(s.values(0) == doctest::Approx(2.0));
  CHECK(s.values(1) == doctest::Approx(0.5));
  CHECK(s.values(2) == doctest::Approx(-1.5));

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS((void)dqc1::hermitian_spectrum(skew),
                  dqc1::validation_error);
}

TEST_CASE("hermitian_eigensystem reconstructs the operator") {
  Matrix g = Matrix::Random(5, 5);
  const Matrix h = (g + g.adjoint()).eval();
  const auto [values, vectors] = dqc1::hermitian_eigensystem(h);
  Matrix rebuilt = Matrix::Zero(5, 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    rebuilt += values(i) * vectors.col(i) * vectors.col(i).adjoint();
  }
  CHECK(near(rebuilt, h, 1e-10));
  for (Eigen::Index i = 1; i < 5; ++i) {
    CHECK(values(i - 1) >= values(i));
  }
  CHECK(near(vectors.adjoint() * vectors, Matrix::Identity(5, 5), 1e-12));
}

TEST_CASE("trace_norm equals the sum of singular values") {
  CHECK(dqc1::trace_norm(dqc1::pauli_z()) == doctest::Approx(2.0));
  Matrix g = Matrix::Random(4, 4);
  const Matrix h = (g + g.adjoint()).eval();
  const dqc1::SortedSpectrum s = dqc1::hermitian_spectrum(h);
  CHECK(dqc1::trace_norm(h) ==
        doctest::Approx(s.values.cwiseAbs().sum()).epsilon(1e-10));
}

TEST_CASE("embed single-qubit gates against explicit kron") {
  const Matrix h = dqc1::hadamard();
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(near(dqc1::embed(h, {0}, 2), dqc1::kron(h, i2)));
  CHECK(near(dqc1::embed(h, {1}, 2), dqc1::kron(i2, h)));
  CHECK(near(dqc1::embed(h, {1}, 3), dqc1::kron(i2, dqc1::kron(h, i2))));
}

TEST_CASE("embed respects target order: first target is the gate MSB") {
  // CNOT with control = gate-qubit 0, target = gate-qubit 1.
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;

  const Matrix forward = dqc1::embed(cnot, {0, 1}, 2);
  CHECK(near(forward, cnot));

  // Reversed targets swap the roles: |01> (qubit 1 set) flips qubit 0.
  const Matrix reversed = dqc1::embed(cnot, {1, 0}, 2);
  dqc1::Vector in = dqc1::Vector::Zero(4);
  in(1) = 1.0;  // |01>
  dqc1::Vector out = reversed * in;
  CHECK(std::abs(out(3) - 1.0) < 1e-14);  // |11>
}

TEST_CASE("embed of a product gate factors into separate embeds") {
  const Matrix a = dqc1::hadamard();
  const Matrix b = dqc1::pauli_y();
  const Matrix joint = dqc1::embed(dqc1::kron(a, b), {0, 2}, 3);
  const Matrix split =
      (dqc1::embed(a, {0}, 3) * dqc1::embed(b, {2}, 3)).eval();
  CHECK(near(joint, split));
}

TEST_CASE("apply_embedded_left multiplies by the embedded gate") {
  const Matrix g = dqc1::haar_random_unitary(2, 11).matrix;
  Matrix m = Matrix::Random(8, 8);
  Matrix expected = dqc1::embed(g, {1, 2}, 3) * m;
  dqc1::apply_embedded_left(g, {1, 2}, 3, m);
  CHECK(near(m, expected, 1e-12));
}

TEST_CASE("embed validates targets") {
  const Matrix h = dqc1::hadamard();
  CHECK_THROWS_AS((void)dqc1::embed(h, {2}, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)dqc1::embed(h, {0, 1}, 2), std::invalid_argument);
  Matrix four = Matrix::Identity(4, 4);
  CHECK_THROWS_AS((void)dqc1::embed(four, {0, 0}, 2), std::invalid_argument);
}

TEST_CASE("bit_of reads qubit 0 as the most significant bit") {
  CHECK(dqc1::bit_of(0b100, 0, 3) == 1);
  CHECK(dqc1::bit_of(0b100, 1, 3) == 0);
  CHECK(dqc1::bit_of(0b001, 2, 3) == 1);
}
