// SPDX-License-Identifier: Apache-2.0
#include "dqc1/circuits.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

namespace {

using dqc1::Complex;
using dqc1::Matrix;
using dqc1::Unitary;
using dqc1::Vector;

bool near(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& u, double tol = 1e-12) {
  return near(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols()), tol);
}

}  // namespace

TEST_CASE("fixed gates have their textbook entries") {
  CHECK(dqc1::pauli_x()(0, 1) == Complex(1, 0));
  CHECK(dqc1::pauli_y()(0, 1) == Complex(0, -1));
  CHECK(dqc1::pauli_y()(1, 0) == Complex(0, 1));
  CHECK(dqc1::pauli_z()(1, 1) == Complex(-1, 0));
  CHECK(is_unitary(dqc1::hadamard()));
  CHECK(std::abs(dqc1::hadamard()(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("two-qubit rotation mixes only the middle basis states") {
  const double theta = M_PI / 4.0;
  const Unitary r = dqc1::r_theta(theta);
  CHECK(r.qubits == 2);
  CHECK(is_unitary(r.matrix));

  Vector in = Vector::Zero(4);
  in(1) = 1.0;  // |01>
  const Vector out = r.matrix * in;
  CHECK(std::abs(out(1) - std::cos(theta)) < 1e-15);
  CHECK(std::abs(out(2) - std::sin(theta)) < 1e-15);
  CHECK(std::abs(out(0)) == 0.0);
  CHECK(std::abs(out(3)) == 0.0);

  // |00> and |11> are fixed.
  CHECK(r.matrix(0, 0) == Complex(1, 0));
  CHECK(r.matrix(3, 3) == Complex(1, 0));
}

TEST_CASE("controlled trace circuit applies V on the lower block after H") {
  Unitary v;
  v.qubits = 1;
  v.matrix = dqc1::pauli_x();
  const Unitary u = dqc1::cdqc1_unitary(v);
  CHECK(u.qubits == 2);
  CHECK(is_unitary(u.matrix));

  Vector in = Vector::Zero(4);
  in(0) = 1.0;  // |00>
  const Vector out = u.matrix * in;
  // (|0>|0> + |1> X|0>)/sqrt2 = (|00> + |11>)/sqrt2.
  CHECK(std::abs(out(0) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(out(3) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("haar unitaries are unitary and seed-deterministic") {
  const Unitary a = dqc1::haar_random_unitary(3, 42);
  const Unitary b = dqc1::haar_random_unitary(3, 42);
  const Unitary c = dqc1::haar_random_unitary(3, 43);
  CHECK(is_unitary(a.matrix, 1e-11));
  CHECK(near(a.matrix, b.matrix, 0.0));
  CHECK((a.matrix - c.matrix).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("evolve conjugates and preserves validity") {
  const dqc1::DensityMatrix state = dqc1::dqc1_state(2, 0.3);
  const Unitary u = dqc1::haar_random_unitary(3, 7);
  const dqc1::DensityMatrix moved = dqc1::evolve(u, state);
  CHECK_NOTHROW(dqc1::validate_density(moved));
  CHECK(near(moved.rho, u.matrix * state.rho * u.matrix.adjoint(), 1e-13));
}

TEST_CASE("clean-qubit expectations read off the normalized trace") {
  // V = identity: tr V / 2^n = 1.
  Unitary v;
  v.qubits = 2;
  v.matrix = Matrix::Identity(4, 4);
  for (const double alpha : {0.0, 0.25, 0.8}) {
    const Unitary u = dqc1::cdqc1_unitary(v);
    CHECK(dqc1::dqc1_expectation(u, alpha, dqc1::PauliAxis::X) ==
          doctest::Approx((1 - alpha) * 1.0).epsilon(1e-12));
    CHECK(dqc1::dqc1_expectation(u, alpha, dqc1::PauliAxis::Y) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  // V = diag(1, i): tr V / 2 = (1+i)/2.
  Unitary phase;
  phase.qubits = 1;
  phase.matrix = Matrix::Identity(2, 2);
  phase.matrix(1, 1) = Complex(0, 1);
  const Unitary u = dqc1::cdqc1_unitary(phase);
  CHECK(dqc1::dqc1_expectation(u, 0.0, dqc1::PauliAxis::X) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dqc1::dqc1_expectation(u, 0.0, dqc1::PauliAxis::Y) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sampling is seeded and sized") {
  Unitary v;
  v.qubits = 1;
  v.matrix = Matrix::Identity(2, 2);
  const Unitary u = dqc1::cdqc1_unitary(v);
  const auto a = dqc1::sample_dqc1(u, 0.0, dqc1::PauliAxis::X, 2000, 5);
  const auto b = dqc1::sample_dqc1(u, 0.0, dqc1::PauliAxis::X, 2000, 5);
  CHECK(a.value == b.value);
  CHECK(a.shots == 2000);
  CHECK(a.std_error >= 0.0);
  CHECK_THROWS_AS(
      (void)dqc1::sample_dqc1(u, 0.0, dqc1::PauliAxis::X, 0, 5),
      std::invalid_argument);
}

TEST_CASE("normalized trace estimate converges and rejects alpha = 1") {
  Unitary v;
  v.qubits = 2;
  v.matrix = dqc1::haar_random_unitary(2, 9).matrix;
  const Complex exact = v.matrix.trace() / 4.0;
  const auto est = dqc1::normalized_trace_estimate(v, 0.2, 200000, 3);
  CHECK(std::abs(est.estimate.real() - exact.real()) <
        5 * est.std_error_re + 1e-12);
  CHECK(std::abs(est.estimate.imag() - exact.imag()) <
        5 * est.std_error_im + 1e-12);
  CHECK_THROWS_AS((void)dqc1::normalized_trace_estimate(v, 1.0, 1000, 3),
                  dqc1::validation_error);
}

TEST_CASE("circuit text parses gates, comments, and case") {
  std::istringstream text(
      "# comment line\n"
      "h 0\n"
      "CNOT 0 1\n"
      "  rtheta 1 2 0.5   # trailing note\n"
      "T 2\n"
      "\n"
      "cphase 0 2 1.25\n");
  const auto ops = dqc1::parse_circuit(text);
  REQUIRE(ops.size() == 5);
  CHECK(ops[0].name == "H");
  CHECK(ops[0].q0 == 0);
  CHECK(ops[1].name == "CNOT");
  CHECK(ops[1].q1 == 1);
  CHECK(ops[2].name == "RTHETA");
  CHECK(ops[2].param == doctest::Approx(0.5));
  CHECK(ops[4].name == "CPHASE");
  CHECK(dqc1::circuit_qubit_count(ops) == 3);
}

TEST_CASE("circuit parse errors carry line numbers") {
  const auto message_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)dqc1::parse_circuit(in);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("H 0\nBOGUS 1\n").find("circuit line 2") == 0);
  CHECK(message_of("CNOT 1 1\n").find("circuit line 1") == 0);
  CHECK(message_of("H\n").find("circuit line 1") == 0);
  CHECK(message_of("RTHETA 0 1\n").find("circuit line 1") == 0);
}

TEST_CASE("circuit unitary applies lines in file order") {
  std::istringstream text("X 0\nH 0\n");
  const auto ops = dqc1::parse_circuit(text);
  const Unitary u = dqc1::circuit_unitary(ops, 1);
  CHECK(near(u.matrix, (dqc1::hadamard() * dqc1::pauli_x()).eval()));
}

TEST_CASE("circuit gates match their dense definitions") {
  {
    std::istringstream text("CNOT 0 1\n");
    const Unitary u = dqc1::circuit_unitary(dqc1::parse_circuit(text), 2);
    Vector in = Vector::Zero(4);
    in(2) = 1.0;  // |10>: control set
    CHECK(std::abs((u.matrix * in)(3) - 1.0) < 1e-14);
    in.setZero();
    in(1) = 1.0;  // |01>: control clear
    CHECK(std::abs((u.matrix * in)(1) - 1.0) < 1e-14);
  }
  {
    std::istringstream text("T 0\n");
    const Unitary u = dqc1::circuit_unitary(dqc1::parse_circuit(text), 1);
    CHECK(std::abs(u.matrix(1, 1) -
                   std::exp(Complex(0, M_PI / 4.0))) < 1e-15);
  }
  {
    std::istringstream text("CZ 0 1\n");
    const Unitary u = dqc1::circuit_unitary(dqc1::parse_circuit(text), 2);
    Matrix expected = Matrix::Identity(4, 4);
    expected(3, 3) = -1.0;
    CHECK(near(u.matrix, expected));
  }
  {
    std::istringstream text("CPHASE 0 1 0.75\n");
    const Unitary u = dqc1::circuit_unitary(dqc1::parse_circuit(text), 2);
    Matrix expected = Matrix::Identity(4, 4);
    expected(3, 3) = std::exp(Complex(0, 0.75));
    CHECK(near(u.matrix, expected));
  }
}

TEST_CASE("circuit unitary validates the register") {
  std::istringstream text("H 3\n");
  const auto ops = dqc1::parse_circuit(text);
  CHECK_THROWS_AS((void)dqc1::circuit_unitary(ops, 2), std::invalid_argument);
  CHECK(dqc1::circuit_qubit_count({}) == 0);
}
