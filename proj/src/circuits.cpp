// SPDX-License-Identifier: Apache-2.0
#include "dqc1/circuits.hpp"

#include "dqc1/seeding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dqc1 {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Unitary r_theta(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = c;
  m(1, 2) = -s;
  m(2, 1) = s;
  m(2, 2) = c;
  return Unitary{2, std::move(m)};
}

Unitary cdqc1_unitary(const Unitary& v) {
  if (v.qubits < 1) throw std::invalid_argument("empty target register");
  if (v.qubits + 1 > max_register_qubits()) {
    throw validation_error("register too large");
  }
  const Eigen::Index half = v.matrix.rows();
  if (half != v.matrix.cols() ||
      half != (Eigen::Index{1} << v.qubits)) {
    throw std::invalid_argument("gate/target mismatch");
  }
  // Hadamard on the clean qubit first, then V controlled on it; the
  // controlled block multiplies the bottom row group of the Hadamard layer.
  Unitary u{v.qubits + 1, embed(hadamard(), {0}, v.qubits + 1)};
  u.matrix.bottomRows(half) = (v.matrix * u.matrix.bottomRows(half)).eval();
  return u;
}

Unitary haar_random_unitary(int qubits, std::uint64_t seed) {
  if (qubits < 1) throw std::invalid_argument("empty register");
  if (qubits > max_register_qubits()) {
    throw validation_error("register too large");
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  auto rng = make_engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      z(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  // Fix the phases of the R diagonal so the distribution is exactly Haar
  // rather than merely invariant under the QR gauge.
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return Unitary{qubits, std::move(q)};
}

DensityMatrix evolve(const Unitary& u, const DensityMatrix& state) {
  if (u.qubits != state.qubits) {
    throw std::invalid_argument("gate/target mismatch");
  }
  return DensityMatrix{state.qubits, u.matrix * state.rho * u.matrix.adjoint()};
}

namespace {

// <col| (sigma_mu (x) I) |col> for a register column, matrix-free.
double pauli_quadratic_form(const Vector& col, PauliAxis axis) {
  const Eigen::Index half = col.size() / 2;
  Complex acc = 0.0;
  if (axis == PauliAxis::X) {
    for (Eigen::Index b = 0; b < half; ++b) {
      acc += std::conj(col(b)) * col(half + b) +
             std::conj(col(half + b)) * col(b);
    }
  } else {
    for (Eigen::Index b = 0; b < half; ++b) {
      acc += std::conj(col(b)) * (-kI * col(half + b)) +
             std::conj(col(half + b)) * (kI * col(b));
    }
  }
  return acc.real();
}

}  // namespace

double dqc1_expectation(const Unitary& u, double alpha, PauliAxis axis) {
  if (u.qubits < 2) throw std::invalid_argument("empty target register");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("invalid mixing parameter");
  }
  const Eigen::Index dim = u.matrix.rows();
  const Eigen::Index half = dim / 2;
  const double top = (2.0 - alpha) / static_cast<double>(dim);
  const double bottom = alpha / static_cast<double>(dim);
  // The input state is diagonal, so the trace splits over columns of u.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double weight = i < half ? top : bottom;
    if (weight != 0.0) acc += weight * pauli_quadratic_form(u.matrix.col(i), axis);
  }
  return acc;
}

SampleEstimate sample_dqc1(const Unitary& u, double alpha, PauliAxis axis,
                           long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  const double mean = dqc1_expectation(u, alpha, axis);
  const double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
  auto rng = make_engine(seed);
  std::bernoulli_distribution coin(p_plus);
  long plus = 0;
  for (long s = 0; s < shots; ++s) {
    if (coin(rng)) ++plus;
  }
  const double xbar =
      (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
      static_cast<double>(shots);
  double std_error = 0.0;
  if (shots > 1) {
    const double var = (1.0 - xbar * xbar) * static_cast<double>(shots) /
                       static_cast<double>(shots - 1);
    std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(shots));
  }
  return SampleEstimate{xbar, std_error, shots};
}

namespace {

// The sign relating the sigma_y readout to Im tr(v) depends on the basis
// conventions; it is pinned once against the exact expectation for the
// one-qubit phase unitary diag(1, i), whose trace has a positive imaginary
// part.
int sigma_y_sign() {
  static const int sign = [] {
    Matrix v(2, 2);
    v << 1, 0, 0, kI;
    const double ey =
        dqc1_expectation(cdqc1_unitary(Unitary{1, v}), 0.0, PauliAxis::Y);
    return ey > 0.0 ? 1 : -1;
  }();
  return sign;
}

}  // namespace

TraceEstimate normalized_trace_estimate(const Unitary& v, double alpha,
                                        long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("invalid mixing parameter");
  }
  if (alpha == 1.0) {
    throw validation_error("no signal: clean-qubit polarization is zero");
  }
  const Unitary u = cdqc1_unitary(v);
  const SampleEstimate x =
      sample_dqc1(u, alpha, PauliAxis::X, shots, derive_seed(seed, 0));
  const SampleEstimate y =
      sample_dqc1(u, alpha, PauliAxis::Y, shots, derive_seed(seed, 1));
  const double scale = 1.0 / (1.0 - alpha);
  const double s = static_cast<double>(sigma_y_sign());
  return TraceEstimate{Complex(x.value * scale, s * y.value * scale),
                       x.std_error * scale, y.std_error * scale, shots};
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "circuit line " << line << ": " << what;
  throw std::invalid_argument(msg.str());
}

int parse_qubit(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    const int q = std::stoi(tok, &pos);
    if (pos != tok.size() || q < 0) parse_fail(line, "bad qubit index");
    return q;
  } catch (const std::invalid_argument&) {
    parse_fail(line, "bad qubit index");
  } catch (const std::out_of_range&) {
    parse_fail(line, "bad qubit index");
  }
}

double parse_param(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) parse_fail(line, "bad parameter");
    return v;
  } catch (const std::invalid_argument&) {
    parse_fail(line, "bad parameter");
  } catch (const std::out_of_range&) {
    parse_fail(line, "bad parameter");
  }
}

}  // namespace

std::vector<GateOp> parse_circuit(std::istream& in) {
  std::vector<GateOp> ops;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string name;
    if (!(tokens >> name)) continue;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    std::vector<std::string> args;
    std::string tok;
    while (tokens >> tok) args.push_back(tok);

    GateOp op;
    op.name = name;
    if (name == "H" || name == "X" || name == "Y" || name == "Z" ||
        name == "S" || name == "T") {
      if (args.size() != 1) parse_fail(line, "expected one qubit");
      op.q0 = parse_qubit(args[0], line);
    } else if (name == "CNOT" || name == "CZ") {
      if (args.size() != 2) parse_fail(line, "expected two qubits");
      op.q0 = parse_qubit(args[0], line);
      op.q1 = parse_qubit(args[1], line);
    } else if (name == "RTHETA" || name == "CPHASE") {
      if (args.size() != 3) parse_fail(line, "expected two qubits and an angle");
      op.q0 = parse_qubit(args[0], line);
      op.q1 = parse_qubit(args[1], line);
      op.param = parse_param(args[2], line);
    } else {
      parse_fail(line, "unknown gate '" + name + "'");
    }
    if (op.q1 >= 0 && op.q0 == op.q1) parse_fail(line, "repeated qubit");
    ops.push_back(std::move(op));
  }
  return ops;
}

std::vector<GateOp> parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
  return parse_circuit(in);
}

int circuit_qubit_count(const std::vector<GateOp>& ops) {
  int count = 0;
  for (const GateOp& op : ops) {
    count = std::max(count, op.q0 + 1);
    count = std::max(count, op.q1 + 1);
  }
  return count;
}

namespace {

Matrix gate_matrix(const GateOp& op) {
  if (op.name == "H") return hadamard();
  if (op.name == "X") return pauli_x();
  if (op.name == "Y") return pauli_y();
  if (op.name == "Z") return pauli_z();
  if (op.name == "S") {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = kI;
    return m;
  }
  if (op.name == "T") {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::exp(kI * (std::acos(-1.0) / 4.0));
    return m;
  }
  if (op.name == "CNOT") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (op.name == "CZ") {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return m;
  }
  if (op.name == "RTHETA") return r_theta(op.param).matrix;
  if (op.name == "CPHASE") {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = std::exp(kI * op.param);
    return m;
  }
  throw std::invalid_argument("unknown gate '" + op.name + "'");
}

}  // namespace

Unitary circuit_unitary(const std::vector<GateOp>& ops, int qubits) {
  if (qubits < 1) throw std::invalid_argument("empty register");
  if (qubits > max_register_qubits()) {
    throw validation_error("register too large");
  }
  if (circuit_qubit_count(ops) > qubits) {
    throw std::invalid_argument("circuit references qubits beyond register");
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Unitary u{qubits, Matrix::Identity(dim, dim)};
  for (const GateOp& op : ops) {
    std::vector<int> targets;
    targets.push_back(op.q0);
    if (op.q1 >= 0) targets.push_back(op.q1);
    apply_embedded_left(gate_matrix(op), targets, qubits, u.matrix);
  }
  return u;
}

}  // namespace dqc1
