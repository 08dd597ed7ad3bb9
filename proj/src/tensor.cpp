// SPDX-License-Identifier: Apache-2.0
#include "dqc1/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace dqc1 {

namespace {
std::atomic<int> g_max_register_qubits{11};
}  // namespace

int max_register_qubits() { return g_max_register_qubits.load(); }

void set_max_register_qubits(int qubits) {
  if (qubits < 1 || qubits > 20) {
    throw std::invalid_argument("register cap out of range");
  }
  g_max_register_qubits.store(qubits);
}

std::size_t max_register_dim() {
  return std::size_t{1} << g_max_register_qubits.load();
}

SortedSpectrum sorted_spectrum(RealVector raw) {
  std::sort(raw.data(), raw.data() + raw.size(), std::greater<double>());
  return SortedSpectrum{std::move(raw)};
}

void validate_spectrum(const SortedSpectrum& s, double tol) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s.values(i) < -tol) throw validation_error("invalid spectrum");
    if (i > 0 && s.values(i) > s.values(i - 1) + tol) {
      throw validation_error("invalid spectrum");
    }
  }
  if (std::abs(s.values.sum() - 1.0) > tol * static_cast<double>(s.size())) {
    throw validation_error("invalid spectrum");
  }
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows =
      static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const std::size_t cols =
      static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_register_dim() || cols > max_register_dim()) {
    throw validation_error("register too large");
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SortedSpectrum hermitian_spectrum(const Matrix& h) {
  if (!is_hermitian(h)) throw validation_error("not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h,
                                               Eigen::EigenvaluesOnly);
  return sorted_spectrum(solver.eigenvalues());
}

std::pair<SortedSpectrum, Matrix> hermitian_eigensystem(const Matrix& h) {
  if (!is_hermitian(h)) throw validation_error("not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  // Eigen sorts ascending; flip to the non-increasing convention.
  const Eigen::Index d = h.rows();
  RealVector values(d);
  Matrix vectors(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    values(i) = solver.eigenvalues()(d - 1 - i);
    vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return {SortedSpectrum{std::move(values)}, std::move(vectors)};
}

double trace_norm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("trace norm requires a square matrix");
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

namespace {

void check_targets(const Matrix& gate, const std::vector<int>& targets,
                   int total_qubits) {
  if (total_qubits < 1 ||
      (std::size_t{1} << total_qubits) > max_register_dim()) {
    throw validation_error("register too large");
  }
  const int t = static_cast<int>(targets.size());
  if (t < 1 || t > total_qubits) {
    throw std::invalid_argument("gate/target mismatch");
  }
  if (gate.rows() != gate.cols() ||
      gate.rows() != (Eigen::Index{1} << t)) {
    throw std::invalid_argument("gate/target mismatch");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= total_qubits) {
      throw std::invalid_argument("gate/target mismatch");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("gate/target mismatch");
      }
    }
  }
}

// Single-bit masks for each target, MSB convention.
std::vector<std::size_t> target_bits(const std::vector<int>& targets,
                                     int total_qubits) {
  std::vector<std::size_t> bits(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    bits[i] = std::size_t{1} << (total_qubits - 1 - targets[i]);
  }
  return bits;
}

std::size_t gather_gate_index(std::size_t full,
                              const std::vector<std::size_t>& bits) {
  std::size_t g = 0;
  for (std::size_t b : bits) g = (g << 1) | ((full & b) ? 1u : 0u);
  return g;
}

std::size_t scatter_gate_index(std::size_t g, std::size_t rest,
                               const std::vector<std::size_t>& bits) {
  std::size_t full = rest;
  const std::size_t t = bits.size();
  for (std::size_t i = 0; i < t; ++i) {
    if ((g >> (t - 1 - i)) & 1u) full |= bits[i];
  }
  return full;
}

}  // namespace

Matrix embed(const Matrix& gate, const std::vector<int>& targets,
             int total_qubits) {
  check_targets(gate, targets, total_qubits);
  const std::size_t dim = std::size_t{1} << total_qubits;
  const std::size_t gdim = std::size_t{1} << targets.size();
  const auto bits = target_bits(targets, total_qubits);
  std::size_t tmask = 0;
  for (std::size_t b : bits) tmask |= b;

  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t gc = gather_gate_index(c, bits);
    const std::size_t rest = c & ~tmask;
    for (std::size_t gr = 0; gr < gdim; ++gr) {
      out(scatter_gate_index(gr, rest, bits), c) = gate(gr, gc);
    }
  }
  return out;
}

void apply_embedded_left(const Matrix& gate, const std::vector<int>& targets,
                         int total_qubits, Matrix& u) {
  check_targets(gate, targets, total_qubits);
  const std::size_t dim = std::size_t{1} << total_qubits;
  if (static_cast<std::size_t>(u.rows()) != dim) {
    throw std::invalid_argument("gate/target mismatch");
  }
  const std::size_t gdim = std::size_t{1} << targets.size();
  const auto bits = target_bits(targets, total_qubits);
  std::size_t tmask = 0;
  for (std::size_t b : bits) tmask |= b;

  Matrix rows(gdim, u.cols());
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & tmask) continue;
    for (std::size_t g = 0; g < gdim; ++g) {
      rows.row(g) = u.row(scatter_gate_index(g, rest, bits));
    }
    rows = (gate * rows).eval();
    for (std::size_t g = 0; g < gdim; ++g) {
      u.row(scatter_gate_index(g, rest, bits)) = rows.row(g);
    }
  }
}

}  // namespace dqc1
