// SPDX-License-Identifier: Apache-2.0
#include "dqc1/states.hpp"

#include <cmath>

namespace dqc1 {

namespace {

void check_register(int n) {
  if (n < 1) throw std::invalid_argument("need at least one mixed qubit");
  if (n + 1 > max_register_qubits()) {
    throw validation_error("register too large");
  }
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("invalid mixing parameter");
  }
}

}  // namespace

void validate_density(const DensityMatrix& state) {
  if (state.qubits < 1 ||
      static_cast<std::size_t>(state.rho.rows()) != state.dim() ||
      state.rho.rows() != state.rho.cols()) {
    throw validation_error("malformed density matrix");
  }
  if (!is_hermitian(state.rho)) throw validation_error("not Hermitian");
  if (std::abs(state.rho.trace().real() - 1.0) > kEigenTol ||
      std::abs(state.rho.trace().imag()) > kEigenTol) {
    throw validation_error("trace is not one");
  }
  const SortedSpectrum s = hermitian_spectrum(state.rho);
  if (s.values(s.size() - 1) < -kEigenTol) {
    throw validation_error("not positive semidefinite");
  }
}

DensityMatrix dqc1_state(int n, double alpha) {
  check_register(n);
  check_alpha(alpha);
  const std::size_t half = std::size_t{1} << n;
  const double top = (2.0 - alpha) / static_cast<double>(2 * half);
  const double bottom = alpha / static_cast<double>(2 * half);
  DensityMatrix state{n + 1, Matrix::Zero(2 * half, 2 * half)};
  for (std::size_t i = 0; i < half; ++i) {
    state.rho(i, i) = top;
    state.rho(half + i, half + i) = bottom;
  }
  return state;
}

SortedSpectrum dqc1_spectrum(int n, double alpha) {
  check_register(n);
  check_alpha(alpha);
  const std::size_t half = std::size_t{1} << n;
  RealVector values(2 * half);
  const double top = (2.0 - alpha) / static_cast<double>(2 * half);
  const double bottom = alpha / static_cast<double>(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    values(i) = top;
    values(half + i) = bottom;
  }
  return SortedSpectrum{std::move(values)};
}

DensityMatrix tau_state(int n) {
  check_register(n);
  const std::size_t dim = std::size_t{1} << (n + 1);
  const double weight = 1.0 / static_cast<double>(dim - 2);
  DensityMatrix state{n + 1, Matrix::Zero(dim, dim)};
  for (std::size_t i = 1; i + 1 < dim; ++i) state.rho(i, i) = weight;
  return state;
}

DensityMatrix depolarize(const DensityMatrix& state, double alpha) {
  check_alpha(alpha);
  const double uniform = alpha / static_cast<double>(state.dim());
  DensityMatrix out{state.qubits, (1.0 - alpha) * state.rho};
  out.rho.diagonal().array() += uniform;
  return out;
}

double purity(const DensityMatrix& state) {
  return (state.rho * state.rho).trace().real();
}

SortedSpectrum state_spectrum(const DensityMatrix& state) {
  SortedSpectrum s = hermitian_spectrum(state.rho);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s.values(i) < -kEigenTol) throw validation_error("invalid spectrum");
    if (s.values(i) < 0.0) s.values(i) = 0.0;
  }
  return s;
}

}  // namespace dqc1
