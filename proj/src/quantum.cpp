// Copyright 2026 The qrforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qrc {

bool is_power_of_two(Eigen::Index value) {
  return value > 0 && (value & (value - 1)) == 0;
}

int qubit_count_for_dim(Eigen::Index dim) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  if (n > kMaxQubits) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " exceeds the dense cap of 2^" +
                                std::to_string(kMaxQubits));
  }
  return n;
}

namespace {

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

}  // namespace

PureState::PureState(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)),
      num_qubits_(qubit_count_for_dim(amplitudes_.size())) {
  double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("PureState: squared norm deviates from 1 by " +
                                std::to_string(std::abs(norm2 - 1.0)));
  }
}

PureState PureState::ground(int num_qubits) {
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << num_qubits);
  amps(0) = 1.0;
  return PureState(std::move(amps));
}

Operator::Operator(ComplexMatrix entries) : entries_(std::move(entries)) {
  check_square(entries_, "Operator");
  num_qubits_ = qubit_count_for_dim(entries_.rows());
}

Operator Operator::identity(int num_qubits) {
  Eigen::Index dim = Eigen::Index{1} << num_qubits;
  return Operator(ComplexMatrix::Identity(dim, dim));
}

double Operator::hermiticity_deviation() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_deviation() const {
  ComplexMatrix gram = entries_.adjoint() * entries_;
  return (gram - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  check_square(entries_, "DensityMatrix");
  num_qubits_ = qubit_count_for_dim(entries_.rows());
}

DensityMatrix DensityMatrix::ground_state(int num_qubits) {
  Eigen::Index dim = Eigen::Index{1} << num_qubits;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  Eigen::Index dim = Eigen::Index{1} << num_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Operator tensor_product(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace_first(const DensityMatrix& rho) {
  if (rho.dim() < 4) {
    throw std::invalid_argument(
        "partial_trace_first: need at least two qubits to trace one out");
  }
  const Eigen::Index half = rho.dim() / 2;
  const ComplexMatrix& m = rho.matrix();
  // Qubit 0 is the most significant bit, so its two branches are the
  // diagonal half-blocks of rho.
  ComplexMatrix out = m.topLeftCorner(half, half) + m.bottomRightCorner(half, half);
  return DensityMatrix(std::move(out));
}

Operator pauli_operator(PauliAxis axis, int qubit_index, int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("pauli_operator: qubit count out of range");
  }
  if (qubit_index < 0 || qubit_index >= n) {
    throw std::invalid_argument("pauli_operator: qubit index " +
                                std::to_string(qubit_index) + " out of range for n=" +
                                std::to_string(n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << bit_position(qubit_index, n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (axis == PauliAxis::Z) {
      out(b, b) = (b & mask) ? -1.0 : 1.0;
    } else {
      out(b ^ mask, b) = 1.0;
    }
  }
  return Operator(std::move(out));
}

double expectation(const DensityMatrix& rho, const Operator& obs) {
  if (rho.dim() != obs.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  // Tr(O rho) = sum_{r,k} O(r,k) rho(k,r)
  Complex trace = obs.matrix().cwiseProduct(rho.matrix().transpose()).sum();
  return trace.real();
}

DensityDiagnostics validate_density(const DensityMatrix& rho) {
  DensityDiagnostics diag;
  const ComplexMatrix& m = rho.matrix();
  diag.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  diag.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();

  ComplexMatrix symmetrized = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized,
                                                      Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = solver.eigenvalues().minCoeff();

  diag.trace_ok = diag.trace_deviation <= kTraceTol;
  diag.hermitian_ok = diag.hermiticity_deviation <= kHermitianTol;
  diag.positive_ok = diag.min_eigenvalue >= kEigenvalueFloor;
  return diag;
}

}  // namespace qrc
