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

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Dense storage only: density matrices are capped at 1024 x 1024.
inline constexpr int kMaxQubits = 10;

// Default tolerances for state validation.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigenvalueFloor = -1e-8;

bool is_power_of_two(Eigen::Index value);

// log2 of a power-of-two dimension; throws std::invalid_argument otherwise.
int qubit_count_for_dim(Eigen::Index dim);

// Qubit 0 is the most significant bit of the computational-basis index, so
// it occupies the leftmost slot of every tensor product built here.
inline int bit_position(int qubit, int num_qubits) {
  return num_qubits - 1 - qubit;
}

// Normalized pure state on one or more qubits.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  static PureState ground(int num_qubits);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  int num_qubits() const { return num_qubits_; }

 private:
  ComplexVector amplitudes_;
  int num_qubits_;
};

// Square complex matrix on a power-of-two dimension. Used for observables,
// Hamiltonians and propagators; validity for a given role is checked by the
// operations that require it.
class Operator {
 public:
  explicit Operator(ComplexMatrix entries);

  static Operator identity(int num_qubits);

  const ComplexMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  int num_qubits() const { return num_qubits_; }

  double hermiticity_deviation() const;
  double unitarity_deviation() const;
  bool is_hermitian(double tol = kHermitianTol) const {
    return hermiticity_deviation() <= tol;
  }
  bool is_unitary(double tol = kHermitianTol) const {
    return unitarity_deviation() <= tol;
  }

 private:
  ComplexMatrix entries_;
  int num_qubits_;
};

// Reservoir state rho. Construction checks structure only (square,
// power-of-two dimension within the dense cap); the physical invariants
// (Hermitian, unit trace, positive semidefinite) are reported by
// validate_density so callers can inspect near-miss states.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix ground_state(int num_qubits);
  static DensityMatrix maximally_mixed(int num_qubits);
  static DensityMatrix from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  int num_qubits() const { return num_qubits_; }

 private:
  ComplexMatrix entries_;
  int num_qubits_;
};

enum class PauliAxis { X, Z };

// Kronecker product with `a` on the most significant qubit positions.
Operator tensor_product(const Operator& a, const Operator& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Traces out qubit 0 (the most significant qubit). Requires dim >= 4.
DensityMatrix partial_trace_first(const DensityMatrix& rho);

// I (x) ... (x) sigma (x) ... (x) I with the single-qubit Pauli at
// qubit_index of an n-qubit register.
Operator pauli_operator(PauliAxis axis, int qubit_index, int n);

// Tr(obs * rho). The observable must be Hermitian; the imaginary residue of
// the trace (at most rounding noise for valid inputs) is discarded.
double expectation(const DensityMatrix& rho, const Operator& obs);

struct DensityDiagnostics {
  double trace_deviation = 0.0;        // |Tr(rho) - 1|
  double hermiticity_deviation = 0.0;  // max elementwise |rho - rho^dag|
  double min_eigenvalue = 0.0;
  bool trace_ok = false;
  bool hermitian_ok = false;
  bool positive_ok = false;

  bool ok() const { return trace_ok && hermitian_ok && positive_ok; }
};

// Pure report; never throws. Eigenvalues are taken from the symmetrized
// matrix (rho + rho^dag) / 2 so the Hermitian solver sees exact input.
DensityDiagnostics validate_density(const DensityMatrix& rho);

}  // namespace qrc
