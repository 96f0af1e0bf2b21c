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

#include "qrc/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

namespace qrc {

GateCircuit::GateCircuit(int width) : width_(width) {
  if (width < 1 || width > kMaxQubits) {
    throw std::invalid_argument("GateCircuit: width out of range");
  }
}

void GateCircuit::append(const Gate& gate) {
  if (gate.target < 0 || gate.target >= width_) {
    throw std::invalid_argument("GateCircuit: gate target out of range");
  }
  if (!std::isfinite(gate.angle)) {
    throw std::invalid_argument("GateCircuit: gate angle must be finite");
  }
  if (gate.kind == GateKind::Cnot) {
    if (gate.control < 0 || gate.control >= width_) {
      throw std::invalid_argument("GateCircuit: CNOT control out of range");
    }
    if (gate.control == gate.target) {
      throw std::invalid_argument("GateCircuit: CNOT control equals target");
    }
  }
  gates_.push_back(gate);
}

void GateCircuit::append(const GateCircuit& other) {
  if (other.width_ != width_) {
    throw std::invalid_argument("GateCircuit: width mismatch on append");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Operator exact_propagator(const Operator& hamiltonian, double tau) {
  if (!hamiltonian.is_hermitian()) {
    throw std::invalid_argument("exact_propagator: Hamiltonian is not Hermitian");
  }
  if (!std::isfinite(tau)) {
    throw std::invalid_argument("exact_propagator: tau must be finite");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hamiltonian.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_propagator: eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const ComplexMatrix& evecs = solver.eigenvectors();
  ComplexVector phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -evals(k) * tau));
  }
  ComplexMatrix unitary = evecs * phases.asDiagonal() * evecs.adjoint();
  return Operator(std::move(unitary));
}

DensityMatrix conjugate_evolve(const DensityMatrix& rho, const Operator& unitary) {
  if (rho.dim() != unitary.dim()) {
    throw std::invalid_argument("conjugate_evolve: dimension mismatch");
  }
  return DensityMatrix(unitary.matrix() * rho.matrix() * unitary.matrix().adjoint());
}

GateCircuit build_trotter_circuit(const HamiltonianSpec& spec, const TrotterPlan& plan) {
  if (plan.kappa < 1) {
    throw std::invalid_argument("build_trotter_circuit: kappa must be >= 1");
  }
  if (!(plan.tau > 0.0) || !std::isfinite(plan.tau)) {
    throw std::invalid_argument("build_trotter_circuit: tau must be positive and finite");
  }
  const int n = spec.n();
  const double dt = plan.tau / static_cast<double>(plan.kappa);
  const CouplingMatrix& couplings = spec.couplings();

  GateCircuit circuit(n);
  for (int slice = 0; slice < plan.kappa; ++slice) {
    // exp(-i h_i Z dt) = RotZ(2 h_i dt) on each qubit.
    for (int i = 0; i < n; ++i) {
      circuit.append(Gate::rot_z(2.0 * spec.fields()(i) * dt, i));
    }
    // exp(-i J_ij X_i X_j dt): basis change to Z with Hadamards, parity onto
    // qubit j with a CNOT, RotZ(2 J_ij dt) on j, then undo. Pairs run in
    // row-major order over the upper triangle; every pair is emitted so the
    // circuit shape is independent of the coupling draw.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        circuit.append(Gate::hadamard(i));
        circuit.append(Gate::hadamard(j));
        circuit.append(Gate::cnot(i, j));
        circuit.append(Gate::rot_z(2.0 * couplings(i, j) * dt, j));
        circuit.append(Gate::cnot(i, j));
        circuit.append(Gate::hadamard(i));
        circuit.append(Gate::hadamard(j));
      }
    }
  }
  return circuit;
}

namespace {

// rho <- (U_q otimes I) rho (U_q otimes I)^dag for a 2x2 unitary u acting on
// one qubit, done as a row pass then a column pass over index pairs that
// differ in that qubit's bit.
void apply_single_qubit(ComplexMatrix& m, const Complex u[2][2], Eigen::Index mask) {
  const Eigen::Index dim = m.rows();
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
      if (r0 & mask) {
        continue;
      }
      const Eigen::Index r1 = r0 | mask;
      const Complex a = m(r0, c);
      const Complex b = m(r1, c);
      m(r0, c) = u[0][0] * a + u[0][1] * b;
      m(r1, c) = u[1][0] * a + u[1][1] * b;
    }
  }
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
      if (c0 & mask) {
        continue;
      }
      const Eigen::Index c1 = c0 | mask;
      const Complex a = m(r, c0);
      const Complex b = m(r, c1);
      m(r, c0) = a * std::conj(u[0][0]) + b * std::conj(u[0][1]);
      m(r, c1) = a * std::conj(u[1][0]) + b * std::conj(u[1][1]);
    }
  }
}

// CNOT is the involutive permutation b -> b ^ target_mask whenever the
// control bit is set, applied to rows then columns.
void apply_cnot(ComplexMatrix& m, Eigen::Index control_mask, Eigen::Index target_mask) {
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    if ((r & control_mask) && !(r & target_mask)) {
      m.row(r).swap(m.row(r | target_mask));
    }
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if ((c & control_mask) && !(c & target_mask)) {
      m.col(c).swap(m.col(c | target_mask));
    }
  }
}

// Reset channel K0 rho K0^dag + K1 rho K1^dag with K0 = |0><0|, K1 = |0><1|
// on the target qubit: the bit-0 block absorbs the bit-1 block's diagonal
// contribution and everything involving the set bit is cleared.
void apply_reset(ComplexMatrix& m, Eigen::Index mask) {
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
    if (r0 & mask) {
      continue;
    }
    for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
      if (c0 & mask) {
        continue;
      }
      m(r0, c0) += m(r0 | mask, c0 | mask);
    }
  }
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((r & mask) || (c & mask)) {
        m(r, c) = 0.0;
      }
    }
  }
}

void apply_gate(ComplexMatrix& m, const Gate& gate, int n) {
  const Eigen::Index target_mask = Eigen::Index{1} << bit_position(gate.target, n);
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  switch (gate.kind) {
    case GateKind::Hadamard: {
      const Complex u[2][2] = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
      apply_single_qubit(m, u, target_mask);
      break;
    }
    case GateKind::RotZ: {
      const Complex phase = std::exp(Complex(0.0, -gate.angle / 2.0));
      const Complex u[2][2] = {{phase, 0.0}, {0.0, std::conj(phase)}};
      apply_single_qubit(m, u, target_mask);
      break;
    }
    case GateKind::RotY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      const Complex u[2][2] = {{c, -s}, {s, c}};
      apply_single_qubit(m, u, target_mask);
      break;
    }
    case GateKind::Cnot: {
      const Eigen::Index control_mask = Eigen::Index{1}
                                        << bit_position(gate.control, n);
      apply_cnot(m, control_mask, target_mask);
      break;
    }
    case GateKind::Reset: {
      apply_reset(m, target_mask);
      break;
    }
    case GateKind::StatePrep: {
      apply_reset(m, target_mask);
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      const Complex u[2][2] = {{c, -s}, {s, c}};
      apply_single_qubit(m, u, target_mask);
      break;
    }
  }
}

}  // namespace

DensityMatrix apply_circuit(const DensityMatrix& rho, const GateCircuit& circuit) {
  if (rho.num_qubits() != circuit.width()) {
    throw std::invalid_argument("apply_circuit: register width mismatch");
  }
  ComplexMatrix m = rho.matrix();
  for (const Gate& gate : circuit.gates()) {
    apply_gate(m, gate, circuit.width());
  }
  return DensityMatrix(std::move(m));
}

}  // namespace qrc
