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

#include <vector>

#include "qrc/ising.hpp"
#include "qrc/quantum.hpp"

namespace qrc {

// Gate alphabet. Rotation convention: RotZ(theta) = exp(-i theta Z / 2),
// RotY(theta) = exp(-i theta Y / 2). Reset replaces the target qubit by |0>
// while keeping the marginal of the others; StatePrep is Reset followed by
// RotY(angle).
enum class GateKind { Hadamard, RotZ, RotY, Cnot, Reset, StatePrep };

struct Gate {
  GateKind kind = GateKind::Hadamard;
  int target = 0;
  int control = -1;  // CNOT only
  double angle = 0.0;

  static Gate hadamard(int target) { return {GateKind::Hadamard, target, -1, 0.0}; }
  static Gate rot_z(double angle, int target) { return {GateKind::RotZ, target, -1, angle}; }
  static Gate rot_y(double angle, int target) { return {GateKind::RotY, target, -1, angle}; }
  static Gate cnot(int control, int target) { return {GateKind::Cnot, target, control, 0.0}; }
  static Gate reset(int target) { return {GateKind::Reset, target, -1, 0.0}; }
  static Gate state_prep(double angle, int target) { return {GateKind::StatePrep, target, -1, angle}; }
};

// Ordered gate list over a fixed-width qubit register.
class GateCircuit {
 public:
  explicit GateCircuit(int width);

  void append(const Gate& gate);
  void append(const GateCircuit& other);

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  bool empty() const { return gates_.empty(); }
  std::size_t size() const { return gates_.size(); }

 private:
  int width_;
  std::vector<Gate> gates_;
};

// One evolution interval tau split into kappa first-order Trotter slices.
struct TrotterPlan {
  double tau = 1.0;
  int kappa = 10;
};

// U = exp(-i H tau) through a Hermitian eigendecomposition of H.
// The result is unitary to working precision.
Operator exact_propagator(const Operator& hamiltonian, double tau);

// U rho U^dag; trace and spectrum are preserved for unitary U.
DensityMatrix conjugate_evolve(const DensityMatrix& rho, const Operator& unitary);

// Kappa repetitions of one slice. Each slice applies RotZ(2 h_i tau/kappa)
// on every qubit, then for each pair i<j in row-major order the XX kernel:
// Hadamards on i and j, CNOT(i->j), RotZ(2 J_ij tau/kappa) on j, CNOT(i->j),
// Hadamards on i and j. Slice ordering is part of the output contract since
// different orderings give different (equally valid) finite-kappa results.
GateCircuit build_trotter_circuit(const HamiltonianSpec& spec, const TrotterPlan& plan);

// Applies gates left to right. Unitary gates act as U rho U^dag on the
// affected qubits; Reset and StatePrep are the channels described above.
DensityMatrix apply_circuit(const DensityMatrix& rho, const GateCircuit& circuit);

}  // namespace qrc
