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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qrc/evolve.hpp"
#include "qrc/ising.hpp"
#include "qrc/quantum.hpp"

namespace qrc {

enum class EvolutionMode { Exact, Trotter };
enum class MeasurementMode { Exact, Shots };

struct ReservoirConfig {
  int n = 4;
  double h = 0.5;
  double alpha = 0.9;
  double beta = 0.9;
  std::uint64_t coupling_seed = 1;
  double tau = 1.0;
  int kappa = 10;
  EvolutionMode evolution_mode = EvolutionMode::Exact;
  MeasurementMode measurement_mode = MeasurementMode::Exact;
  int shots = 1024;
  std::uint64_t shot_seed = 1;
  int washout = 70;
};

void to_json(nlohmann::json& j, const ReservoirConfig& config);
ReservoirConfig reservoir_config_from_json(const nlohmann::json& j);

// Couplings sampled from (coupling_seed, alpha, beta), uniform field h.
HamiltonianSpec hamiltonian_spec(const ReservoirConfig& config);

// Measured <Z_i> rows plus a trailing bias column fixed at one.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  Eigen::Index feature_count() const { return values_.cols() - 1; }

  std::string to_csv() const;

 private:
  Eigen::MatrixXd values_;
};

// e(t) = 2 arcsin(sqrt(u)), the RotY angle that prepares
// sqrt(1-u)|0> + sqrt(u)|1> from |0>.
double encode_angle(double u);

// Replaces qubit 0 by the input state for u while the remaining qubits keep
// their marginal: |psi_u><psi_u| (x) Tr_1[rho].
DensityMatrix inject(const DensityMatrix& rho, double u);

// Component i is <Z_i>; expectation-only readout, rho is not modified.
Eigen::VectorXd measure_features_exact(const DensityMatrix& rho);

// Draws `shots` basis states from diag(rho) (negatives clipped, total mass
// renormalized) and averages the +/-1 bit values; one sample set serves all
// n observables. Deterministic per seed.
Eigen::VectorXd measure_features_shots(const DensityMatrix& rho, int shots,
                                       std::uint64_t seed);

// Per-config evolution backend: a precomputed exact propagator or a
// prebuilt Trotter circuit, applied once per reservoir step.
class Evolver {
 public:
  explicit Evolver(const ReservoirConfig& config);

  DensityMatrix step(const DensityMatrix& rho) const;
  const GateCircuit& step_circuit() const;

 private:
  EvolutionMode mode_;
  std::optional<Operator> propagator_;
  std::optional<GateCircuit> circuit_;
};

struct ReservoirResult {
  FeatureMatrix features;
  DensityMatrix final_state;
};

// Called after each step's evolution with the step index and current state.
using StepObserver = std::function<void(int, const DensityMatrix&)>;

// The driver loop: starting from |0...0> (or `initial` when given), each
// timestep injects u(t), evolves for tau and measures the Z features. Rows
// before the washout are discarded and the bias column is appended.
ReservoirResult run_reservoir(const std::vector<double>& series,
                              const ReservoirConfig& config,
                              std::optional<DensityMatrix> initial = {},
                              const StepObserver& observer = {});

}  // namespace qrc
