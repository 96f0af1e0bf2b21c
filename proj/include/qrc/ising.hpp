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

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qrc/quantum.hpp"

namespace qrc {

// Symmetric inter-qubit couplings J with zero diagonal and entries in [0, 1].
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Eigen::MatrixXd values);

  static CouplingMatrix zero(int n);

  const Eigen::MatrixXd& values() const { return values_; }
  int n() const { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

// Fully connected transverse-field Ising system: pairwise XX couplings plus
// per-qubit Z fields, all in units with hbar = 1.
class HamiltonianSpec {
 public:
  HamiltonianSpec(CouplingMatrix couplings, Eigen::VectorXd fields);

  // Uniform field h on every qubit.
  static HamiltonianSpec uniform_field(CouplingMatrix couplings, double h);

  const CouplingMatrix& couplings() const { return couplings_; }
  const Eigen::VectorXd& fields() const { return fields_; }
  int n() const { return couplings_.n(); }

 private:
  CouplingMatrix couplings_;
  Eigen::VectorXd fields_;
};

// Fills the strict upper triangle with n(n-1)/2 independent Beta(alpha, beta)
// draws, mirrored to the lower triangle. Identical seeds give identical
// matrices on every platform (see Rng).
CouplingMatrix sample_couplings(int n, double alpha, double beta,
                                std::uint64_t seed);

// H = sum_{i<j} J_ij X_i X_j + sum_i h_i Z_i, each unordered pair once.
Operator build_hamiltonian(const HamiltonianSpec& spec);

// JSON form: {"n": 4, "h": 0.5, "seed": 1, "alpha": 0.9, "beta": 0.9} to
// sample couplings, or {"n": 4, "h": 0.5, "J": [[...], ...]} to pin them.
// "h" may be a scalar or an n-vector.
void to_json(nlohmann::json& j, const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_spec_from_json(const nlohmann::json& j);

}  // namespace qrc
