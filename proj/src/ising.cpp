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

#include "qrc/ising.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrc/rng.hpp"

namespace qrc {

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("CouplingMatrix: matrix must be square");
  }
  const Eigen::Index n = values_.rows();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("CouplingMatrix: size out of range");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) {
      throw std::invalid_argument("CouplingMatrix: diagonal must be zero");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (values_(i, j) != values_(j, i)) {
        throw std::invalid_argument("CouplingMatrix: matrix must be symmetric");
      }
      if (!(values_(i, j) >= 0.0 && values_(i, j) <= 1.0)) {
        throw std::invalid_argument("CouplingMatrix: entries must lie in [0, 1]");
      }
    }
  }
}

CouplingMatrix CouplingMatrix::zero(int n) {
  return CouplingMatrix(Eigen::MatrixXd::Zero(n, n));
}

HamiltonianSpec::HamiltonianSpec(CouplingMatrix couplings, Eigen::VectorXd fields)
    : couplings_(std::move(couplings)), fields_(std::move(fields)) {
  if (fields_.size() != couplings_.n()) {
    throw std::invalid_argument(
        "HamiltonianSpec: field vector length must match coupling matrix size");
  }
  if (!fields_.allFinite()) {
    throw std::invalid_argument("HamiltonianSpec: fields must be finite");
  }
}

HamiltonianSpec HamiltonianSpec::uniform_field(CouplingMatrix couplings, double h) {
  Eigen::VectorXd fields = Eigen::VectorXd::Constant(couplings.n(), h);
  return HamiltonianSpec(std::move(couplings), std::move(fields));
}

CouplingMatrix sample_couplings(int n, double alpha, double beta, std::uint64_t seed) {
  // A single qubit has no pairs to couple; callers that need a coupling-free
  // spec build it from an explicit zero matrix instead.
  if (n < 2 || n > kMaxQubits) {
    throw std::invalid_argument("sample_couplings: qubit count out of range");
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("sample_couplings: shape parameters must be positive");
  }
  Rng rng(seed);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  // Upper triangle in row-major order, mirrored for symmetry. Draw order is
  // part of the reproducibility contract: same seed, same couplings.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.beta(alpha, beta);
      values(i, j) = v;
      values(j, i) = v;
    }
  }
  return CouplingMatrix(std::move(values));
}

Operator build_hamiltonian(const HamiltonianSpec& spec) {
  const int n = spec.n();
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);

  // Field part: sum_i h_i Z_i is diagonal in the computational basis; each
  // basis state contributes +h_i or -h_i depending on bit i.
  for (Eigen::Index b = 0; b < dim; ++b) {
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Index mask = Eigen::Index{1} << bit_position(i, n);
      z += (b & mask) ? -spec.fields()(i) : spec.fields()(i);
    }
    h(b, b) = z;
  }

  // Coupling part: X_i X_j flips bits i and j, so each column b gets one
  // off-diagonal entry per pair at row b ^ mask_i ^ mask_j.
  for (int i = 0; i < n; ++i) {
    const Eigen::Index mi = Eigen::Index{1} << bit_position(i, n);
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Index mj = Eigen::Index{1} << bit_position(j, n);
      const double coupling = spec.couplings()(i, j);
      if (coupling == 0.0) {
        continue;
      }
      for (Eigen::Index b = 0; b < dim; ++b) {
        h(b ^ mi ^ mj, b) += coupling;
      }
    }
  }
  return Operator(std::move(h));
}

void to_json(nlohmann::json& j, const HamiltonianSpec& spec) {
  const int n = spec.n();
  j = nlohmann::json::object();
  j["n"] = n;
  j["h"] = std::vector<double>(spec.fields().data(), spec.fields().data() + n);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          spec.couplings()(i, k);
    }
  }
  j["J"] = rows;
}

HamiltonianSpec hamiltonian_spec_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("hamiltonian spec: qubit count out of range");
  }

  Eigen::VectorXd fields(n);
  const nlohmann::json& hj = j.at("h");
  if (hj.is_number()) {
    fields.setConstant(hj.get<double>());
  } else {
    const auto vec = hj.get<std::vector<double>>();
    if (static_cast<int>(vec.size()) != n) {
      throw std::invalid_argument("hamiltonian spec: field vector length mismatch");
    }
    for (int i = 0; i < n; ++i) {
      fields(i) = vec[static_cast<std::size_t>(i)];
    }
  }

  if (j.contains("J")) {
    const auto rows = j.at("J").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != n) {
      throw std::invalid_argument("hamiltonian spec: coupling matrix size mismatch");
    }
    Eigen::MatrixXd values(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
        throw std::invalid_argument("hamiltonian spec: coupling row length mismatch");
      }
      for (int k = 0; k < n; ++k) {
        values(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      }
    }
    return HamiltonianSpec(CouplingMatrix(std::move(values)), std::move(fields));
  }

  const auto seed = j.at("seed").get<std::uint64_t>();
  const double alpha = j.value("alpha", 0.9);
  const double beta = j.value("beta", 0.9);
  return HamiltonianSpec(sample_couplings(n, alpha, beta, seed), std::move(fields));
}

}  // namespace qrc
