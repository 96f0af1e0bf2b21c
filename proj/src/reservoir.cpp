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

#include "qrc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qrc/errors.hpp"
#include "qrc/rng.hpp"

namespace qrc {

namespace {

std::string mode_name(EvolutionMode mode) {
  return mode == EvolutionMode::Exact ? "exact" : "trotter";
}

std::string mode_name(MeasurementMode mode) {
  return mode == MeasurementMode::Exact ? "exact" : "shots";
}

EvolutionMode evolution_mode_from(const std::string& name) {
  if (name == "exact") return EvolutionMode::Exact;
  if (name == "trotter") return EvolutionMode::Trotter;
  throw DataError("reservoir config: unknown evolution mode '" + name + "'");
}

MeasurementMode measurement_mode_from(const std::string& name) {
  if (name == "exact") return MeasurementMode::Exact;
  if (name == "shots") return MeasurementMode::Shots;
  throw DataError("reservoir config: unknown measurement mode '" + name + "'");
}

void check_config(const ReservoirConfig& config) {
  if (config.n < 2 || config.n > kMaxQubits) {
    throw DataError("reservoir config: qubit count out of range");
  }
  if (!std::isfinite(config.h)) {
    throw DataError("reservoir config: field strength must be finite");
  }
  if (!(config.alpha > 0.0) || !(config.beta > 0.0)) {
    throw DataError("reservoir config: coupling shape parameters must be positive");
  }
  if (!(config.tau > 0.0) || !std::isfinite(config.tau)) {
    throw DataError("reservoir config: tau must be positive and finite");
  }
  if (config.kappa < 1) {
    throw DataError("reservoir config: kappa must be >= 1");
  }
  if (config.shots < 1) {
    throw DataError("reservoir config: shots must be >= 1");
  }
  if (config.washout < 0) {
    throw DataError("reservoir config: washout must be >= 0");
  }
}

}  // namespace

void to_json(nlohmann::json& j, const ReservoirConfig& config) {
  j = nlohmann::json{{"n", config.n},
                     {"h", config.h},
                     {"alpha", config.alpha},
                     {"beta", config.beta},
                     {"coupling_seed", config.coupling_seed},
                     {"tau", config.tau},
                     {"kappa", config.kappa},
                     {"evolution_mode", mode_name(config.evolution_mode)},
                     {"measurement_mode", mode_name(config.measurement_mode)},
                     {"shots", config.shots},
                     {"shot_seed", config.shot_seed},
                     {"washout", config.washout}};
}

ReservoirConfig reservoir_config_from_json(const nlohmann::json& j) {
  ReservoirConfig config;
  config.n = j.value("n", config.n);
  config.h = j.value("h", config.h);
  config.alpha = j.value("alpha", config.alpha);
  config.beta = j.value("beta", config.beta);
  config.coupling_seed = j.value("coupling_seed", config.coupling_seed);
  config.tau = j.value("tau", config.tau);
  config.kappa = j.value("kappa", config.kappa);
  if (j.contains("evolution_mode")) {
    config.evolution_mode = evolution_mode_from(j.at("evolution_mode").get<std::string>());
  }
  if (j.contains("measurement_mode")) {
    config.measurement_mode =
        measurement_mode_from(j.at("measurement_mode").get<std::string>());
  }
  config.shots = j.value("shots", config.shots);
  config.shot_seed = j.value("shot_seed", config.shot_seed);
  config.washout = j.value("washout", config.washout);
  check_config(config);
  return config;
}

HamiltonianSpec hamiltonian_spec(const ReservoirConfig& config) {
  check_config(config);
  return HamiltonianSpec::uniform_field(
      sample_couplings(config.n, config.alpha, config.beta, config.coupling_seed),
      config.h);
}

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  // A bias-only matrix (single column of ones) is a legitimate degenerate
  // design: the readout then fits a constant.
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("FeatureMatrix: need at least one row");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("FeatureMatrix: entries must be finite");
  }
  for (Eigen::Index r = 0; r < values_.rows(); ++r) {
    if (values_(r, values_.cols() - 1) != 1.0) {
      throw std::invalid_argument("FeatureMatrix: bias column must be one");
    }
  }
}

std::string FeatureMatrix::to_csv() const {
  std::ostringstream out;
  for (Eigen::Index c = 0; c + 1 < cols(); ++c) {
    out << 'z' << c << ',';
  }
  out << "bias\n";
  char buf[64];
  for (Eigen::Index r = 0; r < rows(); ++r) {
    for (Eigen::Index c = 0; c < cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", values_(r, c));
      out << buf << (c + 1 < cols() ? ',' : '\n');
    }
  }
  return out.str();
}

double encode_angle(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DataError("encode_angle: input must lie in [0, 1]");
  }
  return 2.0 * std::asin(std::sqrt(u));
}

DensityMatrix inject(const DensityMatrix& rho, double u) {
  const double theta = encode_angle(u);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix input(2, 2);
  input << c * c, c * s, s * c, s * s;
  if (rho.num_qubits() == 1) {
    return DensityMatrix(std::move(input));
  }
  return tensor_product(DensityMatrix(std::move(input)), partial_trace_first(rho));
}

Eigen::VectorXd measure_features_exact(const DensityMatrix& rho) {
  const int n = rho.num_qubits();
  Eigen::VectorXd features(n);
  // Z_i is diagonal, so Tr[Z_i rho] reduces to a signed sum of diag(rho).
  for (int i = 0; i < n; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << bit_position(i, n);
    double acc = 0.0;
    for (Eigen::Index b = 0; b < rho.dim(); ++b) {
      const double p = rho.matrix()(b, b).real();
      acc += (b & mask) ? -p : p;
    }
    features(i) = acc;
  }
  return features;
}

Eigen::VectorXd measure_features_shots(const DensityMatrix& rho, int shots,
                                       std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("measure_features_shots: shots must be >= 1");
  }
  const Eigen::Index dim = rho.dim();
  Eigen::VectorXd probs(dim);
  double negative_mass = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    double p = rho.matrix()(b, b).real();
    if (p < 0.0) {
      negative_mass -= p;
      p = 0.0;
    }
    probs(b) = p;
  }
  if (negative_mass > 1e-6) {
    throw NumericError(
        "measure_features_shots: density diagonal has negative mass " +
        std::to_string(negative_mass));
  }
  const double total = probs.sum();
  if (!(total > 0.0)) {
    throw NumericError("measure_features_shots: density diagonal sums to zero");
  }
  probs /= total;

  Eigen::VectorXd cdf(dim);
  double running = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    running += probs(b);
    cdf(b) = running;
  }
  cdf(dim - 1) = 1.0;  // guard against accumulated rounding

  // One batch of basis-state draws serves every observable, mirroring
  // hardware where each shot yields a full bit string.
  std::vector<int> counts(static_cast<std::size_t>(dim), 0);
  Rng rng(seed);
  for (int shot = 0; shot < shots; ++shot) {
    const double x = rng.uniform();
    const auto it = std::upper_bound(cdf.data(), cdf.data() + dim, x);
    Eigen::Index b = it - cdf.data();
    if (b >= dim) {
      b = dim - 1;
    }
    ++counts[static_cast<std::size_t>(b)];
  }

  const int n = rho.num_qubits();
  Eigen::VectorXd features(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << bit_position(i, n);
    long sum = 0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      sum += (b & mask) ? -counts[static_cast<std::size_t>(b)]
                        : counts[static_cast<std::size_t>(b)];
    }
    features(i) = static_cast<double>(sum) / static_cast<double>(shots);
  }
  return features;
}

Evolver::Evolver(const ReservoirConfig& config) : mode_(config.evolution_mode) {
  check_config(config);
  const HamiltonianSpec spec = hamiltonian_spec(config);
  // The circuit is always available so gate-level export works in either
  // mode; the dense propagator is only built when it will be applied.
  circuit_ = build_trotter_circuit(spec, TrotterPlan{config.tau, config.kappa});
  if (mode_ == EvolutionMode::Exact) {
    propagator_ = exact_propagator(build_hamiltonian(spec), config.tau);
  }
}

DensityMatrix Evolver::step(const DensityMatrix& rho) const {
  if (mode_ == EvolutionMode::Exact) {
    return conjugate_evolve(rho, *propagator_);
  }
  return apply_circuit(rho, *circuit_);
}

const GateCircuit& Evolver::step_circuit() const { return *circuit_; }

ReservoirResult run_reservoir(const std::vector<double>& series,
                              const ReservoirConfig& config,
                              std::optional<DensityMatrix> initial,
                              const StepObserver& observer) {
  check_config(config);
  const int steps = static_cast<int>(series.size());
  if (steps == 0) {
    throw DataError("run_reservoir: input series is empty");
  }
  if (config.washout >= steps) {
    throw DataError("run_reservoir: washout " + std::to_string(config.washout) +
                    " leaves no rows from a series of length " +
                    std::to_string(steps));
  }

  DensityMatrix rho = initial ? std::move(*initial)
                              : DensityMatrix::ground_state(config.n);
  if (rho.num_qubits() != config.n) {
    throw std::invalid_argument("run_reservoir: initial state width mismatch");
  }

  const Evolver evolver(config);
  const Eigen::Index rows = steps - config.washout;
  Eigen::MatrixXd features(rows, config.n + 1);

  for (int t = 0; t < steps; ++t) {
    rho = inject(rho, series[static_cast<std::size_t>(t)]);
    rho = evolver.step(rho);
    if (observer) {
      observer(t, rho);
    }
    if (t >= config.washout) {
      const Eigen::VectorXd x =
          config.measurement_mode == MeasurementMode::Exact
              ? measure_features_exact(rho)
              : measure_features_shots(
                    rho, config.shots,
                    derive_seed(config.shot_seed, static_cast<std::uint64_t>(t)));
      features.row(t - config.washout).head(config.n) = x.transpose();
      features(t - config.washout, config.n) = 1.0;
    }
  }
  return ReservoirResult{FeatureMatrix(std::move(features)), std::move(rho)};
}

}  // namespace qrc
