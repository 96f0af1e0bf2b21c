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

#include "qrc/esn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

constexpr int kMaxUnits = 10000;

void check_config(const EsnConfig& config) {
  if (config.units < 1 || config.units > kMaxUnits) {
    throw DataError("esn config: units out of range");
  }
  if (!(config.spectral_radius > 0.0) || !std::isfinite(config.spectral_radius)) {
    throw DataError("esn config: spectral radius must be positive and finite");
  }
  if (!(config.sparsity >= 0.0 && config.sparsity < 1.0)) {
    throw DataError("esn config: sparsity must lie in [0, 1)");
  }
  if (!(config.noise >= 0.0) || !std::isfinite(config.noise)) {
    throw DataError("esn config: noise must be non-negative and finite");
  }
  if (!std::isfinite(config.input_scale)) {
    throw DataError("esn config: input scale must be finite");
  }
}

}  // namespace

void to_json(nlohmann::json& j, const EsnConfig& config) {
  j = nlohmann::json{{"units", config.units},
                     {"spectral_radius", config.spectral_radius},
                     {"sparsity", config.sparsity},
                     {"noise", config.noise},
                     {"input_scale", config.input_scale},
                     {"seed", config.seed}};
}

EsnConfig esn_config_from_json(const nlohmann::json& j) {
  EsnConfig config;
  config.units = j.value("units", config.units);
  config.spectral_radius = j.value("spectral_radius", config.spectral_radius);
  config.sparsity = j.value("sparsity", config.sparsity);
  config.noise = j.value("noise", config.noise);
  config.input_scale = j.value("input_scale", config.input_scale);
  config.seed = j.value("seed", config.seed);
  check_config(config);
  return config;
}

double spectral_radius(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw std::invalid_argument("spectral_radius: matrix must be square");
  }
  if (!matrix.allFinite()) {
    throw std::invalid_argument("spectral_radius: matrix must be finite");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectral_radius: eigenvalue computation failed");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

EsnReservoir::EsnReservoir(const EsnConfig& config)
    : config_(config),
      state_(Eigen::VectorXd::Zero(config.units)),
      noise_rng_(derive_seed(config.seed, 1)) {
  check_config(config);
  const int n = config.units;
  const long total = static_cast<long>(n) * n;
  const long zeros = std::lround(config.sparsity * static_cast<double>(total));

  // A draw whose recurrent matrix has zero spectral radius cannot be rescaled
  // to the target; such degenerate draws are retried with an incremented seed
  // (at most three times) before giving up.
  double radius = 0.0;
  for (std::uint64_t attempt = 0; attempt < 4 && !(radius > 0.0); ++attempt) {
    Rng init_rng(config.seed + attempt);

    // Draw order is pinned: recurrent entries row-major, then input weights,
    // then the sparsity mask. Same seed, same reservoir.
    recurrent_.resize(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        recurrent_(r, c) = init_rng.uniform(-0.5, 0.5);
      }
    }
    input_weights_.resize(n);
    for (int r = 0; r < n; ++r) {
      input_weights_(r) = init_rng.uniform(-1.0, 1.0) * config.input_scale;
    }

    // Exactly round(sparsity * units^2) entries are zeroed, chosen by a
    // partial Fisher-Yates draw so the realized zero fraction matches the
    // request instead of merely matching it in expectation.
    std::vector<long> indices(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) {
      indices[static_cast<std::size_t>(i)] = i;
    }
    for (long k = 0; k < zeros; ++k) {
      const long pick =
          k + static_cast<long>(init_rng.uniform() * static_cast<double>(total - k));
      std::swap(indices[static_cast<std::size_t>(k)],
                indices[static_cast<std::size_t>(std::min(pick, total - 1))]);
      const long idx = indices[static_cast<std::size_t>(k)];
      recurrent_(idx / n, idx % n) = 0.0;
    }

    radius = spectral_radius(recurrent_);
  }
  if (!(radius > 0.0)) {
    throw NumericError(
        "EsnReservoir: recurrent matrix spectral radius stayed zero after 3 "
        "seed retries; cannot rescale");
  }
  recurrent_ *= config.spectral_radius / radius;
}

const Eigen::VectorXd& EsnReservoir::step(double u) {
  if (!std::isfinite(u)) {
    throw std::invalid_argument("EsnReservoir::step: input must be finite");
  }
  state_ = (recurrent_ * state_ + input_weights_ * u).array().tanh();
  if (config_.noise != 0.0) {
    for (int i = 0; i < config_.units; ++i) {
      state_(i) += config_.noise * (noise_rng_.uniform() - 0.5);
    }
  }
  return state_;
}

void EsnReservoir::reset_state() { state_.setZero(); }

void EsnReservoir::set_state(const Eigen::VectorXd& state) {
  if (state.size() != config_.units) {
    throw std::invalid_argument("EsnReservoir::set_state: size mismatch");
  }
  state_ = state;
}

PredictionReport esn_forecast(EsnReservoir& reservoir,
                              const std::vector<double>& series, int washout,
                              int step, int total_horizon) {
  const int total = static_cast<int>(series.size());
  if (step < 1) {
    throw std::invalid_argument("esn_forecast: chunk step must be >= 1");
  }
  if (total_horizon < 1 || total_horizon >= total) {
    throw DataError("esn_forecast: horizon must leave a training region");
  }
  if (total_horizon % step != 0) {
    throw DataError("esn_forecast: horizon must be divisible by the chunk step");
  }
  if (washout < 0) {
    throw DataError("esn_forecast: washout must be >= 0");
  }
  const int start = total - total_horizon;  // first forecast index
  const int train_rows = (start - 1) - washout;
  if (train_rows < 1) {
    throw DataError("esn_forecast: washout leaves no training rows");
  }

  const int units = reservoir.config().units;
  reservoir.reset_state();

  // Teacher-forced drive over the training region; washed-out states are
  // regressed against the next true value.
  Eigen::MatrixXd design(train_rows, units + 1);
  std::vector<double> labels(static_cast<std::size_t>(train_rows));
  for (int t = 0; t + 1 < start; ++t) {
    const Eigen::VectorXd& s = reservoir.step(series[static_cast<std::size_t>(t)]);
    if (t >= washout) {
      design.row(t - washout).head(units) = s.transpose();
      design(t - washout, units) = 1.0;
      labels[static_cast<std::size_t>(t - washout)] =
          series[static_cast<std::size_t>(t + 1)];
    }
  }
  const ReadoutWeights weights = train_readout(FeatureMatrix(design), labels);
  const auto apply = [&](const Eigen::VectorXd& s) {
    return weights.values.head(units).dot(s) + weights.values(units);
  };

  // Bring the state up to the last pre-forecast input.
  reservoir.step(series[static_cast<std::size_t>(start - 1)]);

  // Forecast in chunks: inside a chunk each prediction is fed back as the
  // next input; between chunks the state is rewound and re-driven with the
  // true values, mimicking a deployment where measurements arrive after
  // every chunk.
  std::vector<double> predictions;
  predictions.reserve(static_cast<std::size_t>(total_horizon));
  int s = start;
  while (s < total) {
    const int chunk = step;
    const Eigen::VectorXd synced = reservoir.state();
    for (int k = 0; k < chunk; ++k) {
      const double p = apply(reservoir.state());
      predictions.push_back(p);
      if (k + 1 < chunk) {
        reservoir.step(p);
      }
    }
    reservoir.set_state(synced);
    for (int k = 0; k < chunk; ++k) {
      reservoir.step(series[static_cast<std::size_t>(s + k)]);
    }
    s += chunk;
  }

  std::vector<double> targets(series.begin() + start, series.end());
  return make_report("esn", "value",
                     step > 1 ? PredictionMode::ClosedLoop : PredictionMode::OpenLoop,
                     std::move(predictions), std::move(targets));
}

}  // namespace qrc
