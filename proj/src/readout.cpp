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

#include "qrc/readout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

#include "qrc/errors.hpp"
#include "qrc/rng.hpp"

namespace qrc {

ReadoutWeights train_readout(const FeatureMatrix& features,
                             const std::vector<double>& targets) {
  if (static_cast<Eigen::Index>(targets.size()) != features.rows()) {
    throw std::invalid_argument("train_readout: row/target count mismatch");
  }
  Eigen::VectorXd y(features.rows());
  for (Eigen::Index r = 0; r < y.size(); ++r) {
    y(r) = targets[static_cast<std::size_t>(r)];
  }
  if (!y.allFinite()) {
    throw std::invalid_argument("train_readout: targets must be finite");
  }

  // Minimum-norm least squares through the thin SVD. Singular values below
  // 1e-10 of the largest are treated as zero, which keeps the fit stable
  // when feature columns are (nearly) linearly dependent.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(features.values(),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd weights = svd.solve(y);
  if (!weights.allFinite()) {
    throw NumericError("train_readout: least-squares solve produced non-finite weights");
  }
  return ReadoutWeights{std::move(weights)};
}

std::vector<double> predict_open_loop(const FeatureMatrix& features,
                                      const ReadoutWeights& weights) {
  if (features.cols() != weights.values.size()) {
    throw std::invalid_argument("predict_open_loop: weight length mismatch");
  }
  Eigen::VectorXd out = features.values() * weights.values;
  return std::vector<double>(out.data(), out.data() + out.size());
}

std::vector<double> predict_closed_loop(const DensityMatrix& rho,
                                        const ReadoutWeights& weights,
                                        const ReservoirConfig& config,
                                        int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("predict_closed_loop: horizon must be >= 1");
  }
  if (weights.values.size() != config.n + 1) {
    throw std::invalid_argument("predict_closed_loop: weight length mismatch");
  }
  const Evolver evolver(config);
  DensityMatrix state = rho;
  std::vector<double> predictions;
  predictions.reserve(static_cast<std::size_t>(horizon));

  for (int k = 0; k < horizon; ++k) {
    Eigen::VectorXd x =
        config.measurement_mode == MeasurementMode::Exact
            ? measure_features_exact(state)
            : measure_features_shots(
                  state, config.shots,
                  derive_seed(config.shot_seed, 0x100000 + static_cast<std::uint64_t>(k)));
    double value = weights.values.head(config.n).dot(x) + weights.values(config.n);
    if (!std::isfinite(value)) {
      throw NumericError("predict_closed_loop: prediction diverged");
    }
    // Predictions are clamped to the encoder's domain before both reporting
    // and re-injection, so every emitted value is itself a valid next input.
    const double fed = std::clamp(value, 0.0, 1.0);
    predictions.push_back(fed);
    state = inject(state, fed);
    state = evolver.step(state);
  }
  return predictions;
}

double mse(const std::vector<double>& predicted, const std::vector<double>& truth) {
  if (predicted.size() != truth.size() || predicted.empty()) {
    throw std::invalid_argument("mse: length mismatch or empty input");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - truth[i];
    acc += d * d;
  }
  return acc / static_cast<double>(predicted.size());
}

std::string to_string(PredictionMode mode) {
  return mode == PredictionMode::OpenLoop ? "open_loop" : "closed_loop";
}

PredictionReport make_report(std::string method, std::string variable,
                             PredictionMode mode,
                             std::vector<double> predictions,
                             std::vector<double> targets) {
  PredictionReport report;
  report.method = std::move(method);
  report.variable = std::move(variable);
  report.mode = mode;
  report.horizon = static_cast<int>(predictions.size());
  report.mse = mse(predictions, targets);
  report.predictions = std::move(predictions);
  report.targets = std::move(targets);
  return report;
}

}  // namespace qrc
