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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrc/reservoir.hpp"

namespace qrc {

// Linear output layer: one weight per feature plus the trailing bias weight.
struct ReadoutWeights {
  Eigen::VectorXd values;
};

// Minimum-norm least-squares fit of features * W = targets through the
// Moore-Penrose pseudoinverse (SVD with a relative singular-value cutoff).
ReadoutWeights train_readout(const FeatureMatrix& features,
                             const std::vector<double>& targets);

// Elementwise features * W.
std::vector<double> predict_open_loop(const FeatureMatrix& features,
                                      const ReadoutWeights& weights);

// Autoregressive forecast from the final reservoir state: measure, read out,
// clamp to [0, 1], re-inject, evolve; repeated `horizon` times.
std::vector<double> predict_closed_loop(const DensityMatrix& rho,
                                        const ReadoutWeights& weights,
                                        const ReservoirConfig& config,
                                        int horizon);

double mse(const std::vector<double>& predicted,
           const std::vector<double>& truth);

enum class PredictionMode { OpenLoop, ClosedLoop };

std::string to_string(PredictionMode mode);

struct PredictionReport {
  std::string method;    // "qrc", "esn", or an external label
  std::string variable;  // "latitude", "longitude", "value", ...
  PredictionMode mode = PredictionMode::OpenLoop;
  int horizon = 0;
  std::vector<double> predictions;
  std::vector<double> targets;
  double mse = 0.0;
};

PredictionReport make_report(std::string method, std::string variable,
                             PredictionMode mode,
                             std::vector<double> predictions,
                             std::vector<double> targets);

}  // namespace qrc
