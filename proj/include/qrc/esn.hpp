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

#include "qrc/readout.hpp"
#include "qrc/rng.hpp"

namespace qrc {

struct EsnConfig {
  int units = 500;
  double spectral_radius = 0.95;
  double sparsity = 0.1;   // fraction of recurrent weights forced to zero
  double noise = 0.001;    // per-unit additive uniform noise amplitude
  double input_scale = 1.0;
  std::uint64_t seed = 1;
};

void to_json(nlohmann::json& j, const EsnConfig& config);
EsnConfig esn_config_from_json(const nlohmann::json& j);

// Largest eigenvalue modulus, computed from the full (QR-based) eigenvalue
// decomposition. Random recurrent matrices routinely have a complex-conjugate
// dominant pair, so a plain power iteration does not converge on them.
double spectral_radius(const Eigen::MatrixXd& matrix);

// Classical reservoir: fixed random recurrent weights rescaled to the
// configured spectral radius, tanh state update with additive input and
// uniform noise. Sequential state machine; one run per instance.
class EsnReservoir {
 public:
  explicit EsnReservoir(const EsnConfig& config);

  // state <- tanh(W state + W_in u) + noise * (zeta - 0.5)
  const Eigen::VectorXd& step(double u);

  void reset_state();

  // Restores a state previously captured through state(); the noise stream
  // is not rewound.
  void set_state(const Eigen::VectorXd& state);

  const EsnConfig& config() const { return config_; }
  const Eigen::MatrixXd& recurrent() const { return recurrent_; }
  const Eigen::VectorXd& input_weights() const { return input_weights_; }
  const Eigen::VectorXd& state() const { return state_; }

 private:
  EsnConfig config_;
  Eigen::MatrixXd recurrent_;
  Eigen::VectorXd input_weights_;
  Eigen::VectorXd state_;
  Rng noise_rng_;
};

// Drives the reservoir through the training region, fits the shared
// pseudoinverse readout on washed-out states against one-step-ahead targets,
// then forecasts the final `total_horizon` points in chunks of `step`:
// predictions are fed back within a chunk, true values re-synchronize the
// state between chunks.
PredictionReport esn_forecast(EsnReservoir& reservoir,
                              const std::vector<double>& series, int washout,
                              int step, int total_horizon);

}  // namespace qrc
