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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qrc/data_io.hpp"
#include "qrc/esn.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

// Sub-seed streams derived from the master seed; explicit seeds in a config
// file win over derivation. Kept stable so individual components can be
// reproduced outside the CLI with derive_seed(master, stream).
enum class SeedStream : std::uint64_t {
  Couplings = 1,
  Shots = 2,
  Esn = 3,
  Synthetic = 4,
};

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::SumOfSines;
  int length = 244;
  std::optional<std::uint64_t> seed;  // derived from master when absent
};

struct DataConfig {
  enum class Kind { Synthetic, Plt, Csv };

  Kind kind = Kind::Synthetic;
  SyntheticSpec synthetic;
  std::string path;          // plt or csv input
  std::string window_start;  // plt only; empty = unbounded
  std::string window_end;
  std::string variable = "latitude";  // plt: latitude | longitude
};

struct ExperimentConfig {
  DataConfig data;
  ReservoirConfig reservoir;
  EsnConfig esn;
  int horizon = 30;
  int esn_step = 2;  // teacher re-sync interval for the ESN forecast
  bool open_loop = true;
  bool closed_loop = true;
  std::uint64_t master_seed = 42;
  std::string out_dir = "out";
};

// Defaults with all sub-seeds fanned out from the master seed.
ExperimentConfig default_experiment_config(std::uint64_t master_seed = 42);

nlohmann::json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

// Reads a JSON config file. Absent sub-seeds are derived from the master
// seed (which `master_override` replaces first, when given).
ExperimentConfig load_experiment_config(const std::string& path,
                                        std::optional<std::uint64_t> master_override = {});

// FNV-1a over the canonical JSON dump, as a fixed-width hex string.
std::string config_hash_hex(const ExperimentConfig& config);

// The univariate series an experiment runs on, already in [0, 1].
struct SeriesBundle {
  std::vector<double> values;
  std::string variable;
  double min = 0.0;  // native-unit extrema for denormalization
  double max = 1.0;
};

SeriesBundle load_series(const ExperimentConfig& config);

// QRC pipeline on an in-memory series: reservoir run, pseudoinverse readout
// on the washed-out training rows, then open- and/or closed-loop forecasts
// of the final `horizon` points.
std::vector<PredictionReport> run_qrc(const ExperimentConfig& config,
                                      const SeriesBundle& series);

// ESN baseline on the same series and holdout split.
PredictionReport run_esn(const ExperimentConfig& config,
                         const SeriesBundle& series);

// Subcommand bodies; each writes its artifacts under config.out_dir and
// returns a process exit code. Errors surface as exceptions in library use;
// the CLI maps them to exit codes 2 (data) and 3 (numerical).
int cmd_run(const ExperimentConfig& config);
int cmd_compare(const ExperimentConfig& config,
                const std::vector<std::string>& external_csvs);
int cmd_export_qasm(const ExperimentConfig& config);
int cmd_synth(const ExperimentConfig& config);

}  // namespace qrc
