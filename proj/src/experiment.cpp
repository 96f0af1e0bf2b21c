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

#include "qrc/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <utility>

#include <nlohmann/json.hpp>

#include "qrc/errors.hpp"
#include "qrc/qasm.hpp"
#include "qrc/rng.hpp"

namespace qrc {

namespace {

std::uint64_t stream_seed(std::uint64_t master, SeedStream stream) {
  return derive_seed(master, static_cast<std::uint64_t>(stream));
}

std::string data_kind_name(DataConfig::Kind kind) {
  switch (kind) {
    case DataConfig::Kind::Synthetic:
      return "synthetic";
    case DataConfig::Kind::Plt:
      return "plt";
    case DataConfig::Kind::Csv:
      return "csv";
  }
  return "unknown";
}

DataConfig::Kind data_kind_from(const std::string& name) {
  if (name == "synthetic") return DataConfig::Kind::Synthetic;
  if (name == "plt") return DataConfig::Kind::Plt;
  if (name == "csv") return DataConfig::Kind::Csv;
  throw DataError("config: unknown data kind '" + name + "'");
}

void check_experiment(const ExperimentConfig& config) {
  if (config.horizon < 1) {
    throw DataError("config: horizon must be >= 1");
  }
  if (config.esn_step < 1) {
    throw DataError("config: esn_step must be >= 1");
  }
  if (config.data.kind == DataConfig::Kind::Plt) {
    if (config.data.variable != "latitude" && config.data.variable != "longitude") {
      throw DataError("config: variable must be latitude or longitude");
    }
    if (config.data.path.empty()) {
      throw DataError("config: plt input needs a path");
    }
  }
  if (config.data.kind == DataConfig::Kind::Csv && config.data.path.empty()) {
    throw DataError("config: csv input needs a path");
  }
}

}  // namespace

ExperimentConfig default_experiment_config(std::uint64_t master_seed) {
  ExperimentConfig config;
  config.master_seed = master_seed;
  config.reservoir.coupling_seed = stream_seed(master_seed, SeedStream::Couplings);
  config.reservoir.shot_seed = stream_seed(master_seed, SeedStream::Shots);
  config.esn.seed = stream_seed(master_seed, SeedStream::Esn);
  return config;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& config) {
  nlohmann::json data;
  data["kind"] = data_kind_name(config.data.kind);
  nlohmann::json synthetic;
  synthetic["kind"] = to_string(config.data.synthetic.kind);
  synthetic["length"] = config.data.synthetic.length;
  if (config.data.synthetic.seed) {
    synthetic["seed"] = *config.data.synthetic.seed;
  }
  data["synthetic"] = synthetic;
  data["path"] = config.data.path;
  data["window_start"] = config.data.window_start;
  data["window_end"] = config.data.window_end;
  data["variable"] = config.data.variable;

  nlohmann::json reservoir;
  to_json(reservoir, config.reservoir);
  nlohmann::json esn;
  to_json(esn, config.esn);

  return nlohmann::json{{"data", data},
                        {"reservoir", reservoir},
                        {"esn", esn},
                        {"horizon", config.horizon},
                        {"esn_step", config.esn_step},
                        {"open_loop", config.open_loop},
                        {"closed_loop", config.closed_loop},
                        {"master_seed", config.master_seed},
                        {"out_dir", config.out_dir}};
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  const std::uint64_t master = j.value("master_seed", std::uint64_t{42});
  ExperimentConfig config = default_experiment_config(master);

  if (j.contains("data")) {
    const nlohmann::json& dj = j.at("data");
    config.data.kind = data_kind_from(dj.value("kind", data_kind_name(config.data.kind)));
    if (dj.contains("synthetic")) {
      const nlohmann::json& sj = dj.at("synthetic");
      config.data.synthetic.kind = synthetic_kind_from_string(
          sj.value("kind", to_string(config.data.synthetic.kind)));
      config.data.synthetic.length = sj.value("length", config.data.synthetic.length);
      if (sj.contains("seed")) {
        config.data.synthetic.seed = sj.at("seed").get<std::uint64_t>();
      }
      if (config.data.synthetic.length < 1) {
        throw DataError("config: synthetic length must be >= 1");
      }
    }
    config.data.path = dj.value("path", config.data.path);
    config.data.window_start = dj.value("window_start", config.data.window_start);
    config.data.window_end = dj.value("window_end", config.data.window_end);
    config.data.variable = dj.value("variable", config.data.variable);
  }

  // Sub-configs are merged over the master-derived defaults so a config file
  // can pin any individual seed while the rest stay fanned out.
  if (j.contains("reservoir")) {
    nlohmann::json base;
    to_json(base, config.reservoir);
    base.update(j.at("reservoir"));
    config.reservoir = reservoir_config_from_json(base);
  }
  if (j.contains("esn")) {
    nlohmann::json base;
    to_json(base, config.esn);
    base.update(j.at("esn"));
    config.esn = esn_config_from_json(base);
  }

  config.horizon = j.value("horizon", config.horizon);
  config.esn_step = j.value("esn_step", config.esn_step);
  config.open_loop = j.value("open_loop", config.open_loop);
  config.closed_loop = j.value("closed_loop", config.closed_loop);
  config.out_dir = j.value("out_dir", config.out_dir);
  check_experiment(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        std::optional<std::uint64_t> master_override) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open config '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config '" + path + "': " + e.what());
  }
  if (master_override) {
    j["master_seed"] = *master_override;
  }
  try {
    return experiment_config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config '" + path + "': " + e.what());
  }
}

std::string config_hash_hex(const ExperimentConfig& config) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  const std::string dump = experiment_config_to_json(config).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

SeriesBundle load_series(const ExperimentConfig& config) {
  check_experiment(config);
  SeriesBundle bundle;
  switch (config.data.kind) {
    case DataConfig::Kind::Synthetic: {
      const std::uint64_t seed = config.data.synthetic.seed
                                     ? *config.data.synthetic.seed
                                     : stream_seed(config.master_seed,
                                                   SeedStream::Synthetic);
      bundle.values = gen_synthetic(config.data.synthetic.kind,
                                    config.data.synthetic.length, seed);
      bundle.variable = to_string(config.data.synthetic.kind);
      bundle.min = 0.0;
      bundle.max = 1.0;
      break;
    }
    case DataConfig::Kind::Plt: {
      TrajectorySeries track = parse_plt_file(config.data.path);
      if (!config.data.window_start.empty() || !config.data.window_end.empty()) {
        const std::int64_t start =
            config.data.window_start.empty()
                ? std::numeric_limits<std::int64_t>::min()
                : parse_timestamp(config.data.window_start);
        const std::int64_t end = config.data.window_end.empty()
                                     ? std::numeric_limits<std::int64_t>::max()
                                     : parse_timestamp(config.data.window_end);
        track = select_window(track, start, end);
      }
      const std::vector<double>& column =
          config.data.variable == "latitude" ? track.latitude : track.longitude;
      NormalizedSeries normalized = normalize_minmax(column, config.data.variable);
      bundle.values = std::move(normalized.values);
      bundle.variable = normalized.variable;
      bundle.min = normalized.min;
      bundle.max = normalized.max;
      break;
    }
    case DataConfig::Kind::Csv: {
      NormalizedSeries normalized =
          normalize_minmax(read_series_csv(config.data.path), "value");
      bundle.values = std::move(normalized.values);
      bundle.variable = normalized.variable;
      bundle.min = normalized.min;
      bundle.max = normalized.max;
      break;
    }
  }
  return bundle;
}

std::vector<PredictionReport> run_qrc(const ExperimentConfig& config,
                                      const SeriesBundle& series) {
  check_experiment(config);
  if (!config.open_loop && !config.closed_loop) {
    throw DataError("run_qrc: no prediction mode enabled");
  }
  const int total = static_cast<int>(series.values.size());
  const int horizon = config.horizon;
  const int washout = config.reservoir.washout;
  const int start = total - horizon;  // first forecast index
  // Training needs at least one (state, next value) pair after the washout
  // and before the holdout.
  if (start < washout + 2) {
    throw DataError("run_qrc: series of length " + std::to_string(total) +
                    " is too short for washout " + std::to_string(washout) +
                    " plus horizon " + std::to_string(horizon));
  }

  // One reservoir pass over the full series. The state just before the
  // holdout is captured on the fly so the closed-loop forecast can branch
  // from exactly the last teacher-forced state.
  DensityMatrix checkpoint = DensityMatrix::ground_state(config.reservoir.n);
  const StepObserver observer = [&](int t, const DensityMatrix& rho) {
    if (t == start - 1) {
      checkpoint = rho;
    }
  };
  const ReservoirResult result =
      run_reservoir(series.values, config.reservoir, {}, observer);
  const Eigen::MatrixXd& all_rows = result.features.values();

  // Row r of the feature matrix belongs to timestep t = r + washout and
  // predicts series value t + 1.
  const Eigen::Index train_rows = start - 1 - washout;
  std::vector<double> train_targets(
      series.values.begin() + washout + 1,
      series.values.begin() + washout + 1 + train_rows);
  const ReadoutWeights weights =
      train_readout(FeatureMatrix(all_rows.topRows(train_rows)), train_targets);

  std::vector<double> holdout(series.values.begin() + start, series.values.end());
  std::vector<PredictionReport> reports;

  if (config.open_loop) {
    const FeatureMatrix test_rows(all_rows.middleRows(train_rows, horizon));
    reports.push_back(make_report("qrc", series.variable, PredictionMode::OpenLoop,
                                  predict_open_loop(test_rows, weights), holdout));
  }
  if (config.closed_loop) {
    reports.push_back(make_report(
        "qrc", series.variable, PredictionMode::ClosedLoop,
        predict_closed_loop(checkpoint, weights, config.reservoir, horizon),
        holdout));
  }
  return reports;
}

PredictionReport run_esn(const ExperimentConfig& config, const SeriesBundle& series) {
  check_experiment(config);
  EsnReservoir reservoir(config.esn);
  PredictionReport report =
      esn_forecast(reservoir, series.values, config.reservoir.washout,
                   config.esn_step, config.horizon);
  report.variable = series.variable;
  return report;
}

namespace {

void write_summary_json(const ExperimentConfig& config,
                        const std::vector<PredictionReport>& reports,
                        const std::filesystem::path& path) {
  nlohmann::json summary;
  summary["config"] = experiment_config_to_json(config);
  summary["config_hash"] = config_hash_hex(config);
  nlohmann::json rows = nlohmann::json::array();
  for (const PredictionReport& report : reports) {
    rows.push_back(nlohmann::json{{"method", report.method},
                                  {"variable", report.variable},
                                  {"mode", to_string(report.mode)},
                                  {"horizon", report.horizon},
                                  {"mse", report.mse}});
  }
  summary["reports"] = rows;
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path.string() + "' for writing");
  }
  out << summary.dump(2) << '\n';
}

void print_reports(const std::vector<PredictionReport>& reports) {
  for (const PredictionReport& report : reports) {
    std::printf("%-8s %-12s %-11s horizon=%-3d mse=%.6e\n", report.method.c_str(),
                report.variable.c_str(), to_string(report.mode).c_str(),
                report.horizon, report.mse);
  }
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
  const std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw DataError("cannot create output directory '" + dir.string() + "': " +
                    ec.message());
  }
  return dir;
}

}  // namespace

int cmd_run(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_out_dir(config);
  const SeriesBundle series = load_series(config);
  write_series_csv(series.values, (dir / "series.csv").string());
  const std::vector<PredictionReport> reports = run_qrc(config, series);
  write_report(reports, (dir / "report.csv").string());
  write_summary_json(config, reports, dir / "summary.json");
  print_reports(reports);
  return 0;
}

int cmd_compare(const ExperimentConfig& config,
                const std::vector<std::string>& external_csvs) {
  const std::filesystem::path dir = prepare_out_dir(config);
  const SeriesBundle series = load_series(config);
  write_series_csv(series.values, (dir / "series.csv").string());

  std::vector<PredictionReport> reports = run_qrc(config, series);
  reports.push_back(run_esn(config, series));
  for (const std::string& path : external_csvs) {
    const std::string method = std::filesystem::path(path).stem().string();
    PredictionReport external = read_prediction_csv(path, method, series.variable);
    if (external.horizon != config.horizon) {
      throw DataError("external predictions '" + path + "' have " +
                      std::to_string(external.horizon) + " rows, expected " +
                      std::to_string(config.horizon));
    }
    reports.push_back(std::move(external));
  }

  write_report(reports, (dir / "report.csv").string());
  write_summary_json(config, reports, dir / "summary.json");
  print_reports(reports);
  return 0;
}

int cmd_export_qasm(const ExperimentConfig& config) {
  if (config.reservoir.evolution_mode == EvolutionMode::Exact) {
    throw DataError(
        "export-qasm requires trotter evolution mode: exact evolution has no "
        "gate circuit to export");
  }
  const std::filesystem::path dir = prepare_out_dir(config);
  const SeriesBundle series = load_series(config);

  const Evolver evolver(config.reservoir);
  std::vector<double> angles;
  angles.reserve(series.values.size());
  for (double u : series.values) {
    angles.push_back(encode_angle(u));
  }
  QasmMetadata meta;
  meta.spec_hash = config_hash_hex(config);
  meta.tau = config.reservoir.tau;
  meta.kappa = config.reservoir.kappa;
  meta.seed = config.reservoir.coupling_seed;

  // Each timestep becomes a standalone program that replays the input history
  // up to that step and then measures, the shape a gate-based device expects:
  // one job per feature row, no state carried between jobs.
  nlohmann::json manifest;
  manifest["config_hash"] = meta.spec_hash;
  manifest["master_seed"] = config.master_seed;
  manifest["coupling_seed"] = config.reservoir.coupling_seed;
  manifest["shot_seed"] = config.reservoir.shot_seed;
  manifest["tau"] = config.reservoir.tau;
  manifest["kappa"] = config.reservoir.kappa;
  manifest["timesteps"] = angles.size();
  manifest["angles"] = angles;
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t t = 0; t < angles.size(); ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%04zu.qasm", t);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) {
      throw DataError("cannot open '" + path.string() + "' for writing");
    }
    const std::vector<double> prefix(angles.begin(),
                                     angles.begin() + static_cast<long>(t) + 1);
    out << export_qasm(evolver.step_circuit(), prefix, meta);
    if (!out) {
      throw DataError("failed writing '" + path.string() + "'");
    }
    files.push_back(name);
  }
  manifest["files"] = files;

  const std::filesystem::path manifest_path = dir / "manifest.json";
  std::ofstream mout(manifest_path);
  if (!mout) {
    throw DataError("cannot open '" + manifest_path.string() + "' for writing");
  }
  mout << manifest.dump(2) << "\n";
  if (!mout) {
    throw DataError("failed writing '" + manifest_path.string() + "'");
  }
  std::printf("wrote %zu QASM programs + manifest to %s (%zu gates per step)\n",
              angles.size(), dir.string().c_str(), evolver.step_circuit().size());
  return 0;
}

int cmd_synth(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_out_dir(config);
  const std::uint64_t seed =
      config.data.synthetic.seed
          ? *config.data.synthetic.seed
          : derive_seed(config.master_seed,
                        static_cast<std::uint64_t>(SeedStream::Synthetic));
  const std::vector<double> values = gen_synthetic(config.data.synthetic.kind,
                                                   config.data.synthetic.length, seed);
  const std::filesystem::path path =
      dir / (to_string(config.data.synthetic.kind) + ".csv");
  write_series_csv(values, path.string());
  std::printf("wrote %s (%zu values)\n", path.string().c_str(), values.size());
  return 0;
}

}  // namespace qrc
