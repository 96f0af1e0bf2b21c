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

// Command-line front end. Exit codes: 0 success, 1 usage, 2 data error,
// 3 numerical error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrc/errors.hpp"
#include "qrc/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum-reservoir time-series forecaster"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config file");
    sub->add_option("--seed", seed, "master seed (overrides the config file)");
    sub->add_option("--out", out_dir, "output directory (overrides the config file)");
  };

  CLI::App* run =
      app.add_subcommand("run", "Forecast the configured series with the quantum reservoir");
  add_common(run);

  CLI::App* compare = app.add_subcommand(
      "compare", "Benchmark the quantum reservoir against the classical baseline");
  add_common(compare);
  std::vector<std::string> externals;
  compare->add_option("--external", externals,
                      "extra prediction CSVs (step,truth,prediction) to rank alongside");

  CLI::App* export_qasm = app.add_subcommand(
      "export-qasm", "Emit the OpenQASM 2.0 replay of the reservoir loop");
  add_common(export_qasm);

  CLI::App* synth = app.add_subcommand("synth", "Generate a benchmark series CSV");
  add_common(synth);
  std::string synth_kind = "sum_of_sines";
  int synth_length = 244;
  CLI::Option* kind_opt =
      synth->add_option("--kind", synth_kind, "series shape")
          ->check(CLI::IsMember({"sine", "sum_of_sines", "ramp"}));
  CLI::Option* length_opt = synth->add_option("--length", synth_length, "sample count")
                                ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    qrc::ExperimentConfig config =
        config_path.empty() ? qrc::default_experiment_config(seed.value_or(42))
                            : qrc::load_experiment_config(config_path, seed);
    if (!out_dir.empty()) {
      config.out_dir = out_dir;
    }
    if (synth->parsed()) {
      config.data.kind = qrc::DataConfig::Kind::Synthetic;
      if (kind_opt->count() > 0) {
        config.data.synthetic.kind = qrc::synthetic_kind_from_string(synth_kind);
      }
      if (length_opt->count() > 0) {
        config.data.synthetic.length = synth_length;
      }
      return qrc::cmd_synth(config);
    }
    if (run->parsed()) {
      return qrc::cmd_run(config);
    }
    if (compare->parsed()) {
      return qrc::cmd_compare(config, externals);
    }
    if (export_qasm->parsed()) {
      return qrc::cmd_export_qasm(config);
    }
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const qrc::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const qrc::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
