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
#include <string>
#include <vector>

#include "qrc/evolve.hpp"

namespace qrc {

// Provenance recorded in the comment header of every exported program.
struct QasmMetadata {
  std::string spec_hash;
  double tau = 0.0;
  int kappa = 0;
  std::uint64_t seed = 0;
};

// Emits an OpenQASM 2.0 program that replays the reservoir loop for the
// given input angles: per angle, reset of qubit 0, ry(angle) on qubit 0 and
// one copy of the step circuit; a terminal z-basis measurement of every
// qubit closes the program. Angles are printed with 17 significant digits
// so a reparse reproduces them bit-exactly.
std::string export_qasm(const GateCircuit& step_circuit,
                        const std::vector<double>& input_angles,
                        const QasmMetadata& meta = {});

// Reads back the gate subset this project emits (h, rz, ry, cx, reset;
// barrier and measure lines are skipped). Throws DataError on anything else.
GateCircuit parse_qasm(const std::string& text);

}  // namespace qrc
