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

#include "qrc/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

// 17 significant digits round-trip any IEEE double exactly through stod.
std::string format_angle(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

void emit_gate(std::ostream& out, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::Hadamard:
      out << "h q[" << gate.target << "];\n";
      break;
    case GateKind::RotZ:
      out << "rz(" << format_angle(gate.angle) << ") q[" << gate.target << "];\n";
      break;
    case GateKind::RotY:
      out << "ry(" << format_angle(gate.angle) << ") q[" << gate.target << "];\n";
      break;
    case GateKind::Cnot:
      out << "cx q[" << gate.control << "],q[" << gate.target << "];\n";
      break;
    case GateKind::Reset:
      out << "reset q[" << gate.target << "];\n";
      break;
    case GateKind::StatePrep:
      // OpenQASM 2.0 has no state-preparation primitive; emit the
      // reset + ry decomposition it stands for.
      out << "reset q[" << gate.target << "];\n";
      out << "ry(" << format_angle(gate.angle) << ") q[" << gate.target << "];\n";
      break;
  }
}

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

// Parses a register reference of the form q[<index>].
int parse_qubit_ref(const std::string& token) {
  std::string t = trim(token);
  if (t.size() < 4 || t[0] != 'q' || t[1] != '[' || t.back() != ']') {
    throw DataError("qasm: malformed qubit reference '" + t + "'");
  }
  std::size_t consumed = 0;
  int index = 0;
  try {
    index = std::stoi(t.substr(2, t.size() - 3), &consumed);
  } catch (const std::exception&) {
    throw DataError("qasm: malformed qubit index in '" + t + "'");
  }
  if (consumed != t.size() - 3 || index < 0) {
    throw DataError("qasm: malformed qubit index in '" + t + "'");
  }
  return index;
}

double parse_angle(const std::string& token) {
  std::string t = trim(token);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw DataError("qasm: malformed angle '" + t + "'");
  }
  if (consumed != t.size()) {
    throw DataError("qasm: malformed angle '" + t + "'");
  }
  return value;
}

}  // namespace

std::string export_qasm(const GateCircuit& step_circuit,
                        const std::vector<double>& input_angles,
                        const QasmMetadata& meta) {
  if (input_angles.empty()) {
    throw DataError("export_qasm: at least one input angle is required");
  }
  const int n = step_circuit.width();
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "// qrforecast reservoir program\n";
  out << "// config-hash: " << (meta.spec_hash.empty() ? "none" : meta.spec_hash)
      << "\n";
  out << "// tau: " << format_angle(meta.tau) << "\n";
  out << "// kappa: " << meta.kappa << "\n";
  out << "// seed: " << meta.seed << "\n";
  out << "// inputs: " << input_angles.size() << "\n";
  out << "qreg q[" << n << "];\n";
  out << "creg c[" << n << "];\n";
  for (std::size_t t = 0; t < input_angles.size(); ++t) {
    out << "// timestep " << t << "\n";
    out << "reset q[0];\n";
    out << "ry(" << format_angle(input_angles[t]) << ") q[0];\n";
    for (const Gate& gate : step_circuit.gates()) {
      emit_gate(out, gate);
    }
    out << "barrier q;\n";
  }
  for (int qubit = 0; qubit < n; ++qubit) {
    out << "measure q[" << qubit << "] -> c[" << qubit << "];\n";
  }
  return out.str();
}

GateCircuit parse_qasm(const std::string& text) {
  // Strip comments, then split the stream into ';'-terminated statements.
  std::string cleaned;
  cleaned.reserve(text.size());
  {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const std::size_t comment = line.find("//");
      if (comment != std::string::npos) {
        line.erase(comment);
      }
      cleaned += line;
      cleaned += '\n';
    }
  }

  std::vector<std::string> statements;
  std::string current;
  for (char ch : cleaned) {
    if (ch == ';') {
      std::string stmt = trim(current);
      if (!stmt.empty()) {
        statements.push_back(std::move(stmt));
      }
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!trim(current).empty()) {
    throw DataError("qasm: trailing content without statement terminator");
  }
  if (statements.empty() || statements.front() != "OPENQASM 2.0") {
    throw DataError("qasm: missing OPENQASM 2.0 header");
  }

  int width = 0;
  std::vector<Gate> gates;
  for (std::size_t s = 1; s < statements.size(); ++s) {
    const std::string& stmt = statements[s];
    std::istringstream words(stmt);
    std::string head;
    words >> head;

    // Separate a parameter list glued to the gate name, e.g. "rz(0.5)".
    std::string param;
    const std::size_t open = head.find('(');
    if (open != std::string::npos) {
      if (head.back() != ')') {
        throw DataError("qasm: malformed parameter list in '" + stmt + "'");
      }
      param = head.substr(open + 1, head.size() - open - 2);
      head = head.substr(0, open);
    }
    std::string rest;
    std::getline(words, rest);
    rest = trim(rest);

    if (head == "include" || head == "creg" || head == "barrier" ||
        head == "measure") {
      continue;
    }
    if (head == "qreg") {
      if (width != 0) {
        throw DataError("qasm: multiple qreg declarations");
      }
      width = parse_qubit_ref(rest);
      if (width < 1 || width > kMaxQubits) {
        throw DataError("qasm: register width out of range");
      }
      continue;
    }
    if (width == 0) {
      throw DataError("qasm: gate before qreg declaration");
    }

    if (head == "h") {
      gates.push_back(Gate::hadamard(parse_qubit_ref(rest)));
    } else if (head == "rz") {
      gates.push_back(Gate::rot_z(parse_angle(param), parse_qubit_ref(rest)));
    } else if (head == "ry") {
      gates.push_back(Gate::rot_y(parse_angle(param), parse_qubit_ref(rest)));
    } else if (head == "cx") {
      const std::size_t comma = rest.find(',');
      if (comma == std::string::npos) {
        throw DataError("qasm: cx needs two operands in '" + stmt + "'");
      }
      gates.push_back(Gate::cnot(parse_qubit_ref(rest.substr(0, comma)),
                                 parse_qubit_ref(rest.substr(comma + 1))));
    } else if (head == "reset") {
      gates.push_back(Gate::reset(parse_qubit_ref(rest)));
    } else {
      throw DataError("qasm: unsupported statement '" + stmt + "'");
    }
  }

  if (width == 0) {
    throw DataError("qasm: missing qreg declaration");
  }
  GateCircuit circuit(width);
  for (const Gate& gate : gates) {
    circuit.append(gate);
  }
  return circuit;
}

}  // namespace qrc
