// Copyright 2026 The qfreeze Authors
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

#include "qfreeze/circuit.hpp"

#include <algorithm>

#include "qfreeze/errors.hpp"

namespace qfreeze {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::RX:
      return "RX";
    case GateKind::RZ:
      return "RZ";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::SWAP:
      return "SWAP";
    case GateKind::MEASURE:
      return "MEASURE";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
  for (const auto kind : {GateKind::H, GateKind::RX, GateKind::RZ, GateKind::CNOT,
                          GateKind::SWAP, GateKind::MEASURE}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParameterError("unknown gate kind '" + name + "'");
}

std::string to_string(const ParamRef& ref) {
  return (ref.kind == ParamKind::Gamma ? "gamma" : "beta") + std::to_string(ref.layer);
}

ParamRef param_ref_from_string(const std::string& name) {
  const auto parse_layer = [&](std::size_t prefix) {
    const std::string digits = name.substr(prefix);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ParameterError("bad parameter name '" + name + "'");
    }
    return static_cast<std::size_t>(std::stoull(digits));
  };
  if (name.rfind("gamma", 0) == 0) return {ParamKind::Gamma, parse_layer(5)};
  if (name.rfind("beta", 0) == 0) return {ParamKind::Beta, parse_layer(4)};
  throw ParameterError("bad parameter name '" + name + "'");
}

Gate Gate::h(std::size_t q) { return {GateKind::H, {q, q}, std::nullopt, std::nullopt}; }

Gate Gate::measure(std::size_t q) {
  return {GateKind::MEASURE, {q, q}, std::nullopt, std::nullopt};
}

Gate Gate::rx(std::size_t q, Angle angle) { return {GateKind::RX, {q, q}, angle, std::nullopt}; }

Gate Gate::rz(std::size_t q, Angle angle, std::optional<TermId> term) {
  return {GateKind::RZ, {q, q}, angle, term};
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
  if (control == target) throw ParameterError("CNOT needs two distinct qubits");
  return {GateKind::CNOT, {control, target}, std::nullopt, std::nullopt};
}

Gate Gate::swap(std::size_t a, std::size_t b) {
  if (a == b) throw ParameterError("SWAP needs two distinct qubits");
  return {GateKind::SWAP, {a, b}, std::nullopt, std::nullopt};
}

Circuit build_qaoa(const IsingModel& model, std::size_t p) {
  if (p == 0) throw ParameterError("QAOA needs at least one layer");
  const std::size_t n = model.num_vars();
  if (n == 0) throw ParameterError("QAOA needs at least one variable");

  Circuit circuit{n, p, {}};
  circuit.gates.reserve(2 * n + p * (n + model.linear().size() + 3 * model.quadratic().size()));
  for (std::size_t q = 0; q < n; ++q) circuit.gates.push_back(Gate::h(q));
  for (std::size_t layer = 0; layer < p; ++layer) {
    const ParamRef gamma{ParamKind::Gamma, layer};
    for (const auto& [i, h] : model.linear()) {
      circuit.gates.push_back(Gate::rz(i, {2.0 * h, gamma, std::nullopt}, TermId{i, {}}));
    }
    for (const auto& [key, coupling] : model.quadratic()) {
      const auto [i, j] = key;
      circuit.gates.push_back(Gate::cnot(i, j));
      circuit.gates.push_back(
          Gate::rz(j, {2.0 * coupling, gamma, std::nullopt}, TermId{i, j}));
      circuit.gates.push_back(Gate::cnot(i, j));
    }
    const ParamRef beta{ParamKind::Beta, layer};
    for (std::size_t q = 0; q < n; ++q) {
      circuit.gates.push_back(Gate::rx(q, {2.0, beta, std::nullopt}));
    }
  }
  for (std::size_t q = 0; q < n; ++q) circuit.gates.push_back(Gate::measure(q));
  return circuit;
}

std::size_t logical_depth(const Circuit& circuit) {
  std::vector<std::size_t> ready(circuit.num_qubits, 0);
  std::size_t depth = 0;
  for (const auto& gate : circuit.gates) {
    const std::size_t a = gate.qubits[0];
    const std::size_t b = gate.is_two_qubit() ? gate.qubits[1] : a;
    const std::size_t finish = std::max(ready.at(a), ready.at(b)) + 1;
    ready[a] = ready[b] = finish;
    depth = std::max(depth, finish);
  }
  return depth;
}

GateCensus gate_census(const Circuit& circuit) {
  GateCensus census;
  for (const auto& gate : circuit.gates) {
    switch (gate.kind) {
      case GateKind::H:
        ++census.h;
        break;
      case GateKind::RX:
        ++census.rx;
        break;
      case GateKind::RZ:
        ++census.rz;
        break;
      case GateKind::CNOT:
        ++census.cnot;
        break;
      case GateKind::SWAP:
        ++census.swap;
        break;
      case GateKind::MEASURE:
        ++census.measure;
        break;
    }
  }
  return census;
}

Circuit bind_parameters(const Circuit& circuit, const ParamPoint& point) {
  if (point.gammas.size() != circuit.layers || point.betas.size() != circuit.layers) {
    throw DimensionError("parameter point has " + std::to_string(point.gammas.size()) + "/" +
                         std::to_string(point.betas.size()) + " angles for a " +
                         std::to_string(circuit.layers) + "-layer circuit");
  }
  Circuit bound = circuit;
  for (auto& gate : bound.gates) {
    if (!gate.angle || !gate.angle->param) continue;
    const ParamRef ref = *gate.angle->param;
    const auto& values = ref.kind == ParamKind::Gamma ? point.gammas : point.betas;
    gate.angle->value = gate.angle->scale * values.at(ref.layer);
    gate.angle->param.reset();
  }
  return bound;
}

}  // namespace qfreeze
