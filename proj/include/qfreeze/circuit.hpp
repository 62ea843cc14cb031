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
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfreeze/ising.hpp"

namespace qfreeze {

enum class GateKind { H, RX, RZ, CNOT, SWAP, MEASURE };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

enum class ParamKind { Gamma, Beta };

/// gamma[layer] or beta[layer].
struct ParamRef {
  ParamKind kind;
  std::size_t layer;

  friend auto operator<=>(const ParamRef&, const ParamRef&) = default;
};

std::string to_string(const ParamRef& ref);
ParamRef param_ref_from_string(const std::string& name);

/// Rotation angle. Symbolic when `param` is set (angle = scale * param);
/// bound when `value` holds the angle in radians.
struct Angle {
  double scale = 1.0;
  std::optional<ParamRef> param;
  std::optional<double> value;

  bool is_bound() const noexcept { return !param.has_value() && value.has_value(); }

  friend bool operator==(const Angle&, const Angle&) = default;
};

/// Hamiltonian term a rotation implements: linear when j is empty.
struct TermId {
  std::size_t i = 0;
  std::optional<std::size_t> j;

  friend auto operator<=>(const TermId&, const TermId&) = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::array<std::size_t, 2> qubits{};
  std::optional<Angle> angle;
  /// Set on problem rotations (RZ) so compiled circuits can be re-bound.
  std::optional<TermId> term;

  std::size_t arity() const noexcept {
    return kind == GateKind::CNOT || kind == GateKind::SWAP ? 2 : 1;
  }
  bool is_two_qubit() const noexcept { return arity() == 2; }

  static Gate h(std::size_t q);
  static Gate measure(std::size_t q);
  static Gate rx(std::size_t q, Angle angle);
  static Gate rz(std::size_t q, Angle angle, std::optional<TermId> term = std::nullopt);
  static Gate cnot(std::size_t control, std::size_t target);
  static Gate swap(std::size_t a, std::size_t b);

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  std::size_t num_qubits = 0;
  /// QAOA layer count p (0 for circuits that are not QAOA circuits).
  std::size_t layers = 0;
  std::vector<Gate> gates;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// QAOA angles, one gamma and one beta per layer (radians).
struct ParamPoint {
  std::vector<double> gammas;
  std::vector<double> betas;
};

/// p-layer QAOA circuit:
///   H on every qubit;
///   per layer l: RZ(2 h_i gamma_l) per linear entry (ascending i), then
///   CNOT(i,j) RZ_j(2 J_ij gamma_l) CNOT(i,j) per coupling (ascending (i,j)),
///   then RX(2 beta_l) on every qubit;
///   MEASURE on every qubit.
/// The offset never reaches the circuit.
Circuit build_qaoa(const IsingModel& model, std::size_t p);

/// Critical-path length with one time step per gate on each qubit it touches.
std::size_t logical_depth(const Circuit& circuit);

struct GateCensus {
  std::size_t cnot = 0;
  std::size_t rz = 0;
  std::size_t rx = 0;
  std::size_t h = 0;
  std::size_t swap = 0;
  std::size_t measure = 0;

  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

GateCensus gate_census(const Circuit& circuit);

/// Replaces every symbolic angle by scale * gamma/beta[layer].
Circuit bind_parameters(const Circuit& circuit, const ParamPoint& point);

}  // namespace qfreeze
