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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qfreeze/circuit.hpp"
#include "qfreeze/ising.hpp"

namespace qfreeze {

/// Physical qubit connectivity of a device. Distances between all pairs are
/// computed at construction (BFS from every node).
class CouplingMap {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  CouplingMap() = default;
  CouplingMap(std::size_t num_physical, std::vector<Edge> edges);

  static CouplingMap grid(std::size_t rows, std::size_t cols);

  std::size_t num_physical() const noexcept { return num_physical_; }
  /// Canonical (a < b), sorted, unique.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t q) const { return adjacency_.at(q); }
  bool adjacent(std::size_t a, std::size_t b) const;
  /// Hop count, or unreachable() when disconnected.
  std::size_t distance(std::size_t a, std::size_t b) const {
    return distance_[a * num_physical_ + b];
  }
  static constexpr std::size_t unreachable() noexcept { return 0xffffffffU; }
  bool connected() const noexcept { return connected_; }
  /// Physical qubits ordered by (degree desc, total distance asc, index asc).
  const std::vector<std::size_t>& centrality_order() const noexcept { return centrality_order_; }

  std::optional<std::pair<std::size_t, std::size_t>> grid_shape() const noexcept {
    return grid_shape_;
  }

 private:
  std::size_t num_physical_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::uint32_t> distance_;
  std::vector<std::size_t> centrality_order_;
  bool connected_ = true;
  std::optional<std::pair<std::size_t, std::size_t>> grid_shape_;
};

/// rows x cols nearest-neighbour grid; qubit (r, c) has index r * cols + c.
CouplingMap grid_map(std::size_t rows, std::size_t cols);

/// Gate latencies in seconds. SWAP costs three CNOTs.
struct GateTimes {
  double cnot = 400e-9;
  double single = 40e-9;
  double measure = 1e-6;
};

struct CompiledMetrics {
  std::size_t cnot_logical = 0;
  std::size_t swap_count = 0;
  std::size_t cnot_from_swaps = 0;
  /// cnot_logical + 3 * swap_count.
  std::size_t cnot_total = 0;
  /// Depth of the SWAP-decomposed circuit.
  std::size_t depth = 0;
  /// duration_estimate of the circuit under default GateTimes.
  double duration_s = 0.0;

  friend bool operator==(const CompiledMetrics&, const CompiledMetrics&) = default;
};

/// A circuit over physical qubits. SWAPs are kept symbolic; decompose_swaps
/// expands them.
struct CompiledCircuit {
  Circuit circuit;
  std::size_t num_logical = 0;
  /// logical -> physical before the first gate.
  std::vector<std::size_t> initial_layout;
  /// logical -> physical after the last gate.
  std::vector<std::size_t> final_layout;
  CompiledMetrics metrics;
};

/// Degree-greedy initial placement of the circuit's interaction graph.
std::vector<std::size_t> initial_layout(const Circuit& circuit, const CouplingMap& map);

/// Places the circuit and inserts SWAPs so every two-qubit gate acts on a
/// coupling edge. A non-adjacent CNOT walks its control along a shortest
/// path towards the target; `seed` only breaks ties between equally short
/// next hops.
CompiledCircuit route(const Circuit& circuit, const CouplingMap& map, std::uint64_t seed);

/// Each SWAP(a,b) becomes CNOT(a,b) CNOT(b,a) CNOT(a,b).
Circuit decompose_swaps(const Circuit& circuit);

/// Critical-path duration of an ASAP schedule with per-kind latencies.
double duration_estimate(const Circuit& circuit, const GateTimes& times);

/// A routed QAOA circuit whose problem rotations can be re-bound to the
/// coefficients of any model with the same term pattern.
struct TemplateExecutable {
  CompiledCircuit compiled;
  /// Gate positions (one per layer) of the rotation implementing each term.
  std::map<TermId, std::vector<std::size_t>> slots;
};

TemplateExecutable compile_template(const IsingModel& model, std::size_t p,
                                    const CouplingMap& map, std::uint64_t seed);

/// Writes 2 * coefficient into every slot. No re-routing; metrics unchanged.
/// Throws IncompatibleTemplateError when the model's linear/quadratic key
/// sets differ from the template's.
CompiledCircuit bind_template(const TemplateExecutable& tmpl, const IsingModel& model);

}  // namespace qfreeze
