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

#include "qfreeze/transpiler.hpp"

#include <algorithm>
#include <tuple>
#include <deque>
#include <limits>
#include <numeric>

#include "qfreeze/errors.hpp"
#include "qfreeze/rng.hpp"

namespace qfreeze {

CouplingMap::CouplingMap(std::size_t num_physical, std::vector<Edge> edges)
    : num_physical_(num_physical), adjacency_(num_physical) {
  for (auto& [a, b] : edges) {
    if (a >= num_physical || b >= num_physical) {
      throw ParameterError("coupling edge (" + std::to_string(a) + "," + std::to_string(b) +
                           ") references a missing physical qubit");
    }
    if (a == b) throw ParameterError("coupling edge on a single qubit");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  const auto none = static_cast<std::uint32_t>(unreachable());
  distance_.assign(num_physical_ * num_physical_, none);
  std::vector<std::size_t> queue(num_physical_);
  std::vector<std::uint64_t> total(num_physical_, 0);
  for (std::size_t source = 0; source < num_physical_; ++source) {
    std::uint32_t* row = distance_.data() + source * num_physical_;
    row[source] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = source;
    while (head < tail) {
      const std::size_t u = queue[head++];
      for (const auto v : adjacency_[u]) {
        if (row[v] == none) {
          row[v] = row[u] + 1;
          total[source] += row[v];
          queue[tail++] = v;
        }
      }
    }
    if (tail != num_physical_) connected_ = false;
  }

  centrality_order_.resize(num_physical_);
  std::iota(centrality_order_.begin(), centrality_order_.end(), std::size_t{0});
  std::stable_sort(centrality_order_.begin(), centrality_order_.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (adjacency_[a].size() != adjacency_[b].size()) {
                       return adjacency_[a].size() > adjacency_[b].size();
                     }
                     return total[a] < total[b];
                   });
}

CouplingMap CouplingMap::grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ParameterError("grid dimensions must be positive");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t q = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(q, q + 1);
      if (r + 1 < rows) edges.emplace_back(q, q + cols);
    }
  }
  CouplingMap map(rows * cols, std::move(edges));
  map.grid_shape_ = std::make_pair(rows, cols);
  return map;
}

bool CouplingMap::adjacent(std::size_t a, std::size_t b) const {
  const auto& list = adjacency_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

CouplingMap grid_map(std::size_t rows, std::size_t cols) { return CouplingMap::grid(rows, cols); }

namespace {

constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

void check_routable(const Circuit& circuit, const CouplingMap& map) {
  if (circuit.num_qubits > map.num_physical()) {
    throw CapacityError("circuit needs " + std::to_string(circuit.num_qubits) +
                        " qubits, coupling map has " + std::to_string(map.num_physical()));
  }
  if (!map.connected()) throw RoutingError("coupling map is not connected");
}

}  // namespace

std::vector<std::size_t> initial_layout(const Circuit& circuit, const CouplingMap& map) {
  check_routable(circuit, map);
  const std::size_t n = circuit.num_qubits;
  std::vector<std::vector<std::size_t>> interacts(n);
  for (const auto& gate : circuit.gates) {
    if (!gate.is_two_qubit()) continue;
    interacts[gate.qubits[0]].push_back(gate.qubits[1]);
    interacts[gate.qubits[1]].push_back(gate.qubits[0]);
  }
  for (auto& list : interacts) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  const std::size_t center = map.centrality_order().front();
  std::vector<std::size_t> layout(n, kFree);
  std::vector<bool> occupied(map.num_physical(), false);
  std::vector<std::size_t> placed_neighbors(n, 0);

  for (std::size_t round = 0; round < n; ++round) {
    // Next logical qubit: most already-placed partners, then degree, then index.
    std::size_t next = kFree;
    for (std::size_t q = 0; q < n; ++q) {
      if (layout[q] != kFree) continue;
      if (next == kFree || placed_neighbors[q] > placed_neighbors[next] ||
          (placed_neighbors[q] == placed_neighbors[next] &&
           interacts[q].size() > interacts[next].size())) {
        next = q;
      }
    }
    // Physical slot: closest to placed partners, then enough free room for the
    // partners still to come, then closest to the centre.
    const std::size_t pending = interacts[next].size() - placed_neighbors[next];
    std::size_t best = kFree;
    std::size_t best_cost = kFree;
    std::size_t best_short = kFree;
    std::size_t best_center = kFree;
    for (std::size_t phys = 0; phys < map.num_physical(); ++phys) {
      if (occupied[phys]) continue;
      std::size_t cost = 0;
      for (const auto partner : interacts[next]) {
        if (layout[partner] != kFree) cost += map.distance(phys, layout[partner]);
      }
      std::size_t room = 0;
      for (const auto nb : map.neighbors(phys)) room += occupied[nb] ? 0 : 1;
      const std::size_t shortfall = pending > room ? pending - room : 0;
      const std::size_t to_center = map.distance(phys, center);
      if (std::tie(cost, shortfall, to_center) < std::tie(best_cost, best_short, best_center)) {
        best = phys;
        best_cost = cost;
        best_short = shortfall;
        best_center = to_center;
      }
    }
    layout[next] = best;
    occupied[best] = true;
    for (const auto partner : interacts[next]) ++placed_neighbors[partner];
  }
  return layout;
}

Circuit decompose_swaps(const Circuit& circuit) {
  Circuit out{circuit.num_qubits, circuit.layers, {}};
  out.gates.reserve(circuit.gates.size());
  for (const auto& gate : circuit.gates) {
    if (gate.kind != GateKind::SWAP) {
      out.gates.push_back(gate);
      continue;
    }
    const auto [a, b] = gate.qubits;
    out.gates.push_back(Gate::cnot(a, b));
    out.gates.push_back(Gate::cnot(b, a));
    out.gates.push_back(Gate::cnot(a, b));
  }
  return out;
}

double duration_estimate(const Circuit& circuit, const GateTimes& times) {
  if (times.cnot < 0 || times.single < 0 || times.measure < 0) {
    throw ParameterError("gate times must be non-negative");
  }
  std::vector<double> ready(circuit.num_qubits, 0.0);
  double total = 0.0;
  for (const auto& gate : circuit.gates) {
    double latency = times.single;
    if (gate.kind == GateKind::CNOT) latency = times.cnot;
    if (gate.kind == GateKind::SWAP) latency = 3.0 * times.cnot;
    if (gate.kind == GateKind::MEASURE) latency = times.measure;
    const std::size_t a = gate.qubits[0];
    const std::size_t b = gate.is_two_qubit() ? gate.qubits[1] : a;
    const double finish = std::max(ready.at(a), ready.at(b)) + latency;
    ready[a] = ready[b] = finish;
    total = std::max(total, finish);
  }
  return total;
}

CompiledCircuit route(const Circuit& circuit, const CouplingMap& map, std::uint64_t seed) {
  CompiledCircuit out;
  out.num_logical = circuit.num_qubits;
  out.initial_layout = initial_layout(circuit, map);
  out.circuit = Circuit{map.num_physical(), circuit.layers, {}};
  out.circuit.gates.reserve(circuit.gates.size() * 2);

  std::vector<std::size_t> to_physical = out.initial_layout;
  std::vector<std::size_t> to_logical(map.num_physical(), kFree);
  for (std::size_t q = 0; q < to_physical.size(); ++q) to_logical[to_physical[q]] = q;

  Rng rng(seed);
  std::vector<std::size_t> hops;
  std::size_t swaps = 0;
  std::size_t logical_cnots = 0;
  for (const auto& gate : circuit.gates) {
    Gate placed = gate;
    if (!gate.is_two_qubit()) {
      placed.qubits[0] = placed.qubits[1] = to_physical.at(gate.qubits[0]);
      out.circuit.gates.push_back(placed);
      continue;
    }
    if (gate.kind == GateKind::CNOT) ++logical_cnots;
    std::size_t moving = to_physical.at(gate.qubits[0]);
    const std::size_t fixed = to_physical.at(gate.qubits[1]);
    while (map.distance(moving, fixed) > 1) {
      const std::size_t remaining = map.distance(moving, fixed);
      hops.clear();
      for (const auto next : map.neighbors(moving)) {
        if (map.distance(next, fixed) + 1 == remaining) hops.push_back(next);
      }
      // Hopping into an empty slot leaves other logical qubits in place.
      const auto empty_end = std::stable_partition(
          hops.begin(), hops.end(), [&](std::size_t h) { return to_logical[h] == kFree; });
      if (empty_end != hops.begin()) hops.erase(empty_end, hops.end());
      const std::size_t hop = hops.size() == 1 ? hops.front() : hops[rng.below(hops.size())];
      out.circuit.gates.push_back(Gate::swap(moving, hop));
      ++swaps;
      std::swap(to_logical[moving], to_logical[hop]);
      if (to_logical[moving] != kFree) to_physical[to_logical[moving]] = moving;
      if (to_logical[hop] != kFree) to_physical[to_logical[hop]] = hop;
      moving = hop;
    }
    placed.qubits = {moving, fixed};
    out.circuit.gates.push_back(placed);
  }
  out.final_layout = std::move(to_physical);

  const Circuit flat = decompose_swaps(out.circuit);
  auto& m = out.metrics;
  m.cnot_logical = logical_cnots;
  m.swap_count = swaps;
  m.cnot_from_swaps = 3 * swaps;
  m.cnot_total = logical_cnots + m.cnot_from_swaps;
  m.depth = logical_depth(flat);
  m.duration_s = duration_estimate(flat, GateTimes{});
  return out;
}


TemplateExecutable compile_template(const IsingModel& model, std::size_t p,
                                    const CouplingMap& map, std::uint64_t seed) {
  TemplateExecutable tmpl{route(build_qaoa(model, p), map, seed), {}};
  const auto& gates = tmpl.compiled.circuit.gates;
  for (std::size_t pos = 0; pos < gates.size(); ++pos) {
    if (gates[pos].term) tmpl.slots[*gates[pos].term].push_back(pos);
  }
  return tmpl;
}

CompiledCircuit bind_template(const TemplateExecutable& tmpl, const IsingModel& model) {
  if (model.num_vars() != tmpl.compiled.num_logical) {
    throw IncompatibleTemplateError("template has " + std::to_string(tmpl.compiled.num_logical) +
                                    " logical qubits, model has " +
                                    std::to_string(model.num_vars()));
  }
  if (model.linear().size() + model.quadratic().size() != tmpl.slots.size()) {
    throw IncompatibleTemplateError("model term count differs from template slot count");
  }
  CompiledCircuit bound = tmpl.compiled;
  const auto write = [&](const TermId& term, double coefficient) {
    const auto it = tmpl.slots.find(term);
    if (it == tmpl.slots.end()) {
      throw IncompatibleTemplateError("model term has no slot in the template");
    }
    for (const auto pos : it->second) bound.circuit.gates[pos].angle->scale = 2.0 * coefficient;
  };
  for (const auto& [i, h] : model.linear()) write(TermId{i, {}}, h);
  for (const auto& [key, coupling] : model.quadratic()) {
    write(TermId{key.first, key.second}, coupling);
  }
  return bound;
}

}  // namespace qfreeze
