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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qfreeze/errors.hpp"
#include "qfreeze/freezer.hpp"
#include "qfreeze/simulator.hpp"
#include "qfreeze/transpiler.hpp"

namespace qfreeze {
namespace {

using oracle::logical_amplitudes;

void expect_valid(const CompiledCircuit& compiled, const CouplingMap& map) {
  std::size_t swaps = 0;
  std::size_t cnots = 0;
  for (const auto& g : compiled.circuit.gates) {
    if (g.kind == GateKind::SWAP) ++swaps;
    if (g.kind == GateKind::CNOT) ++cnots;
    if (g.is_two_qubit()) {
      ASSERT_TRUE(map.adjacent(g.qubits[0], g.qubits[1]))
          << g.qubits[0] << "-" << g.qubits[1] << " is not a coupling edge";
    }
  }
  const auto& m = compiled.metrics;
  EXPECT_EQ(m.swap_count, swaps);
  EXPECT_EQ(m.cnot_logical, cnots);
  EXPECT_EQ(m.cnot_from_swaps, 3 * swaps);
  EXPECT_EQ(m.cnot_total - m.cnot_logical, 3 * m.swap_count);
  EXPECT_EQ(gate_census(decompose_swaps(compiled.circuit)).cnot, m.cnot_total);
  for (const auto& layout : {compiled.initial_layout, compiled.final_layout}) {
    std::vector<bool> used(map.num_physical(), false);
    for (const auto phys : layout) {
      ASSERT_LT(phys, map.num_physical());
      EXPECT_FALSE(used[phys]);
      used[phys] = true;
    }
  }
}

void expect_equivalent(const Circuit& logical, const CompiledCircuit& compiled) {
  const StateVector reference = simulate(logical);
  const auto routed = logical_amplitudes(compiled, simulate(compiled.circuit));
  for (std::size_t x = 0; x < routed.size(); ++x) {
    ASSERT_NEAR(std::abs(routed[x] - reference[x]), 0.0, 1e-9) << "basis " << x;
  }
}

ParamPoint some_point(std::size_t p) {
  ParamPoint point;
  for (std::size_t l = 0; l < p; ++l) {
    point.gammas.push_back(0.37 + 0.2 * static_cast<double>(l));
    point.betas.push_back(0.21 + 0.1 * static_cast<double>(l));
  }
  return point;
}

TEST(GridMap, EdgeCounts) {
  EXPECT_EQ(grid_map(1, 2).edges().size(), 1U);
  EXPECT_EQ(grid_map(2, 2).edges().size(), 4U);
  EXPECT_EQ(grid_map(50, 50).edges().size(), 4900U);
  EXPECT_EQ(grid_map(3, 7).edges().size(), 3U * 6U + 7U * 2U);
  EXPECT_THROW(grid_map(0, 3), ParameterError);
  EXPECT_THROW(grid_map(3, 0), ParameterError);
}

TEST(GridMap, DistancesAreManhattan) {
  const auto map = grid_map(4, 5);
  for (std::size_t a = 0; a < 20; ++a) {
    for (std::size_t b = 0; b < 20; ++b) {
      const auto dr = static_cast<long>(a / 5) - static_cast<long>(b / 5);
      const auto dc = static_cast<long>(a % 5) - static_cast<long>(b % 5);
      EXPECT_EQ(map.distance(a, b), static_cast<std::size_t>(std::labs(dr) + std::labs(dc)));
    }
  }
  EXPECT_EQ(map.grid_shape(), (std::pair<std::size_t, std::size_t>{4, 5}));
}

TEST(CouplingMap, CustomEdgesAndErrors) {
  const CouplingMap ring(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 0}});
  EXPECT_EQ(ring.edges().size(), 4U);
  EXPECT_TRUE(ring.connected());
  EXPECT_EQ(ring.distance(0, 2), 2U);
  EXPECT_THROW(CouplingMap(3, {{0, 3}}), ParameterError);
  EXPECT_THROW(CouplingMap(3, {{1, 1}}), ParameterError);
  const CouplingMap split(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(split.connected());
  const auto circuit = build_qaoa(IsingModel(2, {}, {{0, 1, 1.0}}), 1);
  EXPECT_THROW(route(circuit, split, 1), RoutingError);
  EXPECT_THROW(route(build_qaoa(generate_sk(5, 1), 1), grid_map(2, 2), 1), CapacityError);
}

TEST(Route, EmbeddableInteractionNeedsNoSwaps) {
  const IsingModel path(4, {}, {{0, 1, 1.0}, {1, 2, -1.0}, {2, 3, 1.0}});
  const auto on_square = route(build_qaoa(path, 2), grid_map(2, 2), 3);
  EXPECT_EQ(on_square.metrics.swap_count, 0U);
  EXPECT_EQ(on_square.metrics.cnot_total, 12U);

  const IsingModel star(5, {}, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, -1.0}, {0, 4, 1.0}});
  const auto on_grid = route(build_qaoa(star, 1), grid_map(3, 3), 3);
  EXPECT_EQ(on_grid.metrics.swap_count, 0U);
  EXPECT_EQ(on_grid.initial_layout[0], 4U);
}

TEST(Route, TriangleOnALineNeedsASwap) {
  const IsingModel triangle(3, {}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto map = grid_map(1, 3);
  const auto logical = build_qaoa(triangle, 1);
  const auto compiled = route(logical, map, 5);
  EXPECT_GE(compiled.metrics.swap_count, 1U);
  expect_valid(compiled, map);
  expect_equivalent(bind_parameters(logical, some_point(1)),
                    route(bind_parameters(logical, some_point(1)), map, 5));
}

TEST(Route, DenseModelOnSmallGrid) {
  const auto map = grid_map(3, 3);
  const auto logical = bind_parameters(build_qaoa(generate_sk(8, 4), 1), some_point(1));
  const auto compiled = route(logical, map, 2);
  expect_valid(compiled, map);
  EXPECT_GT(compiled.metrics.swap_count, 0U);
  expect_equivalent(logical, compiled);
}

TEST(Route, RandomizedSoundness) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const std::size_t rows = 1 + trial % 3;
    std::size_t cols = (n + rows - 1) / rows + trial % 2;
    const auto map = grid_map(rows, cols);
    const auto model = oracle::random_model(rng, n, 0.5, trial % 3 == 0);
    const std::size_t p = 1 + trial % 2;
    const auto logical = bind_parameters(build_qaoa(model, p), some_point(p));
    const auto compiled = route(logical, map, rng());
    expect_valid(compiled, map);
    expect_equivalent(logical, compiled);
  }
}

TEST(Route, DeterministicPerSeed) {
  const auto model = generate_ba(30, 2, 5);
  const auto circuit = build_qaoa(model, 1);
  const auto map = grid_map(6, 6);
  const auto a = route(circuit, map, 77);
  const auto b = route(circuit, map, 77);
  EXPECT_EQ(a.circuit, b.circuit);
  EXPECT_EQ(a.final_layout, b.final_layout);
  EXPECT_EQ(a.metrics, b.metrics);
}

TEST(Route, FreezingTheTopHotspotCutsSwapOverhead) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto model = generate_ba(100, 1, seed);
    const auto map = grid_map(11, 11);
    const auto base = route(build_qaoa(model, 1), map, seed);
    const auto sub = freeze_pattern(model, select_hotspots(model, 1), 0);
    const auto frozen = route(build_qaoa(sub.model, 1), map, seed);
    EXPECT_LT(frozen.metrics.cnot_from_swaps, base.metrics.cnot_from_swaps) << "seed " << seed;
  }
}

TEST(Duration, CriticalPath) {
  const GateTimes times;
  EXPECT_EQ(duration_estimate(Circuit{}, times), 0.0);
  EXPECT_DOUBLE_EQ(duration_estimate(Circuit{2, 0, {Gate::cnot(0, 1)}}, times), 4.0e-7);
  EXPECT_DOUBLE_EQ(duration_estimate(Circuit{4, 0, {Gate::cnot(0, 1), Gate::cnot(2, 3)}}, times),
                   4.0e-7);
  const Circuit chain{3, 0, {Gate::h(0), Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::measure(2)}};
  EXPECT_DOUBLE_EQ(duration_estimate(chain, times), 40e-9 + 2 * 400e-9 + 1e-6);
  EXPECT_DOUBLE_EQ(duration_estimate(Circuit{2, 0, {Gate::swap(0, 1)}}, times), 1.2e-6);
  EXPECT_THROW(duration_estimate(chain, GateTimes{-1.0, 0.0, 0.0}), ParameterError);
}

TEST(Template, EveryChildBindsWithoutRerouting) {
  const auto model = generate_ba(14, 1, 6);
  const auto subs = freeze_many(model, select_hotspots(model, 3), false);
  const auto tmpl = compile_template(subs[0].model, 2, grid_map(4, 4), 9);
  for (const auto& sub : subs) {
    const auto bound = bind_template(tmpl, sub.model);
    EXPECT_EQ(bound.metrics, tmpl.compiled.metrics);
    EXPECT_EQ(bound.final_layout, tmpl.compiled.final_layout);
    ASSERT_EQ(bound.circuit.gates.size(), tmpl.compiled.circuit.gates.size());
  }
}

TEST(Template, IdentityBindReproducesRoute) {
  const auto model = generate_ba(12, 2, 2);
  const auto map = grid_map(4, 3);
  const auto tmpl = compile_template(model, 2, map, 4);
  const auto bound = bind_template(tmpl, model);
  const auto direct = route(build_qaoa(model, 2), map, 4);
  EXPECT_EQ(bound.circuit, direct.circuit);
  EXPECT_EQ(bound.metrics, direct.metrics);
}

TEST(Template, OppositePatternsDifferOnlyInLinearSigns) {
  const auto model = generate_ba(10, 2, 12);
  const std::vector<std::size_t> hot{select_hotspots(model, 1)};
  const auto plus = freeze_pattern(model, hot, 0);
  const auto minus = freeze_pattern(model, hot, 1);
  const auto tmpl = compile_template(plus.model, 1, grid_map(3, 3), 1);
  const auto a = bind_template(tmpl, plus.model);
  const auto b = bind_template(tmpl, minus.model);
  std::size_t flipped = 0;
  for (std::size_t g = 0; g < a.circuit.gates.size(); ++g) {
    const auto& ga = a.circuit.gates[g];
    const auto& gb = b.circuit.gates[g];
    if (ga.term && !ga.term->j) {
      EXPECT_EQ(ga.angle->scale, -gb.angle->scale);
      flipped += ga.angle->scale != 0.0 ? 1 : 0;
    } else {
      EXPECT_EQ(ga, gb);
    }
  }
  EXPECT_GT(flipped, 0U);
}

TEST(Template, ZeroCoefficientsGiveZeroProblemAngles) {
  const IsingModel fields(4, {{0, 1.0}, {1, -2.0}, {2, 0.5}, {3, 3.0}}, {});
  const IsingModel zeros(4, {{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}}, {});
  const auto tmpl = compile_template(fields, 1, grid_map(2, 2), 1);
  const auto flat = bind_parameters(bind_template(tmpl, zeros).circuit, some_point(1));
  std::size_t problem_rotations = 0;
  for (const auto& g : flat.gates) {
    if (!g.term) continue;
    ++problem_rotations;
    EXPECT_EQ(*g.angle->value, 0.0);
  }
  EXPECT_EQ(problem_rotations, 4U);
}

TEST(Template, MismatchedSparsityIsRejected) {
  const auto model = generate_ba(10, 1, 3);
  const auto tmpl = compile_template(model, 1, grid_map(4, 4), 1);
  EXPECT_THROW(bind_template(tmpl, generate_ba(11, 1, 3)), IncompatibleTemplateError);
  EXPECT_THROW(bind_template(tmpl, IsingModel(10, {{0, 1.0}}, {})), IncompatibleTemplateError);
  std::vector<QuadraticTerm> moved;
  for (const auto& [key, v] : model.quadratic()) moved.push_back({key.first, key.second, v});
  moved.front() = {0, 9, 1.0};
  if (model.coupling(0, 9) != 0.0) moved.front() = {1, 9, 1.0};
  EXPECT_THROW(bind_template(tmpl, IsingModel(10, {}, moved)), IncompatibleTemplateError);
}

TEST(Template, BoundExpectationMatchesFreshRoute) {
  const auto model = generate_ba(9, 2, 8);
  const auto map = grid_map(3, 3);
  const auto subs = freeze_many(model, select_hotspots(model, 2), true);
  const auto tmpl = compile_template(subs[0].model, 1, map, 3);
  for (const auto& sub : subs) {
    const auto edited = bind_template(tmpl, sub.model);
    const auto fresh = route(build_qaoa(sub.model, 1), map, 3);
    const auto point = some_point(1);
    const auto expect_of = [&](const CompiledCircuit& c) {
      const auto phys = simulate(bind_parameters(c.circuit, point));
      const auto amps = logical_amplitudes(c, phys);
      double total = 0.0;
      for (std::size_t x = 0; x < amps.size(); ++x) {
        total += std::norm(amps[x]) * evaluate_bits(sub.model, x);
      }
      return total;
    };
    EXPECT_NEAR(expect_of(edited), expect_of(fresh), 1e-9);
  }
}

TEST(Template, FidelityWithPlainRoute) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = oracle::random_model(rng, 8, 0.4, true);
    const auto map = grid_map(3, 3);
    EXPECT_EQ(bind_template(compile_template(model, 1, map, trial), model).metrics,
              route(build_qaoa(model, 1), map, trial).metrics);
  }
}

}  // namespace
}  // namespace qfreeze
