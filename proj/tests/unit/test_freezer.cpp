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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qfreeze/errors.hpp"
#include "qfreeze/freezer.hpp"

namespace qfreeze {
namespace {

IsingModel star(std::size_t leaves) {
  std::vector<QuadraticTerm> terms;
  for (std::size_t leaf = 1; leaf <= leaves; ++leaf) terms.push_back({0, leaf, 1.0});
  return IsingModel(leaves + 1, {}, terms);
}

IsingModel triangle() { return IsingModel(3, {}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

TEST(SelectHotspots, SmallGraphs) {
  EXPECT_EQ(select_hotspots(star(6), 1), (std::vector<std::size_t>{0}));
  EXPECT_EQ(select_hotspots(triangle(), 1), (std::vector<std::size_t>{0}));
  const IsingModel path(3, {}, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_EQ(select_hotspots(path, 2), (std::vector<std::size_t>{1, 0}));
  EXPECT_THROW(select_hotspots(path, 4), ParameterError);
  EXPECT_TRUE(select_hotspots(path, 0).empty());
}

TEST(SelectHotspots, AdaptiveDiffersFromStaticOnSharedEdges) {
  // Two adjacent hubs of degree 3 and a separate hub of degree 3 that keeps
  // its degree once the first hub is gone.
  const IsingModel model(10, {},
                         {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 4, 1.0}, {1, 5, 1.0},
                          {6, 7, 1.0}, {6, 8, 1.0}, {6, 9, 1.0}});
  EXPECT_EQ(select_hotspots(model, 2, HotspotRanking::Static), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(select_hotspots(model, 2, HotspotRanking::Adaptive), (std::vector<std::size_t>{0, 6}));
}

TEST(FreezeOne, DirectSubstitution) {
  const IsingModel pair(2, {}, {{0, 1, 1.0}});
  const auto plus = freeze_one(pair, 1, +1);
  EXPECT_EQ(plus.linear_at(0), 1.0);
  EXPECT_EQ(plus.offset(), 0.0);
  EXPECT_TRUE(plus.quadratic().empty());

  const IsingModel biased(2, {{1, 2.0}}, {{0, 1, 1.0}});
  const auto minus = freeze_one(biased, 1, -1);
  EXPECT_EQ(minus.linear_at(0), -1.0);
  EXPECT_EQ(minus.offset(), -2.0);
  EXPECT_TRUE(minus.quadratic().empty());
}

TEST(FreezeOne, SiblingsShareQuadraticsAndMirrorLinears) {
  const IsingModel model(4, {}, {{0, 1, 1.0}, {1, 2, -1.0}, {2, 3, 1.0}, {0, 3, -1.0}, {1, 3, 1.0}});
  const auto plus = freeze_one(model, 3, +1);
  const auto minus = freeze_one(model, 3, -1);
  EXPECT_EQ(plus.quadratic(), minus.quadratic());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(plus.linear_at(i), -minus.linear_at(i));
}

TEST(FreezeOne, DropsExactlyTheIncidentEdges) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto model = oracle::random_model(rng, 9, 0.5, trial % 2 == 1);
    for (std::size_t k = 0; k < 9; ++k) {
      const auto frozen = freeze_one(model, k, trial % 3 == 0 ? -1 : +1);
      EXPECT_EQ(model.quadratic().size() - frozen.quadratic().size(), degree(model, k));
    }
  }
}

TEST(FreezeOne, MatchesSubstitutedEnergy) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = oracle::random_model(rng, 7, 0.6, true);
    const std::size_t k = trial % 7;
    for (const Spin value : {Spin{+1}, Spin{-1}}) {
      const auto frozen = freeze_one(model, k, value);
      for (std::uint64_t x = 0; x < 128; ++x) {
        auto z = oracle::spins(x, 7);
        if (z[k] != value) continue;
        const double parent = oracle::energy(model, z);
        z[k] = 0;  // the frozen variable no longer contributes
        EXPECT_EQ(oracle::energy(frozen, z), parent);
      }
    }
  }
}

TEST(FreezeOne, RejectsBadInput) {
  EXPECT_THROW(freeze_one(triangle(), 3, +1), ParameterError);
  EXPECT_THROW(freeze_one(triangle(), 0, 0), ParameterError);
}

TEST(FreezeMany, EnumeratesAllPatternsWithoutPruning) {
  const auto subs = freeze_many(triangle(), std::vector<std::size_t>{0, 2}, false);
  ASSERT_EQ(subs.size(), 4U);
  const std::vector<std::pair<Spin, Spin>> expected{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
  for (std::size_t s = 0; s < 4; ++s) {
    EXPECT_EQ(subs[s].id, s);
    EXPECT_EQ(subs[s].frozen[0], (FrozenEntry{0, expected[s].first}));
    EXPECT_EQ(subs[s].frozen[1], (FrozenEntry{2, expected[s].second}));
    EXPECT_EQ(subs[s].model.num_vars(), 1U);
    EXPECT_EQ(subs[s].parent_index, (std::vector<std::size_t>{1}));
    EXPECT_FALSE(subs[s].mirror_of.has_value());
    EXPECT_EQ(subs[s].parent_id, model_id(triangle()));
  }
}

TEST(FreezeMany, PruningKeepsLeadingPlusHalf) {
  const auto single = freeze_many(triangle(), std::vector<std::size_t>{1}, true);
  ASSERT_EQ(single.size(), 1U);
  EXPECT_EQ(single[0].frozen[0].value, +1);
  EXPECT_EQ(single[0].mirror_of, 1U);

  const auto model = generate_ba(12, 2, 4);
  const auto hot = select_hotspots(model, 3);
  const auto subs = freeze_many(model, hot, true);
  ASSERT_EQ(subs.size(), 4U);
  for (const auto& sub : subs) {
    EXPECT_EQ(sub.frozen[0].value, +1);
    EXPECT_EQ(sub.mirror_of, sub.id ^ 7U);
  }
}

TEST(FreezeMany, PruningNeedsExactlyZeroLinears) {
  const IsingModel biased(3, {{2, 1e-300}}, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_EQ(freeze_many(biased, std::vector<std::size_t>{1}, true).size(), 2U);
  const IsingModel stored_zero(3, {{2, 0.0}}, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_EQ(freeze_many(stored_zero, std::vector<std::size_t>{1}, true).size(), 1U);
  EXPECT_EQ(kept_subproblem_count(stored_zero, 0, true), 1U);
  EXPECT_EQ(kept_subproblem_count(stored_zero, 3, false), 8U);
  EXPECT_EQ(kept_subproblem_count(biased, 3, true), 8U);
}

TEST(FreezeMany, SiblingsShareTermPattern) {
  const auto model = generate_ba(14, 1, 8);
  const auto subs = freeze_many(model, select_hotspots(model, 3), false);
  for (const auto& sub : subs) {
    EXPECT_EQ(sub.model.num_vars(), 11U);
    ASSERT_EQ(sub.model.linear().size(), subs[0].model.linear().size());
    EXPECT_EQ(sub.model.quadratic(), subs[0].model.quadratic());
    auto a = sub.model.linear().begin();
    auto b = subs[0].model.linear().begin();
    for (; a != sub.model.linear().end(); ++a, ++b) EXPECT_EQ(a->first, b->first);
  }
}

TEST(FreezeMany, IndexMapIsABijection) {
  const auto model = generate_sk(8, 2);
  const auto subs = freeze_many(model, std::vector<std::size_t>{5, 2}, false);
  for (const auto& sub : subs) {
    std::set<std::size_t> seen(sub.parent_index.begin(), sub.parent_index.end());
    seen.insert(5);
    seen.insert(2);
    EXPECT_EQ(seen.size(), 8U);
    EXPECT_TRUE(std::is_sorted(sub.parent_index.begin(), sub.parent_index.end()));
  }
}

TEST(FreezeMany, RandomAssignmentsLandInTheirSubProblem) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = oracle::random_model(rng, 10, 0.4, trial % 2 == 0);
    const std::vector<std::size_t> qubits{7, 1, 4};
    const auto subs = freeze_many(model, qubits, false);
    for (int draw = 0; draw < 200; ++draw) {
      const auto z = oracle::spins(rng() & 1023U, 10);
      std::size_t pattern = 0;
      for (const auto q : qubits) pattern = (pattern << 1) | (z[q] < 0 ? 1U : 0U);
      const auto& sub = subs.at(pattern);
      std::vector<int> restricted;
      for (const auto p : sub.parent_index) restricted.push_back(z[p]);
      EXPECT_EQ(oracle::energy(sub.model, restricted), oracle::energy(model, z));
    }
  }
}

TEST(FreezeMany, Guards) {
  const auto model = generate_sk(22, 1);
  std::vector<std::size_t> many(21);
  std::iota(many.begin(), many.end(), std::size_t{0});
  EXPECT_THROW(freeze_many(model, many, true), CapacityError);
  EXPECT_THROW(freeze_many(model, std::vector<std::size_t>{3, 3}, true), ParameterError);
  EXPECT_THROW(freeze_many(model, std::vector<std::size_t>{22}, true), ParameterError);
  EXPECT_THROW(freeze_pattern(model, std::vector<std::size_t>{1}, 2), ParameterError);
}

TEST(FreezeMany, FreezingEverythingLeavesAnEmptyModel) {
  const auto subs = freeze_many(triangle(), std::vector<std::size_t>{2, 0, 1}, false);
  for (const auto& sub : subs) {
    EXPECT_EQ(sub.model.num_vars(), 0U);
    const auto decoded = decode(sub, SpinAssignment{}, triangle());
    SpinAssignment expected(3);
    for (const auto& e : sub.frozen) expected[e.index] = e.value;
    EXPECT_EQ(decoded.at(0).assignment, expected);
    EXPECT_EQ(decoded[0].value, sub.model.offset());
  }
}

TEST(Decode, TriangleWithMirror) {
  const auto subs = freeze_many(triangle(), std::vector<std::size_t>{0}, true);
  ASSERT_EQ(subs.size(), 1U);
  const auto decoded = decode(subs[0], SpinAssignment{-1, +1}, triangle());
  ASSERT_EQ(decoded.size(), 2U);
  EXPECT_EQ(decoded[0].assignment, (SpinAssignment{+1, -1, +1}));
  EXPECT_FALSE(decoded[0].via_mirror);
  EXPECT_EQ(decoded[1].assignment, (SpinAssignment{-1, +1, -1}));
  EXPECT_TRUE(decoded[1].via_mirror);
  EXPECT_EQ(decoded[0].value, decoded[1].value);
  EXPECT_EQ(decoded[0].value, oracle::energy(triangle(), {+1, -1, +1}));
  EXPECT_THROW(decode(subs[0], SpinAssignment{+1}, triangle()), DimensionError);
}

TEST(Decode, EverySubAssignmentReEvaluatesInTheParent) {
  std::mt19937_64 rng(53);
  const auto model = oracle::random_model(rng, 8, 0.5, true);
  for (const auto& sub : freeze_many(model, std::vector<std::size_t>{3, 6}, true)) {
    for (std::uint64_t x = 0; x < 64; ++x) {
      const auto child = spins_from_bits(x, 6);
      for (const auto& d : decode(sub, child, model)) {
        EXPECT_EQ(d.value, evaluate(model, d.assignment));
        if (!d.via_mirror) {
          EXPECT_EQ(d.value, evaluate(sub.model, child));
        }
      }
    }
  }
}

TEST(Aggregate, PicksMinimumThenLexicographic) {
  const DecodedSolution a{{+1, +1}, 3.0, 0, false};
  const DecodedSolution b{{+1, -1}, -2.0, 1, false};
  const DecodedSolution c{{-1, -1}, 0.0, 2, false};
  EXPECT_EQ(aggregate(std::vector<DecodedSolution>{a}).source, 0U);
  EXPECT_EQ(aggregate(std::vector<DecodedSolution>{a, b, c}).value, -2.0);
  const DecodedSolution tie{{-1, +1}, -2.0, 3, false};
  EXPECT_EQ(aggregate(std::vector<DecodedSolution>{b, tie}).source, 3U);
  EXPECT_EQ(aggregate(std::vector<DecodedSolution>{tie, b}).source, 3U);
  EXPECT_THROW(aggregate(std::vector<DecodedSolution>{}), EmptyInputError);
}

// Lifts every optimum of every kept sub-problem back to the parent.
std::vector<DecodedSolution> lifted_optima(const IsingModel& model,
                                           const std::vector<SubProblem>& subs) {
  std::vector<DecodedSolution> all;
  for (const auto& sub : subs) {
    for (const auto& z : brute_force_min(sub.model).argmins) {
      const auto d = decode(sub, z, model);
      all.insert(all.end(), d.begin(), d.end());
    }
  }
  return all;
}

TEST(Partition, ExactOnRandomModels) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + trial % 8;
    const auto model = oracle::random_model(rng, n, 0.45, trial % 2 == 0);
    const auto expected = oracle::exhaustive(model);
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto subs = freeze_many(model, select_hotspots(model, m), false);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& sub : subs) best = std::min(best, brute_force_min(sub.model).energy);
      EXPECT_EQ(best, expected.min) << "n=" << n << " m=" << m;
      EXPECT_EQ(aggregate(lifted_optima(model, subs)).value, expected.min);
    }
  }
}

TEST(Partition, PrunedPipelineRecoversEveryArgmin) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + trial % 8;
    const auto model = oracle::random_model(rng, n, 0.5, false);
    const auto expected = oracle::exhaustive(model);
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto subs = freeze_many(model, select_hotspots(model, m), true);
      EXPECT_EQ(subs.size(), std::size_t{1} << (m - 1));
      std::set<SpinAssignment> found;
      for (const auto& d : lifted_optima(model, subs)) {
        if (d.value == expected.min) found.insert(d.assignment);
      }
      std::set<SpinAssignment> want;
      for (const auto& z : expected.argmins) want.insert(oracle::to_assignment(z));
      EXPECT_EQ(found, want);
    }
  }
}

TEST(Partition, QubitOrderDoesNotChangeTheOptimum) {
  std::mt19937_64 rng(67);
  const auto model = oracle::random_model(rng, 10, 0.4, true);
  std::vector<std::size_t> qubits{2, 8, 5};
  const double reference = aggregate(lifted_optima(model, freeze_many(model, qubits, false))).value;
  while (std::next_permutation(qubits.begin(), qubits.end())) {
    EXPECT_EQ(aggregate(lifted_optima(model, freeze_many(model, qubits, false))).value, reference);
  }
}

TEST(ModelId, StableAndSensitive) {
  EXPECT_EQ(model_id(triangle()), model_id(triangle()));
  EXPECT_EQ(model_id(triangle()).size(), 16U);
  EXPECT_NE(model_id(triangle()), model_id(triangle().with_offset(1.0)));
}

}  // namespace
}  // namespace qfreeze
