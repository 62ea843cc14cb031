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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfreeze/ising.hpp"

namespace qfreeze {

struct FrozenEntry {
  std::size_t index;
  Spin value;

  friend bool operator==(const FrozenEntry&, const FrozenEntry&) = default;
};

/// Frozen variables in freezing order.
using FrozenAssignment = std::vector<FrozenEntry>;

enum class HotspotRanking {
  /// Pick the max-degree node, drop its edges, recompute, repeat.
  Adaptive,
  /// Top-m of the original degree sequence.
  Static,
};

/// The m highest-degree variables in selection order, ties to the lowest index.
std::vector<std::size_t> select_hotspots(const IsingModel& model, std::size_t m,
                                         HotspotRanking ranking = HotspotRanking::Adaptive);

/// Substitutes z_k = value. The result keeps the parent's indexing (and
/// num_vars); variable k is left without terms. Every former neighbour j of
/// k gets a stored linear entry h_j + value * J_kj, even when that sums to 0,
/// so all sign patterns of one frozen set share the same term pattern.
IsingModel freeze_one(const IsingModel& model, std::size_t k, Spin value);

struct SubProblem {
  /// Content hash of the parent model (see model_id).
  std::string parent_id;
  /// Sign-pattern counter: bit (m-1-i) set <=> frozen[i].value == -1.
  std::size_t id = 0;
  FrozenAssignment frozen;
  /// Child over the unfrozen variables, densely re-indexed.
  IsingModel model;
  /// parent_index[c] is the parent variable behind child variable c (ascending).
  std::vector<std::size_t> parent_index;
  /// Identifier of the sign-complemented twin this sub-problem stands in for.
  std::optional<std::size_t> mirror_of;
};

inline constexpr std::size_t kMaxFrozen = 20;

/// All 2^m sub-problems for the frozen set `qubits`, ordered by pattern id.
/// With `prune` and an all-zero-linear parent, only the patterns whose first
/// frozen value is +1 are returned; each records its complement in mirror_of.
std::vector<SubProblem> freeze_many(const IsingModel& model, std::span<const std::size_t> qubits,
                                    bool prune);

/// The single sub-problem for one sign pattern of `qubits` (no mirror link).
SubProblem freeze_pattern(const IsingModel& model, std::span<const std::size_t> qubits,
                          std::size_t pattern);

/// Number of sub-problems freeze_many returns for m frozen variables.
std::size_t kept_subproblem_count(const IsingModel& model, std::size_t m, bool prune);

struct DecodedSolution {
  /// Full assignment in parent indexing.
  SpinAssignment assignment;
  double value = 0.0;
  std::size_t source = 0;
  bool via_mirror = false;
};

/// Lifts a child assignment into the parent space. For a sub-problem with
/// mirror_of set the returned vector also holds the spin-flipped solution.
std::vector<DecodedSolution> decode(const SubProblem& sub, std::span<const Spin> sub_assignment,
                                    const IsingModel& parent);

/// Lowest value wins; equal values resolve to the lexicographically smallest
/// assignment (-1 < +1).
DecodedSolution aggregate(std::span<const DecodedSolution> solutions);

/// Stable 64-bit FNV-1a content hash of a model, as 16 hex digits.
std::string model_id(const IsingModel& model);

}  // namespace qfreeze
