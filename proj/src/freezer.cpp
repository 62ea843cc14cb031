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

#include "qfreeze/freezer.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numeric>

#include "qfreeze/errors.hpp"

namespace qfreeze {

std::vector<std::size_t> select_hotspots(const IsingModel& model, std::size_t m,
                                         HotspotRanking ranking) {
  const std::size_t n = model.num_vars();
  if (m > n) {
    throw ParameterError("cannot select " + std::to_string(m) + " hotspots from " +
                         std::to_string(n) + " variables");
  }
  std::vector<std::size_t> live_degree(n);
  for (std::size_t i = 0; i < n; ++i) live_degree[i] = model.neighbors(i).size();

  if (ranking == HotspotRanking::Static) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return live_degree[a] > live_degree[b];
    });
    order.resize(m);
    return order;
  }

  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> picked;
  picked.reserve(m);
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i] && (best == n || live_degree[i] > live_degree[best])) best = i;
    }
    chosen[best] = true;
    picked.push_back(best);
    for (const auto j : model.neighbors(best)) {
      if (!chosen[j]) --live_degree[j];
    }
  }
  return picked;
}

IsingModel freeze_one(const IsingModel& model, std::size_t k, Spin value) {
  if (k >= model.num_vars()) {
    throw ParameterError("cannot freeze variable " + std::to_string(k) + " of " +
                         std::to_string(model.num_vars()));
  }
  if (value != 1 && value != -1) throw ParameterError("frozen value must be +1 or -1");

  IsingModel::LinearMap linear = model.linear();
  double offset = model.offset();
  if (const auto it = linear.find(k); it != linear.end()) {
    offset += value * it->second;
    linear.erase(it);
  }
  std::vector<QuadraticTerm> kept;
  kept.reserve(model.quadratic().size());
  for (const auto& [key, coupling] : model.quadratic()) {
    if (key.first == k) {
      linear[key.second] += value * coupling;
    } else if (key.second == k) {
      linear[key.first] += value * coupling;
    } else {
      kept.push_back({key.first, key.second, coupling});
    }
  }
  return IsingModel(model.num_vars(), std::move(linear), kept, offset);
}

namespace {

SubProblem compact(const IsingModel& frozen_model, FrozenAssignment frozen, std::size_t id,
                   const std::string& parent_id) {
  const std::size_t n = frozen_model.num_vars();
  std::vector<bool> is_frozen(n, false);
  for (const auto& entry : frozen) is_frozen[entry.index] = true;

  SubProblem sub;
  sub.parent_id = parent_id;
  sub.id = id;
  sub.frozen = std::move(frozen);
  std::vector<std::size_t> child_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_frozen[i]) {
      child_of[i] = sub.parent_index.size();
      sub.parent_index.push_back(i);
    }
  }
  IsingModel::LinearMap linear;
  for (const auto& [i, h] : frozen_model.linear()) linear.emplace(child_of[i], h);
  std::vector<QuadraticTerm> quadratic;
  quadratic.reserve(frozen_model.quadratic().size());
  for (const auto& [key, coupling] : frozen_model.quadratic()) {
    quadratic.push_back({child_of[key.first], child_of[key.second], coupling});
  }
  sub.model = IsingModel(sub.parent_index.size(), std::move(linear), quadratic,
                         frozen_model.offset());
  return sub;
}

}  // namespace

std::size_t kept_subproblem_count(const IsingModel& model, std::size_t m, bool prune) {
  const std::size_t all = std::size_t{1} << m;
  return prune && m > 0 && model.has_zero_linear() ? all / 2 : all;
}

namespace {

void check_frozen_set(const IsingModel& model, std::span<const std::size_t> qubits) {
  if (qubits.size() > kMaxFrozen) {
    throw CapacityError("freezing " + std::to_string(qubits.size()) +
                        " variables exceeds the limit of " + std::to_string(kMaxFrozen));
  }
  std::vector<bool> seen(model.num_vars(), false);
  for (const auto q : qubits) {
    if (q >= model.num_vars()) {
      throw ParameterError("frozen index " + std::to_string(q) + " out of range");
    }
    if (seen[q]) throw ParameterError("frozen index " + std::to_string(q) + " repeated");
    seen[q] = true;
  }
}

SubProblem make_subproblem(const IsingModel& model, std::span<const std::size_t> qubits,
                           std::size_t pattern, const std::string& parent_id) {
  const std::size_t m = qubits.size();
  FrozenAssignment frozen;
  frozen.reserve(m);
  IsingModel current = model;
  for (std::size_t i = 0; i < m; ++i) {
    const Spin value = ((pattern >> (m - 1 - i)) & 1U) != 0 ? -1 : 1;
    frozen.push_back({qubits[i], value});
    current = freeze_one(current, qubits[i], value);
  }
  return compact(current, std::move(frozen), pattern, parent_id);
}

}  // namespace

SubProblem freeze_pattern(const IsingModel& model, std::span<const std::size_t> qubits,
                          std::size_t pattern) {
  check_frozen_set(model, qubits);
  if (pattern >= (std::size_t{1} << qubits.size())) {
    throw ParameterError("sign pattern " + std::to_string(pattern) + " out of range");
  }
  return make_subproblem(model, qubits, pattern, model_id(model));
}

std::vector<SubProblem> freeze_many(const IsingModel& model, std::span<const std::size_t> qubits,
                                    bool prune) {
  check_frozen_set(model, qubits);
  const std::string parent_id = model_id(model);
  const std::size_t all = std::size_t{1} << qubits.size();
  const std::size_t kept = kept_subproblem_count(model, qubits.size(), prune);

  std::vector<SubProblem> subs;
  subs.reserve(kept);
  for (std::size_t pattern = 0; pattern < kept; ++pattern) {
    subs.push_back(make_subproblem(model, qubits, pattern, parent_id));
    if (kept != all) subs.back().mirror_of = pattern ^ (all - 1);
  }
  return subs;
}

std::vector<DecodedSolution> decode(const SubProblem& sub, std::span<const Spin> sub_assignment,
                                    const IsingModel& parent) {
  if (sub_assignment.size() != sub.model.num_vars()) {
    throw DimensionError("sub-problem assignment has " + std::to_string(sub_assignment.size()) +
                         " spins, expected " + std::to_string(sub.model.num_vars()));
  }
  if (sub.parent_index.size() + sub.frozen.size() != parent.num_vars()) {
    throw DimensionError("sub-problem does not partition the given parent model");
  }
  SpinAssignment full(parent.num_vars(), 1);
  for (const auto& entry : sub.frozen) full[entry.index] = entry.value;
  for (std::size_t c = 0; c < sub_assignment.size(); ++c) {
    full[sub.parent_index[c]] = sub_assignment[c];
  }
  std::vector<DecodedSolution> out;
  const double value = evaluate(parent, full);
  out.push_back({full, value, sub.id, false});
  if (sub.mirror_of) {
    SpinAssignment flipped = full;
    for (auto& s : flipped) s = static_cast<Spin>(-s);
    const double mirrored_value = evaluate(parent, flipped);
    out.push_back({std::move(flipped), mirrored_value, sub.id, true});
  }
  return out;
}

DecodedSolution aggregate(std::span<const DecodedSolution> solutions) {
  if (solutions.empty()) throw EmptyInputError("no solutions to aggregate");
  const auto best = std::min_element(
      solutions.begin(), solutions.end(), [](const DecodedSolution& a, const DecodedSolution& b) {
        if (a.value != b.value) return a.value < b.value;
        return spin_less(a.assignment, b.assignment);
      });
  return *best;
}

std::string model_id(const IsingModel& model) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&hash](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (word >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  mix(model.num_vars());
  mix(model.linear().size());
  for (const auto& [i, h] : model.linear()) {
    mix(i);
    mix(std::bit_cast<std::uint64_t>(h));
  }
  mix(model.quadratic().size());
  for (const auto& [key, coupling] : model.quadratic()) {
    mix(key.first);
    mix(key.second);
    mix(std::bit_cast<std::uint64_t>(coupling));
  }
  mix(std::bit_cast<std::uint64_t>(model.offset()));
  char text[17];
  std::snprintf(text, sizeof text, "%016llx", static_cast<unsigned long long>(hash));
  return text;
}

}  // namespace qfreeze
