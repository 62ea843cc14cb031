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

#include "qfreeze/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "qfreeze/errors.hpp"
#include "qfreeze/rng.hpp"

namespace qfreeze {

IsingModel::IsingModel(std::size_t num_vars, LinearMap linear,
                       std::span<const QuadraticTerm> quadratic, double offset)
    : num_vars_(num_vars), linear_(std::move(linear)), offset_(offset) {
  for (const auto& [i, h] : linear_) {
    if (i >= num_vars_) {
      throw ParameterError("linear index " + std::to_string(i) + " out of range for " +
                           std::to_string(num_vars_) + " variables");
    }
  }
  for (const auto& term : quadratic) {
    if (term.i >= num_vars_ || term.j >= num_vars_) {
      throw ParameterError("quadratic index (" + std::to_string(term.i) + "," +
                           std::to_string(term.j) + ") out of range");
    }
    if (term.i == term.j) {
      throw ParameterError("quadratic term on a single variable " + std::to_string(term.i));
    }
    quadratic_[{std::min(term.i, term.j), std::max(term.i, term.j)}] += term.value;
  }
  std::erase_if(quadratic_, [](const auto& entry) { return entry.second == 0.0; });

  adjacency_.resize(num_vars_);
  for (const auto& [key, value] : quadratic_) {
    adjacency_[key.first].push_back(key.second);
    adjacency_[key.second].push_back(key.first);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

IsingModel::IsingModel(std::size_t num_vars, LinearMap linear,
                       std::initializer_list<QuadraticTerm> quadratic, double offset)
    : IsingModel(num_vars, std::move(linear),
                 std::span<const QuadraticTerm>(quadratic.begin(), quadratic.size()), offset) {}

double IsingModel::linear_at(std::size_t i) const {
  const auto it = linear_.find(i);
  return it == linear_.end() ? 0.0 : it->second;
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  const auto it = quadratic_.find({std::min(i, j), std::max(i, j)});
  return it == quadratic_.end() ? 0.0 : it->second;
}

const std::vector<std::size_t>& IsingModel::neighbors(std::size_t i) const {
  if (i >= num_vars_) throw ParameterError("variable index out of range");
  return adjacency_[i];
}

bool IsingModel::has_zero_linear() const noexcept {
  return std::all_of(linear_.begin(), linear_.end(),
                     [](const auto& entry) { return entry.second == 0.0; });
}

IsingModel IsingModel::with_offset(double offset) const {
  IsingModel copy = *this;
  copy.offset_ = offset;
  return copy;
}

double evaluate(const IsingModel& model, std::span<const Spin> z) {
  if (z.size() != model.num_vars()) {
    throw DimensionError("assignment has " + std::to_string(z.size()) + " spins, model has " +
                         std::to_string(model.num_vars()));
  }
  double value = 0.0;
  for (const auto& [i, h] : model.linear()) value += h * z[i];
  for (const auto& [key, j] : model.quadratic()) value += j * (z[key.first] * z[key.second]);
  return value + model.offset();
}

double evaluate_bits(const IsingModel& model, std::uint64_t bits) {
  const auto spin = [bits](std::size_t i) { return ((bits >> i) & 1U) != 0 ? -1 : 1; };
  double value = 0.0;
  for (const auto& [i, h] : model.linear()) value += h * spin(i);
  for (const auto& [key, j] : model.quadratic()) value += j * (spin(key.first) * spin(key.second));
  return value + model.offset();
}

SpinAssignment spins_from_bits(std::uint64_t bits, std::size_t num_vars) {
  SpinAssignment z(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) z[i] = ((bits >> i) & 1U) != 0 ? -1 : 1;
  return z;
}

std::uint64_t bits_from_spins(std::span<const Spin> z) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

bool spin_less(std::span<const Spin> a, std::span<const Spin> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

struct Extremum {
  double value;
  std::vector<std::uint64_t> arg_bits;
};

// Gray-code sweep with incremental energy updates. States within a small
// tolerance of the running optimum are kept as candidates and re-evaluated
// exactly at the end.
Extremum enumerate_extremum(const IsingModel& model, double sign) {
  const std::size_t n = model.num_vars();
  if (n > kBruteForceMaxVars) {
    throw CapacityError("brute force limited to " + std::to_string(kBruteForceMaxVars) +
                        " variables, got " + std::to_string(n));
  }
  std::vector<double> h(n, 0.0);
  for (const auto& [i, value] : model.linear()) h[i] = value;
  std::vector<std::vector<std::pair<std::size_t, double>>> couplings(n);
  double scale = 1.0 + std::abs(model.offset());
  for (const auto& [i, value] : model.linear()) scale += std::abs(value);
  for (const auto& [key, value] : model.quadratic()) {
    couplings[key.first].emplace_back(key.second, value);
    couplings[key.second].emplace_back(key.first, value);
    scale += std::abs(value);
  }
  const double tolerance = 1e-9 * scale;

  std::vector<int> spin(n, 1);
  double energy = sign * evaluate_bits(model, 0);
  double best = energy;
  std::vector<std::pair<std::uint64_t, double>> candidates{{0, energy}};

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto k = static_cast<std::size_t>(std::countr_zero(step));
    double field = h[k];
    for (const auto& [j, value] : couplings[k]) field += value * spin[j];
    energy -= sign * 2.0 * spin[k] * field;
    spin[k] = -spin[k];
    if (energy <= best + tolerance) {
      const std::uint64_t gray = step ^ (step >> 1);
      candidates.emplace_back(gray, energy);
      best = std::min(best, energy);
    }
  }

  Extremum result{std::numeric_limits<double>::infinity(), {}};
  for (const auto& [bits, approx] : candidates) {
    if (approx > best + tolerance) continue;
    const double exact = sign * evaluate_bits(model, bits);
    if (exact < result.value) {
      result.value = exact;
      result.arg_bits.assign(1, bits);
    } else if (exact == result.value) {
      result.arg_bits.push_back(bits);
    }
  }
  result.value *= sign;
  return result;
}

}  // namespace

GroundStates brute_force_min(const IsingModel& model) {
  const Extremum found = enumerate_extremum(model, 1.0);
  GroundStates result{found.value, {}};
  for (const auto bits : found.arg_bits) {
    result.argmins.push_back(spins_from_bits(bits, model.num_vars()));
  }
  std::sort(result.argmins.begin(), result.argmins.end(),
            [](const auto& a, const auto& b) { return spin_less(a, b); });
  result.argmins.erase(std::unique(result.argmins.begin(), result.argmins.end()),
                       result.argmins.end());
  return result;
}

double brute_force_max(const IsingModel& model) { return enumerate_extremum(model, -1.0).value; }

std::size_t degree(const IsingModel& model, std::size_t i) {
  if (i >= model.num_vars()) {
    throw ParameterError("variable index " + std::to_string(i) + " out of range");
  }
  return model.neighbors(i).size();
}

namespace {

IsingModel with_random_signs(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges,
                             Rng& rng) {
  std::sort(edges.begin(), edges.end());
  std::vector<QuadraticTerm> terms;
  terms.reserve(edges.size());
  for (const auto& [i, j] : edges) terms.push_back({i, j, static_cast<double>(rng.spin())});
  return IsingModel(n, {}, terms, 0.0);
}

}  // namespace

IsingModel generate_ba(std::size_t n, std::size_t d_ba, std::uint64_t seed) {
  if (d_ba < 1 || n <= d_ba) {
    throw ParameterError("Barabasi-Albert graph needs n > d_ba >= 1 (n=" + std::to_string(n) +
                         ", d_ba=" + std::to_string(d_ba) + ")");
  }
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // Edge endpoints; a uniform draw is a degree-proportional draw over nodes.
  std::vector<std::size_t> pool;
  for (std::size_t v = 1; v <= d_ba; ++v) {
    edges.emplace_back(v - 1, v);
    pool.push_back(v - 1);
    pool.push_back(v);
  }
  std::vector<std::size_t> targets;
  for (std::size_t v = d_ba + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < d_ba) {
      const std::size_t pick = pool[rng.below(pool.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (const auto t : targets) {
      edges.emplace_back(t, v);
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return with_random_signs(n, std::move(edges), rng);
}

IsingModel generate_regular3(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw ParameterError("3-regular graph needs an even n >= 4, got " + std::to_string(n));
  }
  Rng rng(seed);
  constexpr int kMaxAttempts = 100000;
  std::vector<std::size_t> stubs(3 * n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (std::size_t s = 0; s < stubs.size(); ++s) stubs[s] = s / 3;
    for (std::size_t s = stubs.size() - 1; s > 0; --s) {
      std::swap(stubs[s], stubs[rng.below(s + 1)]);
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool simple = true;
    for (std::size_t s = 0; s < stubs.size() && simple; s += 2) {
      const auto a = std::min(stubs[s], stubs[s + 1]);
      const auto b = std::max(stubs[s], stubs[s + 1]);
      simple = a != b && seen.emplace(a, b).second;
    }
    if (simple) return with_random_signs(n, {seen.begin(), seen.end()}, rng);
  }
  throw Error("pairing model failed to produce a simple 3-regular graph");
}

IsingModel generate_sk(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("SK model needs n >= 2, got " + std::to_string(n));
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return with_random_signs(n, std::move(edges), rng);
}

IsingModel generate(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphKind::BarabasiAlbert:
      return generate_ba(spec.num_nodes, spec.ba_degree, spec.seed);
    case GraphKind::Regular3:
      return generate_regular3(spec.num_nodes, spec.seed);
    case GraphKind::SherringtonKirkpatrick:
      return generate_sk(spec.num_nodes, spec.seed);
  }
  throw ParameterError("unknown graph kind");
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::BarabasiAlbert:
      return "ba";
    case GraphKind::Regular3:
      return "regular3";
    case GraphKind::SherringtonKirkpatrick:
      return "sk";
  }
  return "unknown";
}

GraphKind graph_kind_from_string(const std::string& name) {
  if (name == "ba") return GraphKind::BarabasiAlbert;
  if (name == "regular3") return GraphKind::Regular3;
  if (name == "sk") return GraphKind::SherringtonKirkpatrick;
  throw ParameterError("unknown graph kind '" + name + "' (expected ba, regular3 or sk)");
}

}  // namespace qfreeze
