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
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qfreeze {

/// A spin value, -1 or +1.
using Spin = std::int8_t;
using SpinAssignment = std::vector<Spin>;

/// One (possibly unordered, possibly repeated) quadratic coefficient as
/// supplied by a caller. The model constructor canonicalises these.
struct QuadraticTerm {
  std::size_t i;
  std::size_t j;
  double value;
};

/// Coefficients of C(z) = sum_i h_i z_i + sum_{i<j} J_ij z_i z_j + offset.
///
/// Storage is sparse. Quadratic keys are canonical (i < j); duplicate
/// unordered pairs are summed and pairs that sum to exactly zero are
/// dropped. Linear entries are kept as given, zeros included, and the
/// circuit builder emits a rotation for each of them.
///
/// Immutable after construction.
class IsingModel {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;
  using LinearMap = std::map<std::size_t, double>;
  using QuadraticMap = std::map<Pair, double>;

  IsingModel() = default;
  IsingModel(std::size_t num_vars, LinearMap linear,
             std::span<const QuadraticTerm> quadratic, double offset = 0.0);
  IsingModel(std::size_t num_vars, LinearMap linear,
             std::initializer_list<QuadraticTerm> quadratic, double offset = 0.0);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const LinearMap& linear() const noexcept { return linear_; }
  const QuadraticMap& quadratic() const noexcept { return quadratic_; }
  double offset() const noexcept { return offset_; }

  /// h_i, or 0 when no entry is stored.
  double linear_at(std::size_t i) const;
  /// J_ij for the unordered pair {i, j}, or 0.
  double coupling(std::size_t i, std::size_t j) const;
  /// Variables sharing a stored coupling with i, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t i) const;

  /// True when every linear coefficient is exactly 0.0.
  bool has_zero_linear() const noexcept;

  IsingModel with_offset(double offset) const;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  std::size_t num_vars_ = 0;
  LinearMap linear_;
  QuadraticMap quadratic_;
  double offset_ = 0.0;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// C(z). Throws DimensionError when z.size() != num_vars.
double evaluate(const IsingModel& model, std::span<const Spin> z);

/// C(z) for the assignment encoded in `bits` (bit i set <=> z_i = -1).
double evaluate_bits(const IsingModel& model, std::uint64_t bits);

/// Spin assignment for a basis-state index, bit 0 <=> +1.
SpinAssignment spins_from_bits(std::uint64_t bits, std::size_t num_vars);
std::uint64_t bits_from_spins(std::span<const Spin> z);

/// Lexicographic order with -1 < +1.
bool spin_less(std::span<const Spin> a, std::span<const Spin> b);

struct GroundStates {
  double energy = 0.0;
  /// Every minimiser, sorted lexicographically (-1 < +1).
  std::vector<SpinAssignment> argmins;
};

inline constexpr std::size_t kBruteForceMaxVars = 24;

/// Exhaustive minimisation over all 2^N assignments (N <= 24).
GroundStates brute_force_min(const IsingModel& model);
/// Maximum of C(z); same enumeration, used for expectation bounds.
double brute_force_max(const IsingModel& model);

/// Number of nonzero couplings incident to i.
std::size_t degree(const IsingModel& model, std::size_t i);

enum class GraphKind { BarabasiAlbert, Regular3, SherringtonKirkpatrick };

struct GraphSpec {
  GraphKind kind = GraphKind::BarabasiAlbert;
  std::size_t num_nodes = 0;
  std::size_t ba_degree = 1;
  std::uint64_t seed = 0;
};

/// Barabasi-Albert graph: a path over the first d_ba + 1 nodes, then every
/// further node attaches d_ba edges to distinct existing nodes chosen with
/// probability proportional to degree. J_ij uniform in {-1, +1}, h = 0.
IsingModel generate_ba(std::size_t n, std::size_t d_ba, std::uint64_t seed);
/// Random simple 3-regular graph by the pairing model with rejection.
IsingModel generate_regular3(std::size_t n, std::uint64_t seed);
/// Fully connected Sherrington-Kirkpatrick instance with +-1 couplings.
IsingModel generate_sk(std::size_t n, std::uint64_t seed);
IsingModel generate(const GraphSpec& spec);

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

}  // namespace qfreeze
