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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfreeze/circuit.hpp"
#include "qfreeze/ising.hpp"

namespace qfreeze {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxSimulatedQubits = 22;

/// Dense state over n qubits, little-endian: qubit q is bit q of the index.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t num_qubits);
  explicit StateVector(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }

  void apply_h(std::size_t q);
  /// exp(-i theta X / 2).
  void apply_rx(std::size_t q, double theta);
  /// exp(-i theta Z / 2).
  void apply_rz(std::size_t q, double theta);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply_swap(std::size_t a, std::size_t b);
  void apply(const Gate& gate);

  /// Multiplies amplitude x by exp(-i phases[x] * scale).
  void apply_diagonal_phase(std::span<const double> phases, double scale);
  /// Multiplies amplitude i by factors[level_of[i]].
  void apply_level_phase(std::span<const std::uint32_t> level_of, std::span<const Amplitude> factors);
  void set_uniform();

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  void check_qubit(std::size_t q) const;

  std::size_t num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Runs every gate in order from |0...0>. Measurements are ignored.
/// Throws UnboundAngleError on symbolic angles, CapacityError beyond 22 qubits.
StateVector simulate(const Circuit& circuit);

/// C(z) for every basis index (bit b of the index <=> z_b = 1 - 2b).
std::vector<double> energy_table(const IsingModel& model);

/// sum_x |amp_x|^2 C(z(x)), offset included.
double expectation(const IsingModel& model, const StateVector& state);
double expectation(std::span<const double> energies, const StateVector& state);

/// Measurement record. Keys are basis indices; bit q of a key is qubit q.
struct OutputDistribution {
  std::size_t num_qubits = 0;
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  /// Bit string with qubit 0 as the rightmost character.
  static std::string bitstring(std::uint64_t index, std::size_t num_qubits);
  static std::uint64_t index_from_bitstring(const std::string& bits);
};

/// Multinomial draw of `shots` outcomes from |amp|^2. Deterministic per seed.
OutputDistribution sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Global-depolarising surrogate: each shot comes from the ideal
/// distribution with probability `success` (an EPS value) and is uniformly
/// random otherwise.
OutputDistribution noisy_sample(const StateVector& state, std::uint64_t shots, double success,
                                std::uint64_t seed);

/// Empirical mean of C over the recorded shots.
double sampled_expectation(const IsingModel& model, const OutputDistribution& dist);

/// Statevector of the p-layer QAOA circuit for `model`, computed by applying
/// the cost layer as one diagonal phase (the circuit's RZ/CNOT blocks
/// multiply to exp(-i gamma (C - offset)) exactly) and the mixer as RX
/// rotations.
class QaoaEvaluator {
 public:
  QaoaEvaluator(const IsingModel& model, std::size_t p);

  std::size_t layers() const noexcept { return layers_; }
  const std::vector<double>& energies() const noexcept { return energies_; }

  StateVector state(const ParamPoint& point) const;
  double expectation(const ParamPoint& point) const;

 private:
  std::size_t num_qubits_;
  std::size_t layers_;
  double offset_;
  std::vector<double> energies_;
  std::vector<double> phases_;
  // Distinct phase values and, per basis state, the index of its value.
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_of_;
};

struct OptimizerConfig {
  std::size_t starts = 8;
  /// Iteration cap I per start.
  std::size_t max_iterations = 300;
  /// Simplex size at which a start counts as converged.
  double tolerance = 1e-6;
  double initial_step = 0.2;
};

struct OptimizeResult {
  ParamPoint best;
  double value = 0.0;
  /// Best simplex value after each iteration of the winning start.
  std::vector<double> trace;
  bool converged = false;
  std::size_t evaluations = 0;
};

/// Multi-start Nelder-Mead over the 2p QAOA angles, minimising the
/// expectation. Starts are uniform in gamma in [0, pi), beta in [0, pi/2).
OptimizeResult optimize(const IsingModel& model, std::size_t p, const OptimizerConfig& config,
                        std::uint64_t seed);
OptimizeResult optimize(const QaoaEvaluator& evaluator, const OptimizerConfig& config,
                        std::uint64_t seed);

/// AR = EV / C_min over a p = 1 grid; rows follow gamma, columns beta.
struct Landscape {
  std::vector<double> gamma_axis;
  std::vector<double> beta_axis;
  /// Row-major, gamma_axis.size() x beta_axis.size().
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * beta_axis.size() + col]; }
  double spread() const;
};

/// gamma_r = pi r / rows, beta_c = (pi / 2) c / cols. With `success` set, EV
/// is the noise-mixture expectation success * EV + (1 - success) * mean(C).
/// `c_min` defaults to brute_force_min(model); pass the parent's value when
/// scanning a sub-problem. Throws UndefinedMetricError when C_min == 0.
Landscape landscape(const IsingModel& model, std::size_t rows, std::size_t cols,
                    std::optional<double> success = std::nullopt,
                    std::optional<double> c_min = std::nullopt);

}  // namespace qfreeze
