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

#include "qfreeze/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qfreeze/errors.hpp"
#include "qfreeze/rng.hpp"

namespace qfreeze {

namespace {

// Level grouping pays off only when levels are much rarer than amplitudes.
constexpr std::size_t kMaxLevelFraction = 4;

std::size_t checked_dimension(std::size_t num_qubits) {
  if (num_qubits > kMaxSimulatedQubits) {
    throw CapacityError("statevector simulation limited to " +
                        std::to_string(kMaxSimulatedQubits) + " qubits, got " +
                        std::to_string(num_qubits));
  }
  return std::size_t{1} << num_qubits;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(checked_dimension(num_qubits)) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
    throw DimensionError("amplitude count must be a power of two");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
  checked_dimension(num_qubits_);
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= num_qubits_) {
    throw DimensionError("qubit " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qubits_) + " qubits");
  }
}

void StateVector::apply_h(std::size_t q) {
  check_qubit(q);
  const std::size_t mask = std::size_t{1} << q;
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) != 0) continue;
    const Amplitude a = amplitudes_[i];
    const Amplitude b = amplitudes_[i | mask];
    amplitudes_[i] = r * (a + b);
    amplitudes_[i | mask] = r * (a - b);
  }
}

void StateVector::apply_rx(std::size_t q, double theta) {
  check_qubit(q);
  const std::size_t mask = std::size_t{1} << q;
  const double c = std::cos(theta / 2.0);
  const Amplitude mis{0.0, -std::sin(theta / 2.0)};
  for (std::size_t base = 0; base < amplitudes_.size(); base += 2 * mask) {
    for (std::size_t i = base; i < base + mask; ++i) {
      const Amplitude a = amplitudes_[i];
      const Amplitude b = amplitudes_[i | mask];
      amplitudes_[i] = c * a + mis * b;
      amplitudes_[i | mask] = mis * a + c * b;
    }
  }
}

void StateVector::apply_rz(std::size_t q, double theta) {
  check_qubit(q);
  const std::size_t mask = std::size_t{1} << q;
  const Amplitude low = std::polar(1.0, -theta / 2.0);
  const Amplitude high = std::polar(1.0, theta / 2.0);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    amplitudes_[i] *= (i & mask) != 0 ? high : low;
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw ParameterError("CNOT needs two distinct qubits");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(amplitudes_[i], amplitudes_[i | tmask]);
  }
}

void StateVector::apply_swap(std::size_t a, std::size_t b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw ParameterError("SWAP needs two distinct qubits");
  const std::size_t amask = std::size_t{1} << a;
  const std::size_t bmask = std::size_t{1} << b;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & amask) != 0 && (i & bmask) == 0) {
      std::swap(amplitudes_[i], amplitudes_[i ^ amask ^ bmask]);
    }
  }
}

void StateVector::apply(const Gate& gate) {
  const auto angle = [&gate]() {
    if (!gate.angle || !gate.angle->is_bound()) {
      throw UnboundAngleError(to_string(gate.kind) + " on qubit " +
                              std::to_string(gate.qubits[0]) + " has an unbound angle");
    }
    return *gate.angle->value;
  };
  switch (gate.kind) {
    case GateKind::H:
      apply_h(gate.qubits[0]);
      break;
    case GateKind::RX:
      apply_rx(gate.qubits[0], angle());
      break;
    case GateKind::RZ:
      apply_rz(gate.qubits[0], angle());
      break;
    case GateKind::CNOT:
      apply_cnot(gate.qubits[0], gate.qubits[1]);
      break;
    case GateKind::SWAP:
      apply_swap(gate.qubits[0], gate.qubits[1]);
      break;
    case GateKind::MEASURE:
      break;
  }
}

void StateVector::apply_diagonal_phase(std::span<const double> phases, double scale) {
  if (phases.size() != amplitudes_.size()) throw DimensionError("phase table size mismatch");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    amplitudes_[i] *= std::polar(1.0, -scale * phases[i]);
  }
}

void StateVector::apply_level_phase(std::span<const std::uint32_t> level_of,
                                    std::span<const Amplitude> factors) {
  if (level_of.size() != amplitudes_.size()) throw DimensionError("level table size mismatch");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] *= factors[level_of[i]];
}

void StateVector::set_uniform() {
  const double a = 1.0 / std::sqrt(static_cast<double>(amplitudes_.size()));
  std::fill(amplitudes_.begin(), amplitudes_.end(), Amplitude{a, 0.0});
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return std::sqrt(total);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> probs(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), probs.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return probs;
}

StateVector simulate(const Circuit& circuit) {
  StateVector state(circuit.num_qubits);
  for (const auto& gate : circuit.gates) state.apply(gate);
  return state;
}

namespace {

// Sum of the linear and quadratic terms per basis index, in evaluate()'s
// summation order.
std::vector<double> term_sums(const IsingModel& model) {
  const std::size_t dim = checked_dimension(model.num_vars());
  std::vector<double> sums(dim, 0.0);
  for (const auto& [i, h] : model.linear()) {
    for (std::size_t x = 0; x < dim; ++x) sums[x] += h * (((x >> i) & 1U) != 0 ? -1 : 1);
  }
  for (const auto& [key, coupling] : model.quadratic()) {
    const auto [i, j] = key;
    for (std::size_t x = 0; x < dim; ++x) {
      sums[x] += coupling * ((((x >> i) ^ (x >> j)) & 1U) != 0 ? -1 : 1);
    }
  }
  return sums;
}

}  // namespace

std::vector<double> energy_table(const IsingModel& model) {
  std::vector<double> energies = term_sums(model);
  for (auto& e : energies) e += model.offset();
  return energies;
}

double expectation(std::span<const double> energies, const StateVector& state) {
  if (energies.size() != state.dimension()) {
    throw DimensionError("state has " + std::to_string(state.num_qubits()) +
                         " qubits, energy table does not match");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < energies.size(); ++x) total += std::norm(state[x]) * energies[x];
  return total;
}

double expectation(const IsingModel& model, const StateVector& state) {
  if (state.num_qubits() != model.num_vars()) {
    throw DimensionError("state has " + std::to_string(state.num_qubits()) +
                         " qubits, model has " + std::to_string(model.num_vars()) + " variables");
  }
  return expectation(energy_table(model), state);
}

std::string OutputDistribution::bitstring(std::uint64_t index, std::size_t num_qubits) {
  std::string bits(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if (((index >> q) & 1U) != 0) bits[num_qubits - 1 - q] = '1';
  }
  return bits;
}

std::uint64_t OutputDistribution::index_from_bitstring(const std::string& bits) {
  if (bits.size() > 64) throw DimensionError("bit string longer than 64 bits");
  std::uint64_t index = 0;
  for (const char c : bits) {
    if (c != '0' && c != '1') throw ParameterError("bit string must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return index;
}

namespace {

std::vector<double> cumulative(const StateVector& state) {
  std::vector<double> cdf(state.dimension());
  double running = 0.0;
  for (std::size_t x = 0; x < cdf.size(); ++x) {
    running += std::norm(state[x]);
    cdf[x] = running;
  }
  return cdf;
}

std::uint64_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
      it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

OutputDistribution sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  return noisy_sample(state, shots, 1.0, seed);
}

OutputDistribution noisy_sample(const StateVector& state, std::uint64_t shots, double success,
                                std::uint64_t seed) {
  if (shots == 0) throw ParameterError("shots must be at least 1");
  if (!(success >= 0.0 && success <= 1.0)) {
    throw ParameterError("success probability must lie in [0, 1]");
  }
  const std::vector<double> cdf = cumulative(state);
  Rng rng(seed);
  OutputDistribution dist{state.num_qubits(), shots, {}};
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const bool ideal = success >= 1.0 || (success > 0.0 && rng.uniform() < success);
    const std::uint64_t outcome = ideal ? draw(cdf, rng) : rng.below(state.dimension());
    ++dist.counts[outcome];
  }
  return dist;
}

double sampled_expectation(const IsingModel& model, const OutputDistribution& dist) {
  if (dist.num_qubits != model.num_vars()) {
    throw DimensionError("distribution width does not match the model");
  }
  if (dist.shots == 0) throw EmptyInputError("distribution has no shots");
  double total = 0.0;
  for (const auto& [index, count] : dist.counts) {
    total += static_cast<double>(count) * evaluate_bits(model, index);
  }
  return total / static_cast<double>(dist.shots);
}

QaoaEvaluator::QaoaEvaluator(const IsingModel& model, std::size_t p)
    : num_qubits_(model.num_vars()), layers_(p), offset_(model.offset()) {
  if (p == 0) throw ParameterError("QAOA needs at least one layer");
  phases_ = term_sums(model);
  energies_ = phases_;
  for (auto& e : energies_) e += offset_;

  levels_ = phases_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  if (levels_.size() * kMaxLevelFraction > phases_.size()) {
    levels_.clear();
    return;
  }
  level_of_.resize(phases_.size());
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    level_of_[i] = static_cast<std::uint32_t>(
        std::lower_bound(levels_.begin(), levels_.end(), phases_[i]) - levels_.begin());
  }
}

StateVector QaoaEvaluator::state(const ParamPoint& point) const {
  if (point.gammas.size() != layers_ || point.betas.size() != layers_) {
    throw DimensionError("parameter point does not match the layer count");
  }
  StateVector psi(num_qubits_);
  psi.set_uniform();
  for (std::size_t layer = 0; layer < layers_; ++layer) {
    if (levels_.empty()) {
      psi.apply_diagonal_phase(phases_, point.gammas[layer]);
    } else {
      std::vector<Amplitude> factors(levels_.size());
      for (std::size_t l = 0; l < levels_.size(); ++l) {
        factors[l] = std::polar(1.0, -point.gammas[layer] * levels_[l]);
      }
      psi.apply_level_phase(level_of_, factors);
    }
    for (std::size_t q = 0; q < num_qubits_; ++q) psi.apply_rx(q, 2.0 * point.betas[layer]);
  }
  return psi;
}

double QaoaEvaluator::expectation(const ParamPoint& point) const {
  return qfreeze::expectation(energies_, state(point));
}

double Landscape::spread() const {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

Landscape landscape(const IsingModel& model, std::size_t rows, std::size_t cols,
                    std::optional<double> success, std::optional<double> c_min) {
  if (rows == 0 || cols == 0) throw ParameterError("landscape grid must be non-empty");
  if (success && !(*success >= 0.0 && *success <= 1.0)) {
    throw ParameterError("success probability must lie in [0, 1]");
  }
  const double minimum = c_min ? *c_min : brute_force_min(model).energy;
  if (minimum == 0.0) throw UndefinedMetricError("AR is undefined when C_min == 0");

  const QaoaEvaluator evaluator(model, 1);
  Landscape result;
  for (std::size_t r = 0; r < rows; ++r) {
    result.gamma_axis.push_back(std::numbers::pi * static_cast<double>(r) /
                                static_cast<double>(rows));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    result.beta_axis.push_back(std::numbers::pi / 2.0 * static_cast<double>(c) /
                               static_cast<double>(cols));
  }
  result.values.reserve(rows * cols);
  for (const double gamma : result.gamma_axis) {
    for (const double beta : result.beta_axis) {
      double ev = evaluator.expectation({{gamma}, {beta}});
      // Uniform noise averages every +-1 product to zero, leaving the offset.
      if (success) ev = *success * ev + (1.0 - *success) * model.offset();
      result.values.push_back(ev / minimum);
    }
  }
  return result;
}

}  // namespace qfreeze
