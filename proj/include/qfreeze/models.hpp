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
#include <optional>
#include <ostream>
#include <vector>

#include "qfreeze/freezer.hpp"
#include "qfreeze/ising.hpp"
#include "qfreeze/transpiler.hpp"

namespace qfreeze {

/// Error model for the expected probability of success. Defaults are an
/// optimistic near-term device: 0.1% CNOT error, 0.5% readout error, 500 us
/// coherence time.
struct EpsParams {
  double cnot_error_rate = 0.001;
  double readout_error_rate = 0.005;
  double coherence_time_s = 500e-6;
  GateTimes gate_times;
};

/// (1 - e_cx)^cnots * (1 - e_ro)^measurements * exp(-qubits * duration / T).
/// SWAPs count as three CNOTs; duration is the ASAP critical path under
/// params.gate_times.
double eps(const Circuit& circuit, std::size_t active_qubits, const EpsParams& params);
double eps(const CompiledCircuit& compiled, const EpsParams& params);

/// 100 * |(ev_ideal - ev_real) / ev_ideal|.
double arg(double ev_ideal, double ev_real);
/// ev / c_min.
double ar(double c_min, double ev);
/// ev / brute_force_min(model).
double ar(const IsingModel& model, double ev);

/// Inputs of the end-to-end runtime model. Defaults describe the baseline on
/// a dedicated device without batching.
struct RuntimeParams {
  double iterations = 1000;
  double trials = 25000;
  double trial_time_s = 1e-3;
  double batch_capacity = 1;
  double cloud_latency_s = 0;
  double optimizer_latency_per_iter_s = 60;
  double compile_latency_s = 7200;
  double postprocess_s = 0;
  double num_circuits = 1;
  /// Add the optimizer latency once instead of once per iteration.
  bool optimizer_latency_once = false;
};

inline constexpr double kBatchCapacity = 900;
inline constexpr double kSharedCloudLatency = 1800;
inline constexpr double kFrozenPostprocess = 60;

/// ceil(num_circuits / batch_capacity).
double batch_count(const RuntimeParams& params);

/// T = compile + I * N_batch * (trials * t_trial + cloud) + opt + pp, where
/// opt = I * per-iteration latency unless optimizer_latency_once is set.
double workflow_runtime(const RuntimeParams& params);

struct CostReport {
  std::size_t m = 0;
  std::size_t kept_circuits = 1;
  std::size_t cnot_total = 0;
  std::size_t cnot_from_swaps = 0;
  std::size_t depth = 0;
  double duration_s = 0.0;
  double eps = 1.0;
  double runtime_s = 0.0;
  std::optional<double> arg;
  std::optional<double> ar;
};

struct CostCurveOptions {
  EpsParams eps;
  RuntimeParams runtime;
  /// Post-processing time charged to every m > 0 row.
  double frozen_postprocess_s = kFrozenPostprocess;
  bool prune = true;
  HotspotRanking ranking = HotspotRanking::Adaptive;
  std::uint64_t seed = 0;
};

/// Quantum cost of freezing the top-m hotspots for m = 0..m_max: one routed
/// template per m, its metrics, EPS and workflow runtime. arg/ar stay empty.
std::vector<CostReport> cost_curve(const IsingModel& model, const CouplingMap& map, std::size_t p,
                                   std::size_t m_max, const CostCurveOptions& options);

/// Cost row for an already compiled leg.
CostReport cost_report(std::size_t m, std::size_t kept, const CompiledCircuit& compiled,
                       const EpsParams& eps_params, RuntimeParams runtime);

/// Header plus one row per report; absent arg/ar are written as empty cells.
void write_cost_csv(std::ostream& out, const std::vector<CostReport>& rows);

}  // namespace qfreeze
