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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qfreeze/freezer.hpp"
#include "qfreeze/ising.hpp"
#include "qfreeze/json_io.hpp"
#include "qfreeze/models.hpp"
#include "qfreeze/simulator.hpp"
#include "qfreeze/transpiler.hpp"

namespace qfreeze::experiment {

enum class Mode {
  /// Simulate when the model fits the statevector simulator.
  Auto,
  Simulate,
  /// Compile and report circuit metrics only; no size limit.
  MetricsOnly,
};

/// Everything a run depends on. Serialised next to every output so the
/// run can be repeated from the file alone.
struct ExperimentConfig {
  GraphSpec graph{GraphKind::BarabasiAlbert, 16, 1, 7};
  /// Model JSON to load instead of generating `graph`.
  std::string model_file;
  std::size_t p = 1;
  std::vector<std::size_t> m_values{0, 1, 2};
  /// Coupling map JSON; null selects the smallest square grid that fits.
  io::Json coupling;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::uint64_t shots = 100000;
  bool noise = true;
  Mode mode = Mode::Auto;
  bool prune = true;
  HotspotRanking ranking = HotspotRanking::Adaptive;
  EpsParams eps;
  RuntimeParams runtime;
  double frozen_postprocess_s = kFrozenPostprocess;
  OptimizerConfig optimizer;
  std::size_t landscape_rows = 16;
  std::size_t landscape_cols = 16;
  std::string output_dir = "out";
};

io::Json to_json(const ExperimentConfig& config);
/// Fields absent from `json` keep their value in `base`.
ExperimentConfig config_from_json(const io::Json& json, ExperimentConfig base = {});
/// Throws ParameterError on inconsistent settings.
void validate(const ExperimentConfig& config);

IsingModel load_model(const ExperimentConfig& config);
CouplingMap make_coupling(const ExperimentConfig& config, std::size_t num_logical);

struct SubResult {
  std::size_t id = 0;
  FrozenAssignment frozen;
  ParamPoint params;
  double ev_ideal = 0.0;
  double ev_real = 0.0;
  bool optimizer_converged = false;
  /// Lowest-energy sampled outcome lifted to the parent (plus its mirror).
  std::vector<DecodedSolution> decoded;
};

struct LegResult {
  std::size_t m = 0;
  std::vector<std::size_t> hotspots;
  CompiledMetrics metrics;
  CostReport report;
  /// Filled when the leg was simulated.
  std::vector<SubResult> subs;
  std::optional<DecodedSolution> best;
  /// Sub-problem whose ideal expectation is lowest; ARG/AR refer to it.
  std::optional<std::size_t> reference_sub;
};

struct RunResult {
  IsingModel model;
  std::optional<double> c_min;
  bool simulated = false;
  std::vector<LegResult> legs;
};

/// Baseline and FQ(m) legs end to end: freeze, compile one template, bind
/// every sub-problem, then (when simulating) optimise, sample, decode and
/// aggregate.
RunResult run(const ExperimentConfig& config, const IsingModel& model);

/// report.csv, solutions.json and config.json under config.output_dir.
void write_run_outputs(const ExperimentConfig& config, const RunResult& result);

struct LandscapeLeg {
  std::size_t m = 0;
  std::size_t sub_id = 0;
  double eps = 1.0;
  Landscape ideal;
  std::optional<Landscape> noisy;
};

/// p = 1 AR grids for each leg. A frozen leg scans the kept sub-problem that
/// holds the parent's ground state, normalised by the parent's C_min.
std::vector<LandscapeLeg> landscapes(const ExperimentConfig& config, const IsingModel& model,
                                     const std::vector<std::size_t>& legs);
void write_landscape_outputs(const ExperimentConfig& config,
                             const std::vector<LandscapeLeg>& legs);

struct CostRow {
  std::string leg;
  std::size_t m = 0;
  std::size_t kept_circuits = 1;
  bool batching = false;
  bool shared = false;
  double n_batch = 1;
  double runtime_s = 0.0;
  double eps = 1.0;
};

/// Runtime/EPS table over {batching, no batching} x {shared, dedicated}.
std::vector<CostRow> cost_table(const ExperimentConfig& config, const IsingModel& model,
                                const std::vector<std::size_t>& legs);
void write_cost_table_csv(std::ostream& out, const std::vector<CostRow>& rows);

}  // namespace qfreeze::experiment
