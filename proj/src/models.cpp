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

#include "qfreeze/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qfreeze/errors.hpp"

namespace qfreeze {

double eps(const Circuit& circuit, std::size_t active_qubits, const EpsParams& params) {
  const auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(params.cnot_error_rate) || !in_unit(params.readout_error_rate)) {
    throw ParameterError("error rates must lie in [0, 1]");
  }
  if (!(params.coherence_time_s > 0.0)) throw ParameterError("coherence time must be positive");

  const Circuit flat = decompose_swaps(circuit);
  const GateCensus census = gate_census(flat);
  const double duration = duration_estimate(flat, params.gate_times);
  return std::pow(1.0 - params.cnot_error_rate, static_cast<double>(census.cnot)) *
         std::pow(1.0 - params.readout_error_rate, static_cast<double>(census.measure)) *
         std::exp(-static_cast<double>(active_qubits) * duration / params.coherence_time_s);
}

double eps(const CompiledCircuit& compiled, const EpsParams& params) {
  return eps(compiled.circuit, compiled.num_logical, params);
}

double arg(double ev_ideal, double ev_real) {
  if (ev_ideal == 0.0) throw UndefinedMetricError("ARG is undefined when EV_ideal == 0");
  return 100.0 * std::abs((ev_ideal - ev_real) / ev_ideal);
}

double ar(double c_min, double ev) {
  if (c_min == 0.0) throw UndefinedMetricError("AR is undefined when C_min == 0");
  return ev / c_min;
}

double ar(const IsingModel& model, double ev) { return ar(brute_force_min(model).energy, ev); }

double batch_count(const RuntimeParams& params) {
  if (params.batch_capacity < 1) throw ParameterError("batch capacity must be at least 1");
  return std::ceil(params.num_circuits / params.batch_capacity);
}

double workflow_runtime(const RuntimeParams& params) {
  for (const double value :
       {params.iterations, params.trials, params.trial_time_s, params.cloud_latency_s,
        params.optimizer_latency_per_iter_s, params.compile_latency_s, params.postprocess_s,
        params.num_circuits}) {
    if (!(value >= 0.0)) throw ParameterError("runtime parameters must be non-negative");
  }
  const double batches = batch_count(params);
  const double optimizer = params.optimizer_latency_once
                               ? params.optimizer_latency_per_iter_s
                               : params.iterations * params.optimizer_latency_per_iter_s;
  return params.compile_latency_s +
         params.iterations * batches * (params.trials * params.trial_time_s +
                                        params.cloud_latency_s) +
         optimizer + params.postprocess_s;
}

CostReport cost_report(std::size_t m, std::size_t kept, const CompiledCircuit& compiled,
                       const EpsParams& eps_params, RuntimeParams runtime) {
  runtime.num_circuits = static_cast<double>(kept);
  CostReport row;
  row.m = m;
  row.kept_circuits = kept;
  row.cnot_total = compiled.metrics.cnot_total;
  row.cnot_from_swaps = compiled.metrics.cnot_from_swaps;
  row.depth = compiled.metrics.depth;
  row.duration_s = duration_estimate(decompose_swaps(compiled.circuit), eps_params.gate_times);
  row.eps = eps(compiled, eps_params);
  row.runtime_s = workflow_runtime(runtime);
  return row;
}

std::vector<CostReport> cost_curve(const IsingModel& model, const CouplingMap& map, std::size_t p,
                                   std::size_t m_max, const CostCurveOptions& options) {
  if (m_max > kMaxFrozen) {
    throw CapacityError("m_max " + std::to_string(m_max) + " exceeds " +
                        std::to_string(kMaxFrozen));
  }
  if (m_max >= model.num_vars()) {
    throw ParameterError("m_max must leave at least one unfrozen variable");
  }
  std::vector<CostReport> rows;
  const std::vector<std::size_t> order = select_hotspots(model, m_max, options.ranking);
  for (std::size_t m = 0; m <= m_max; ++m) {
    // Pattern 0 stands in for every sign pattern.
    const SubProblem first = freeze_pattern(model, std::span(order).first(m), 0);
    const TemplateExecutable tmpl = compile_template(first.model, p, map, options.seed);
    RuntimeParams runtime = options.runtime;
    if (m > 0) runtime.postprocess_s = options.frozen_postprocess_s;
    rows.push_back(cost_report(m, kept_subproblem_count(model, m, options.prune), tmpl.compiled,
                               options.eps, runtime));
  }
  return rows;
}

namespace {

std::string format_number(double value) {
  char text[32];
  std::snprintf(text, sizeof text, "%.10g", value);
  return text;
}

}  // namespace

void write_cost_csv(std::ostream& out, const std::vector<CostReport>& rows) {
  out << "m,kept_circuits,cnot_total,cnot_from_swaps,depth,duration_s,eps,runtime_s,arg,ar\n";
  for (const auto& row : rows) {
    out << row.m << ',' << row.kept_circuits << ',' << row.cnot_total << ','
        << row.cnot_from_swaps << ',' << row.depth << ',' << format_number(row.duration_s) << ','
        << format_number(row.eps) << ',' << format_number(row.runtime_s) << ','
        << (row.arg ? format_number(*row.arg) : "") << ','
        << (row.ar ? format_number(*row.ar) : "") << '\n';
  }
}

}  // namespace qfreeze
