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

#include "qfreeze/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>
#include <type_traits>

#include "qfreeze/errors.hpp"
#include "qfreeze/rng.hpp"

namespace qfreeze::experiment {

namespace {

// Runs task(i) for i in [0, count) on up to `jobs` threads.
template <class Task>
void parallel_for(std::size_t count, std::size_t jobs, Task&& task) {
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Auto:
      return "auto";
    case Mode::Simulate:
      return "simulate";
    case Mode::MetricsOnly:
      return "metrics";
  }
  return "auto";
}

Mode mode_from_string(const std::string& name) {
  if (name == "auto") return Mode::Auto;
  if (name == "simulate") return Mode::Simulate;
  if (name == "metrics") return Mode::MetricsOnly;
  throw ParameterError("unknown mode '" + name + "' (expected auto, simulate or metrics)");
}

std::string format_number(double value) {
  char text[32];
  std::snprintf(text, sizeof text, "%.10g", value);
  return text;
}

io::Json solution_to_json(const DecodedSolution& s) {
  std::vector<int> spins(s.assignment.begin(), s.assignment.end());
  return io::Json{{"assignment", spins},
                  {"value", s.value},
                  {"source", s.source},
                  {"via_mirror", s.via_mirror}};
}

}  // namespace

io::Json to_json(const ExperimentConfig& c) {
  io::Json graph{{"kind", to_string(c.graph.kind)},
                 {"num_nodes", c.graph.num_nodes},
                 {"ba_degree", c.graph.ba_degree},
                 {"seed", c.graph.seed}};
  io::Json eps{{"cnot_error_rate", c.eps.cnot_error_rate},
               {"readout_error_rate", c.eps.readout_error_rate},
               {"coherence_time_s", c.eps.coherence_time_s},
               {"gate_times",
                {{"cnot", c.eps.gate_times.cnot},
                 {"single", c.eps.gate_times.single},
                 {"measure", c.eps.gate_times.measure}}}};
  const auto& r = c.runtime;
  io::Json runtime{{"iterations", r.iterations},
                   {"trials", r.trials},
                   {"trial_time_s", r.trial_time_s},
                   {"batch_capacity", r.batch_capacity},
                   {"cloud_latency_s", r.cloud_latency_s},
                   {"optimizer_latency_per_iter_s", r.optimizer_latency_per_iter_s},
                   {"compile_latency_s", r.compile_latency_s},
                   {"postprocess_s", r.postprocess_s},
                   {"optimizer_latency_once", r.optimizer_latency_once}};
  io::Json optimizer{{"starts", c.optimizer.starts},
                     {"max_iterations", c.optimizer.max_iterations},
                     {"tolerance", c.optimizer.tolerance},
                     {"initial_step", c.optimizer.initial_step}};
  return io::Json{{"graph", graph},
                  {"model_file", c.model_file},
                  {"p", c.p},
                  {"m", c.m_values},
                  {"coupling", c.coupling},
                  {"seed", c.seed},
                  {"jobs", c.jobs},
                  {"shots", c.shots},
                  {"noise", c.noise},
                  {"mode", mode_name(c.mode)},
                  {"prune", c.prune},
                  {"hotspots", c.ranking == HotspotRanking::Adaptive ? "adaptive" : "static"},
                  {"eps", eps},
                  {"runtime", runtime},
                  {"frozen_postprocess_s", c.frozen_postprocess_s},
                  {"optimizer", optimizer},
                  {"landscape", {{"rows", c.landscape_rows}, {"cols", c.landscape_cols}}},
                  {"output_dir", c.output_dir}};
}

namespace {

bool non_negative_integer(const io::Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

}  // namespace

ExperimentConfig config_from_json(const io::Json& json, ExperimentConfig c) {
  try {
    const auto read = [](const io::Json& obj, const char* key, auto& field) {
      using Field = std::decay_t<decltype(field)>;
      if (!obj.contains(key)) return;
      const auto& value = obj.at(key);
      if constexpr (std::is_unsigned_v<Field> && !std::is_same_v<Field, bool>) {
        if (!non_negative_integer(value)) {
          throw ParameterError(std::string(key) + " must be a non-negative integer");
        }
      } else if constexpr (std::is_same_v<Field, std::vector<std::size_t>>) {
        if (!value.is_array() ||
            !std::all_of(value.begin(), value.end(),
                         non_negative_integer)) {
          throw ParameterError(std::string(key) + " must list non-negative integers");
        }
      }
      field = value.get<Field>();
    };
    if (json.contains("graph")) {
      const auto& g = json.at("graph");
      if (g.contains("kind")) c.graph.kind = graph_kind_from_string(g.at("kind").get<std::string>());
      read(g, "num_nodes", c.graph.num_nodes);
      read(g, "ba_degree", c.graph.ba_degree);
      read(g, "seed", c.graph.seed);
    }
    read(json, "model_file", c.model_file);
    read(json, "p", c.p);
    read(json, "m", c.m_values);
    if (json.contains("coupling")) c.coupling = json.at("coupling");
    read(json, "seed", c.seed);
    read(json, "jobs", c.jobs);
    read(json, "shots", c.shots);
    read(json, "noise", c.noise);
    if (json.contains("mode")) c.mode = mode_from_string(json.at("mode").get<std::string>());
    read(json, "prune", c.prune);
    if (json.contains("hotspots")) {
      const auto name = json.at("hotspots").get<std::string>();
      if (name != "adaptive" && name != "static") {
        throw ParameterError("hotspots must be 'adaptive' or 'static'");
      }
      c.ranking = name == "static" ? HotspotRanking::Static : HotspotRanking::Adaptive;
    }
    if (json.contains("eps")) {
      const auto& e = json.at("eps");
      read(e, "cnot_error_rate", c.eps.cnot_error_rate);
      read(e, "readout_error_rate", c.eps.readout_error_rate);
      read(e, "coherence_time_s", c.eps.coherence_time_s);
      if (e.contains("gate_times")) {
        const auto& t = e.at("gate_times");
        read(t, "cnot", c.eps.gate_times.cnot);
        read(t, "single", c.eps.gate_times.single);
        read(t, "measure", c.eps.gate_times.measure);
      }
    }
    if (json.contains("runtime")) {
      const auto& r = json.at("runtime");
      read(r, "iterations", c.runtime.iterations);
      read(r, "trials", c.runtime.trials);
      read(r, "trial_time_s", c.runtime.trial_time_s);
      read(r, "batch_capacity", c.runtime.batch_capacity);
      read(r, "cloud_latency_s", c.runtime.cloud_latency_s);
      read(r, "optimizer_latency_per_iter_s", c.runtime.optimizer_latency_per_iter_s);
      read(r, "compile_latency_s", c.runtime.compile_latency_s);
      read(r, "postprocess_s", c.runtime.postprocess_s);
      read(r, "optimizer_latency_once", c.runtime.optimizer_latency_once);
    }
    read(json, "frozen_postprocess_s", c.frozen_postprocess_s);
    if (json.contains("optimizer")) {
      const auto& o = json.at("optimizer");
      read(o, "starts", c.optimizer.starts);
      read(o, "max_iterations", c.optimizer.max_iterations);
      read(o, "tolerance", c.optimizer.tolerance);
      read(o, "initial_step", c.optimizer.initial_step);
    }
    if (json.contains("landscape")) {
      read(json.at("landscape"), "rows", c.landscape_rows);
      read(json.at("landscape"), "cols", c.landscape_cols);
    }
    read(json, "output_dir", c.output_dir);
  } catch (const io::Json::exception& e) {
    throw ParameterError(std::string("malformed experiment config: ") + e.what());
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.p == 0) throw ParameterError("p must be at least 1");
  if (c.m_values.empty()) throw ParameterError("at least one m value is required");
  if (c.shots == 0) throw ParameterError("shots must be at least 1");
  if (c.jobs == 0) throw ParameterError("jobs must be at least 1");
  if (c.optimizer.starts == 0) throw ParameterError("optimizer needs at least one start");
  if (c.landscape_rows == 0 || c.landscape_cols == 0) {
    throw ParameterError("landscape grid must be non-empty");
  }
  for (const auto m : c.m_values) {
    if (m > kMaxFrozen) {
      throw CapacityError("m = " + std::to_string(m) + " exceeds " + std::to_string(kMaxFrozen));
    }
  }
  const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate_ok(c.eps.cnot_error_rate) || !rate_ok(c.eps.readout_error_rate)) {
    throw ParameterError("error rates must lie in [0, 1]");
  }
  if (c.runtime.batch_capacity < 1) throw ParameterError("batch capacity must be at least 1");
}

IsingModel load_model(const ExperimentConfig& config) {
  if (!config.model_file.empty()) {
    return io::model_from_json(io::read_json_file(config.model_file));
  }
  return generate(config.graph);
}

CouplingMap make_coupling(const ExperimentConfig& config, std::size_t num_logical) {
  if (!config.coupling.is_null()) {
    CouplingMap map = io::coupling_from_json(config.coupling);
    if (map.num_physical() < num_logical) {
      throw CapacityError("coupling map has " + std::to_string(map.num_physical()) +
                          " qubits; the model needs " + std::to_string(num_logical));
    }
    return map;
  }
  auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(num_logical))));
  while (side * side < num_logical) ++side;
  return grid_map(std::max<std::size_t>(side, 1), std::max<std::size_t>(side, 1));
}

namespace {

SubResult simulate_sub(const ExperimentConfig& config, const SubProblem& sub,
                       const IsingModel& parent, double success, std::size_t m) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(m) << 32) | sub.id;
  const QaoaEvaluator evaluator(sub.model, config.p);
  const OptimizeResult opt =
      optimize(evaluator, config.optimizer, derive_seed(config.seed, 2 * stream));
  const StateVector state = evaluator.state(opt.best);

  SubResult result;
  result.id = sub.id;
  result.frozen = sub.frozen;
  result.params = opt.best;
  result.optimizer_converged = opt.converged;
  result.ev_ideal = expectation(evaluator.energies(), state);
  const std::uint64_t sample_seed = derive_seed(config.seed, 2 * stream + 1);
  const OutputDistribution dist = config.noise
                                      ? noisy_sample(state, config.shots, success, sample_seed)
                                      : sample(state, config.shots, sample_seed);
  result.ev_real = sampled_expectation(sub.model, dist);

  std::uint64_t best_index = dist.counts.begin()->first;
  for (const auto& [index, count] : dist.counts) {
    if (evaluator.energies()[index] < evaluator.energies()[best_index]) best_index = index;
  }
  const SpinAssignment child = spins_from_bits(best_index, sub.model.num_vars());
  result.decoded = decode(sub, child, parent);
  return result;
}

}  // namespace

RunResult run(const ExperimentConfig& config, const IsingModel& model) {
  validate(config);
  const std::size_t n = model.num_vars();
  for (const auto m : config.m_values) {
    if (m >= n) {
      throw ParameterError("m = " + std::to_string(m) + " leaves no variable of " +
                           std::to_string(n));
    }
  }
  const bool fits = n <= kMaxSimulatedQubits;
  if (config.mode == Mode::Simulate && !fits) {
    throw CapacityError("model has " + std::to_string(n) + " variables; simulation is limited to " +
                        std::to_string(kMaxSimulatedQubits) + " (use metrics mode)");
  }

  RunResult result;
  result.model = model;
  result.simulated = config.mode != Mode::MetricsOnly && fits;
  if (result.simulated) result.c_min = brute_force_min(model).energy;

  const CouplingMap map = make_coupling(config, n);
  const std::size_t max_m = *std::max_element(config.m_values.begin(), config.m_values.end());
  const std::vector<std::size_t> order = select_hotspots(model, max_m, config.ranking);

  for (const auto m : config.m_values) {
    LegResult leg;
    leg.m = m;
    leg.hotspots.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    const std::vector<SubProblem> subs = freeze_many(model, leg.hotspots, config.prune);
    const TemplateExecutable tmpl = compile_template(subs.front().model, config.p, map, config.seed);
    for (const auto& sub : subs) {
      if (bind_template(tmpl, sub.model).metrics != tmpl.compiled.metrics) {
        throw InvariantError("bound executable metrics differ from the template");
      }
    }
    leg.metrics = tmpl.compiled.metrics;
    RuntimeParams runtime = config.runtime;
    if (m > 0) runtime.postprocess_s = config.frozen_postprocess_s;
    leg.report = cost_report(m, subs.size(), tmpl.compiled, config.eps, runtime);

    if (result.simulated) {
      leg.subs.resize(subs.size());
      parallel_for(subs.size(), config.jobs, [&](std::size_t i) {
        leg.subs[i] = simulate_sub(config, subs[i], model, leg.report.eps, m);
      });
      std::vector<DecodedSolution> all;
      std::size_t reference = 0;
      for (std::size_t i = 0; i < leg.subs.size(); ++i) {
        const auto& sub = leg.subs[i];
        all.insert(all.end(), sub.decoded.begin(), sub.decoded.end());
        if (sub.ev_ideal < leg.subs[reference].ev_ideal) reference = i;
      }
      leg.best = aggregate(all);
      leg.reference_sub = leg.subs[reference].id;
      const auto& ref = leg.subs[reference];
      if (ref.ev_ideal != 0.0) leg.report.arg = arg(ref.ev_ideal, ref.ev_real);
      if (result.c_min && *result.c_min != 0.0) leg.report.ar = ar(*result.c_min, ref.ev_real);
      if (leg.best->value < *result.c_min) {
        throw InvariantError("decoded solution beats the exhaustive minimum");
      }
    }
    result.legs.push_back(std::move(leg));
  }
  return result;
}

void write_run_outputs(const ExperimentConfig& config, const RunResult& result) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  io::write_json_file(dir / "config.json", to_json(config));
  {
    std::vector<CostReport> rows;
    for (const auto& leg : result.legs) rows.push_back(leg.report);
    std::ofstream out(dir / "report.csv");
    if (!out) throw ParameterError("cannot write " + (dir / "report.csv").string());
    write_cost_csv(out, rows);
  }
  io::Json legs = io::Json::array();
  for (const auto& leg : result.legs) {
    io::Json entry{{"m", leg.m}, {"hotspots", leg.hotspots}};
    entry["best"] = leg.best ? solution_to_json(*leg.best) : io::Json(nullptr);
    entry["reference_sub"] = leg.reference_sub ? io::Json(*leg.reference_sub) : io::Json(nullptr);
    io::Json subs = io::Json::array();
    for (const auto& sub : leg.subs) {
      io::Json frozen = io::Json::array();
      for (const auto& f : sub.frozen) frozen.push_back({f.index, static_cast<int>(f.value)});
      io::Json decoded = io::Json::array();
      for (const auto& d : sub.decoded) decoded.push_back(solution_to_json(d));
      subs.push_back({{"id", sub.id},
                      {"frozen", frozen},
                      {"gammas", sub.params.gammas},
                      {"betas", sub.params.betas},
                      {"ev_ideal", sub.ev_ideal},
                      {"ev_real", sub.ev_real},
                      {"optimizer_converged", sub.optimizer_converged},
                      {"decoded", decoded}});
    }
    entry["subproblems"] = std::move(subs);
    legs.push_back(std::move(entry));
  }
  io::write_json_file(dir / "solutions.json",
                      io::Json{{"model_id", model_id(result.model)},
                               {"c_min", result.c_min ? io::Json(*result.c_min) : io::Json(nullptr)},
                               {"simulated", result.simulated},
                               {"legs", std::move(legs)}});
}

std::vector<LandscapeLeg> landscapes(const ExperimentConfig& config, const IsingModel& model,
                                     const std::vector<std::size_t>& legs) {
  validate(config);
  const std::size_t n = model.num_vars();
  if (n > kMaxSimulatedQubits) {
    throw CapacityError("landscapes need a model of at most " +
                        std::to_string(kMaxSimulatedQubits) + " variables");
  }
  const double c_min = brute_force_min(model).energy;
  const CouplingMap map = make_coupling(config, n);
  std::vector<LandscapeLeg> out;
  for (const auto m : legs) {
    if (m >= n) throw ParameterError("m = " + std::to_string(m) + " leaves no variable");
    const std::vector<std::size_t> hotspots = select_hotspots(model, m, config.ranking);
    const std::vector<SubProblem> subs = freeze_many(model, hotspots, config.prune);
    // The kept sub-problem containing a parent ground state (lowest id on ties).
    std::size_t chosen = 0;
    double chosen_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const double sub_min = brute_force_min(subs[i].model).energy;
      if (sub_min < chosen_min) {
        chosen = i;
        chosen_min = sub_min;
      }
    }
    const SubProblem& sub = subs[chosen];
    const TemplateExecutable tmpl = compile_template(sub.model, 1, map, config.seed);
    LandscapeLeg leg;
    leg.m = m;
    leg.sub_id = sub.id;
    leg.eps = eps(tmpl.compiled, config.eps);
    leg.ideal = landscape(sub.model, config.landscape_rows, config.landscape_cols, std::nullopt,
                          c_min);
    if (config.noise) {
      leg.noisy = landscape(sub.model, config.landscape_rows, config.landscape_cols, leg.eps,
                            c_min);
    }
    out.push_back(std::move(leg));
  }
  return out;
}

void write_landscape_outputs(const ExperimentConfig& config,
                             const std::vector<LandscapeLeg>& legs) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  io::write_json_file(dir / "config.json", to_json(config));
  const auto write = [&](const std::string& name, const Landscape& grid) {
    std::ofstream out(dir / name);
    if (!out) throw ParameterError("cannot write " + (dir / name).string());
    io::write_landscape_csv(out, grid);
  };
  for (const auto& leg : legs) {
    const std::string stem = "landscape_m" + std::to_string(leg.m);
    if (leg.noisy) {
      write(stem + ".csv", *leg.noisy);
      write(stem + "_ideal.csv", leg.ideal);
    } else {
      write(stem + ".csv", leg.ideal);
    }
  }
}

std::vector<CostRow> cost_table(const ExperimentConfig& config, const IsingModel& model,
                                const std::vector<std::size_t>& legs) {
  validate(config);
  const CouplingMap map = make_coupling(config, model.num_vars());
  std::size_t max_m = 0;
  for (const auto m : legs) {
    if (m >= model.num_vars()) {
      throw ParameterError("m = " + std::to_string(m) + " leaves no variable");
    }
    max_m = std::max(max_m, m);
  }
  const std::vector<std::size_t> order = select_hotspots(model, max_m, config.ranking);
  std::vector<CostRow> rows;
  for (const auto m : legs) {
    const SubProblem first = freeze_pattern(model, std::span(order).first(m), 0);
    const TemplateExecutable tmpl = compile_template(first.model, config.p, map, config.seed);
    const double leg_eps = eps(tmpl.compiled, config.eps);
    const std::size_t kept = kept_subproblem_count(model, m, config.prune);
    for (const bool batching : {false, true}) {
      for (const bool shared : {false, true}) {
        RuntimeParams params = config.runtime;
        params.batch_capacity = batching ? kBatchCapacity : 1;
        params.cloud_latency_s = shared ? kSharedCloudLatency : 0;
        params.num_circuits = static_cast<double>(kept);
        if (m > 0) params.postprocess_s = config.frozen_postprocess_s;
        CostRow row;
        row.leg = m == 0 ? "baseline" : "fq" + std::to_string(m);
        row.m = m;
        row.kept_circuits = kept;
        row.batching = batching;
        row.shared = shared;
        row.n_batch = batch_count(params);
        row.runtime_s = workflow_runtime(params);
        row.eps = leg_eps;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_cost_table_csv(std::ostream& out, const std::vector<CostRow>& rows) {
  out << "leg,m,kept_circuits,execution,access,n_batch,runtime_s,eps\n";
  for (const auto& row : rows) {
    out << row.leg << ',' << row.m << ',' << row.kept_circuits << ','
        << (row.batching ? "batching" : "no-batching") << ','
        << (row.shared ? "shared" : "dedicated") << ',' << format_number(row.n_batch) << ','
        << format_number(row.runtime_s) << ',' << format_number(row.eps) << '\n';
  }
}

}  // namespace qfreeze::experiment
