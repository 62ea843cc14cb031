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

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qfreeze/errors.hpp"
#include "qfreeze/experiment.hpp"
#include "qfreeze/freezer.hpp"
#include "qfreeze/json_io.hpp"
#include "qfreeze/models.hpp"
#include "qfreeze/transpiler.hpp"

namespace {

using namespace qfreeze;
using experiment::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInternal = 4;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out = "out";
  std::string config_file;
  /// --out on the command line beats output_dir from the config file.
  bool out_given = false;
};

struct ProblemOptions {
  std::string kind = "ba";
  std::size_t n = 16;
  std::size_t dba = 1;
  std::string model_file;
  std::size_t p = 1;
  std::vector<std::size_t> m;
  std::string grid;
  std::string coupling_file;
  bool no_prune = false;
  bool static_ranking = false;
};

void add_problem_options(CLI::App& cmd, ProblemOptions& o) {
  cmd.add_option("--kind", o.kind, "Graph family: ba, regular3 or sk")->capture_default_str();
  cmd.add_option("--n", o.n, "Number of variables")->capture_default_str();
  cmd.add_option("--dba", o.dba, "Barabasi-Albert attachment count")->capture_default_str();
  cmd.add_option("--model", o.model_file, "Model JSON (overrides the generator flags)");
  cmd.add_option("--p", o.p, "QAOA layers")->capture_default_str();
  cmd.add_option("--grid", o.grid, "Coupling grid as ROWSxCOLS (default: smallest square)");
  cmd.add_option("--coupling", o.coupling_file, "Coupling map JSON");
  cmd.add_flag("--no-prune", o.no_prune, "Keep mirrored sub-problems");
  cmd.add_flag("--static-hotspots", o.static_ranking, "Rank hotspots by original degree");
}

io::Json grid_json(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ParameterError("grid must look like ROWSxCOLS, got '" + text + "'");
  try {
    return io::Json{{"rows", std::stoul(text.substr(0, x))}, {"cols", std::stoul(text.substr(x + 1))}};
  } catch (const std::logic_error&) {
    throw ParameterError("grid must look like ROWSxCOLS, got '" + text + "'");
  }
}

// Flags first, then subcommand extras, then the config file on top.
ExperimentConfig resolve(const GlobalOptions& g, const ProblemOptions& o,
                         const std::function<void(ExperimentConfig&)>& extra = {}) {
  ExperimentConfig c;
  c.graph = GraphSpec{graph_kind_from_string(o.kind), o.n, o.dba, g.seed};
  c.model_file = o.model_file;
  c.p = o.p;
  if (!o.m.empty()) c.m_values = o.m;
  if (!o.coupling_file.empty()) {
    c.coupling = io::read_json_file(o.coupling_file);
  } else if (!o.grid.empty()) {
    c.coupling = grid_json(o.grid);
  }
  c.seed = g.seed;
  c.jobs = g.jobs;
  c.output_dir = g.out;
  c.prune = !o.no_prune;
  c.ranking = o.static_ranking ? HotspotRanking::Static : HotspotRanking::Adaptive;
  if (extra) extra(c);
  if (!g.config_file.empty()) {
    c = experiment::config_from_json(io::read_json_file(g.config_file), c);
    if (g.out_given) c.output_dir = g.out;
  }
  experiment::validate(c);
  return c;
}

void print_histogram(const IsingModel& model) {
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t i = 0; i < model.num_vars(); ++i) ++histogram[degree(model, i)];
  std::printf("variables %zu, couplings %zu\n", model.num_vars(), model.quadratic().size());
  std::printf("degree count\n");
  for (const auto& [deg, count] : histogram) std::printf("%6zu %5zu\n", deg, count);
}

void print_metrics(const CompiledMetrics& m) {
  std::printf("cnot_logical %zu\nswap_count %zu\ncnot_total %zu\ndepth %zu\nduration_s %.6g\n",
              m.cnot_logical, m.swap_count, m.cnot_total, m.depth, m.duration_s);
}

std::filesystem::path output_path(const std::string& dir, const std::string& file,
                                  const std::string& name) {
  return file.empty() ? std::filesystem::path(dir) / name : std::filesystem::path(file);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Hotspot freezing for QAOA on Ising problems"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for generators, routing and sampling")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Parallel workers")->capture_default_str();
  auto* out_option = app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--config", g.config_file, "Experiment config JSON (overrides flags except --out)");

  ProblemOptions gen_opts;
  std::string gen_file;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark model");
  gen->add_option("--kind", gen_opts.kind, "Graph family: ba, regular3 or sk")->capture_default_str();
  gen->add_option("--n", gen_opts.n, "Number of variables")->capture_default_str();
  gen->add_option("--dba", gen_opts.dba, "Barabasi-Albert attachment count")->capture_default_str();
  gen->add_option("-o,--output", gen_file, "Model file (default: OUT/model.json)");

  ProblemOptions freeze_opts;
  std::size_t freeze_m = 1;
  std::string freeze_file;
  auto* freeze = app.add_subcommand("freeze", "Freeze hotspots and write the sub-problems");
  add_problem_options(*freeze, freeze_opts);
  freeze->add_option("--m", freeze_m, "Number of frozen variables")->capture_default_str();
  freeze->add_option("-o,--output", freeze_file, "Sub-problem file (default: OUT/subproblems.json)");

  ProblemOptions compile_opts;
  std::size_t compile_m = 0;
  std::string compile_file;
  auto* compile = app.add_subcommand("compile", "Route one QAOA circuit onto the coupling map");
  add_problem_options(*compile, compile_opts);
  compile->add_option("--m", compile_m, "Freeze this many hotspots first")->capture_default_str();
  compile->add_option("-o,--output", compile_file, "Compiled circuit (default: OUT/compiled.json)");

  ProblemOptions run_opts;
  std::string run_mode = "auto";
  std::uint64_t shots = 100000;
  bool no_noise = false;
  auto* run = app.add_subcommand("run", "Run the baseline and frozen legs end to end");
  add_problem_options(*run, run_opts);
  run->add_option("--m", run_opts.m, "Frozen counts to evaluate (default: 0 1 2)");
  run->add_option("--mode", run_mode, "auto, simulate or metrics")->capture_default_str();
  run->add_option("--shots", shots, "Samples per sub-problem")->capture_default_str();
  run->add_flag("--no-noise", no_noise, "Sample the ideal state");

  ProblemOptions land_opts;
  std::size_t rows = 16;
  std::size_t cols = 16;
  bool land_no_noise = false;
  auto* land = app.add_subcommand("landscape", "Scan the p=1 expectation landscape per leg");
  add_problem_options(*land, land_opts);
  land->add_option("--m", land_opts.m, "Frozen counts (default: 0 1 2)");
  land->add_option("--rows", rows, "Gamma samples")->capture_default_str();
  land->add_option("--cols", cols, "Beta samples")->capture_default_str();
  land->add_flag("--no-noise", land_no_noise, "Skip the noisy landscape");

  ProblemOptions cost_opts;
  auto* cost = app.add_subcommand("cost", "Runtime and EPS table over execution models");
  add_problem_options(*cost, cost_opts);
  cost->add_option("--m", cost_opts.m, "Frozen counts (default: 0 2 10)");

  try {
    app.parse(argc, argv);
    g.out_given = out_option->count() > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (gen->parsed()) {
    ExperimentConfig c = resolve(g, gen_opts);
    const IsingModel model = generate(c.graph);
    const auto path = output_path(g.out, gen_file, "model.json");
    io::write_json_file(path, io::to_json(model));
    print_histogram(model);
    std::printf("wrote %s\n", path.string().c_str());
    return kExitOk;
  }
  if (freeze->parsed()) {
    const ExperimentConfig c = resolve(g, freeze_opts);
    const IsingModel model = experiment::load_model(c);
    const auto hotspots = select_hotspots(model, freeze_m, c.ranking);
    const auto subs = freeze_many(model, hotspots, c.prune);
    io::Json doc{{"parent", io::to_json(model)}, {"hotspots", hotspots}};
    doc["subproblems"] = io::Json::array();
    for (const auto& sub : subs) doc["subproblems"].push_back(io::to_json(sub));
    const auto path = output_path(g.out, freeze_file, "subproblems.json");
    io::write_json_file(path, doc);
    std::printf("hotspots");
    for (const auto h : hotspots) std::printf(" %zu", h);
    std::printf("\nsub-problems %zu of %zu\nwrote %s\n", subs.size(), std::size_t{1} << freeze_m,
                path.string().c_str());
    return kExitOk;
  }
  if (compile->parsed()) {
    const ExperimentConfig c = resolve(g, compile_opts);
    const IsingModel model = experiment::load_model(c);
    const auto hotspots = select_hotspots(model, compile_m, c.ranking);
    const SubProblem sub = freeze_pattern(model, hotspots, 0);
    const CouplingMap map = experiment::make_coupling(c, sub.model.num_vars());
    const CompiledCircuit compiled = route(build_qaoa(sub.model, c.p), map, c.seed);
    const auto path = output_path(g.out, compile_file, "compiled.json");
    io::write_json_file(path, io::to_json(compiled));
    print_metrics(compiled.metrics);
    std::printf("eps %.6g\nwrote %s\n", eps(compiled, c.eps), path.string().c_str());
    return kExitOk;
  }
  if (run->parsed()) {
    const ExperimentConfig c = resolve(g, run_opts, [&](ExperimentConfig& c) {
      c.shots = shots;
      c.noise = !no_noise;
      c = experiment::config_from_json(io::Json{{"mode", run_mode}}, c);
    });
    const IsingModel model = experiment::load_model(c);
    const auto result = experiment::run(c, model);
    experiment::write_run_outputs(c, result);
    write_cost_csv(std::cout, [&] {
      std::vector<CostReport> rows;
      for (const auto& leg : result.legs) rows.push_back(leg.report);
      return rows;
    }());
    for (const auto& leg : result.legs) {
      if (leg.best) std::printf("m=%zu best energy %.10g\n", leg.m, leg.best->value);
    }
    if (result.c_min) std::printf("exhaustive minimum %.10g\n", *result.c_min);
    return kExitOk;
  }
  if (land->parsed()) {
    const ExperimentConfig c = resolve(g, land_opts, [&](ExperimentConfig& c) {
      c.landscape_rows = rows;
      c.landscape_cols = cols;
      c.noise = !land_no_noise;
    });
    if (c.p != 1) throw ParameterError("landscapes are defined for p = 1");
    const IsingModel model = experiment::load_model(c);
    const auto legs = experiment::landscapes(c, model, c.m_values);
    experiment::write_landscape_outputs(c, legs);
    for (const auto& leg : legs) {
      const Landscape& shown = leg.noisy ? *leg.noisy : leg.ideal;
      std::printf("m=%zu sub %zu eps %.6g spread %.6g\n", leg.m, leg.sub_id, leg.eps, shown.spread());
    }
    return kExitOk;
  }
  if (cost->parsed()) {
    ProblemOptions o = cost_opts;
    if (o.m.empty()) o.m = {0, 2, 10};
    const ExperimentConfig c = resolve(g, o);
    const IsingModel model = experiment::load_model(c);
    const auto rows_out = experiment::cost_table(c, model, c.m_values);
    std::filesystem::create_directories(c.output_dir);
    io::write_json_file(std::filesystem::path(c.output_dir) / "config.json", experiment::to_json(c));
    const auto path = std::filesystem::path(c.output_dir) / "cost.csv";
    std::ofstream file(path);
    if (!file) throw ParameterError("cannot write " + path.string());
    experiment::write_cost_table_csv(file, rows_out);
    experiment::write_cost_table_csv(std::cout, rows_out);
    return kExitOk;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const qfreeze::CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCapacity;
  } catch (const qfreeze::InvariantError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  } catch (const qfreeze::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
