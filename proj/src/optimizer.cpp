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

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>
#include <numbers>

#include "qfreeze/errors.hpp"
#include "qfreeze/rng.hpp"
#include "qfreeze/simulator.hpp"

namespace qfreeze {

namespace {

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

struct Objective {
  const QaoaEvaluator* evaluator;
  std::size_t evaluations = 0;
};

// Parameters are laid out as [gamma_0..gamma_{p-1}, beta_0..beta_{p-1}].
ParamPoint unpack(const gsl_vector* x, std::size_t p) {
  ParamPoint point;
  for (std::size_t l = 0; l < p; ++l) {
    point.gammas.push_back(gsl_vector_get(x, l));
    point.betas.push_back(gsl_vector_get(x, p + l));
  }
  return point;
}

double objective(const gsl_vector* x, void* params) {
  auto* state = static_cast<Objective*>(params);
  ++state->evaluations;
  return state->evaluator->expectation(unpack(x, state->evaluator->layers()));
}

}  // namespace

OptimizeResult optimize(const QaoaEvaluator& evaluator, const OptimizerConfig& config,
                        std::uint64_t seed) {
  if (config.starts == 0) throw ParameterError("optimizer needs at least one start");
  gsl_set_error_handler_off();
  const std::size_t p = evaluator.layers();
  const std::size_t dim = 2 * p;

  Objective state{&evaluator};
  gsl_multimin_function function{&objective, dim, &state};
  VectorPtr x(gsl_vector_alloc(dim));
  VectorPtr step(gsl_vector_alloc(dim));
  gsl_vector_set_all(step.get(), config.initial_step);
  MinimizerPtr minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));

  Rng rng(seed);
  OptimizeResult best;
  bool have_best = false;
  for (std::size_t start = 0; start < config.starts; ++start) {
    for (std::size_t l = 0; l < p; ++l) {
      gsl_vector_set(x.get(), l, rng.uniform(0.0, std::numbers::pi));
      gsl_vector_set(x.get(), p + l, rng.uniform(0.0, std::numbers::pi / 2.0));
    }
    gsl_multimin_fminimizer_set(minimizer.get(), &function, x.get(), step.get());

    std::vector<double> trace;
    bool converged = false;
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
      if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      trace.push_back(minimizer->fval);
      const double size = gsl_multimin_fminimizer_size(minimizer.get());
      if (gsl_multimin_test_size(size, config.tolerance) == GSL_SUCCESS) {
        converged = true;
        break;
      }
    }
    const double value = minimizer->fval;
    if (!have_best || value < best.value) {
      have_best = true;
      best.best = unpack(minimizer->x, p);
      best.value = value;
      best.trace = std::move(trace);
      best.converged = converged;
    }
  }
  best.evaluations = state.evaluations;
  return best;
}

OptimizeResult optimize(const IsingModel& model, std::size_t p, const OptimizerConfig& config,
                        std::uint64_t seed) {
  return optimize(QaoaEvaluator(model, p), config, seed);
}

}  // namespace qfreeze
