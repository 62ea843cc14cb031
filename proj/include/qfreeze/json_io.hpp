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

#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "qfreeze/circuit.hpp"
#include "qfreeze/freezer.hpp"
#include "qfreeze/ising.hpp"
#include "qfreeze/simulator.hpp"
#include "qfreeze/transpiler.hpp"

namespace qfreeze::io {

using Json = nlohmann::json;

// Model: {"num_vars": n, "linear": {"i": h}, "quadratic": {"i,j": J}, "offset": c}
Json to_json(const IsingModel& model);
IsingModel model_from_json(const Json& json);

// {"parent": id, "id": k, "frozen": [[k, +-1], ...], "model": {...},
//  "index_map": [parent index per child variable], "mirror_of": k | null}
Json to_json(const SubProblem& sub);
SubProblem subproblem_from_json(const Json& json);

// {"num_qubits": n, "p": p, "gates": [{"kind", "qubits", "angle"?, "term"?}]}
Json to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& json);

// Circuit JSON plus "num_logical", "initial_layout", "final_layout", "metrics".
Json to_json(const CompiledCircuit& compiled);
CompiledCircuit compiled_from_json(const Json& json);

// {"rows": r, "cols": c} or {"num_physical": n, "edges": [[a, b], ...]}
// ("num_physical" defaults to one more than the largest edge index).
Json to_json(const CouplingMap& map);
CouplingMap coupling_from_json(const Json& json);

// {"shots": s, "counts": {"0101": n, ...}}, qubit 0 rightmost.
Json to_json(const OutputDistribution& dist);
OutputDistribution distribution_from_json(const Json& json);

/// Header row "gamma\beta,<betas...>", then one row per gamma.
void write_landscape_csv(std::ostream& out, const Landscape& landscape);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& json);

}  // namespace qfreeze::io
