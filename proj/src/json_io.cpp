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

#include "qfreeze/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "qfreeze/errors.hpp"

namespace qfreeze::io {

namespace {

std::size_t parse_index(std::string_view text) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ParameterError("expected a decimal index, got '" + std::string(text) + "'");
  }
  return value;
}

std::size_t get_count(const Json& json) {
  if (!json.is_number_unsigned() && !(json.is_number_integer() && json.get<std::int64_t>() >= 0)) {
    throw ParameterError("expected a non-negative integer, got " + json.dump());
  }
  return json.get<std::size_t>();
}

std::vector<std::size_t> get_counts(const Json& json) {
  if (!json.is_array()) throw ParameterError("expected an array, got " + json.dump());
  std::vector<std::size_t> out;
  for (const auto& entry : json) out.push_back(get_count(entry));
  return out;
}

// Runs a decoder, reporting malformed documents as ParameterError.
template <class F>
auto decode_json(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Json angle_to_json(const Angle& angle) {
  return Json{{"scale", angle.scale},
              {"param", angle.param ? Json(to_string(*angle.param)) : Json(nullptr)},
              {"value", angle.value ? Json(*angle.value) : Json(nullptr)}};
}

Angle angle_from_json(const Json& json) {
  Angle angle;
  angle.scale = json.value("scale", 1.0);
  if (json.contains("param") && !json.at("param").is_null()) {
    angle.param = param_ref_from_string(json.at("param").get<std::string>());
  }
  if (json.contains("value") && !json.at("value").is_null()) {
    angle.value = json.at("value").get<double>();
  }
  return angle;
}

}  // namespace

Json to_json(const IsingModel& model) {
  Json linear = Json::object();
  for (const auto& [i, h] : model.linear()) linear[std::to_string(i)] = h;
  Json quadratic = Json::object();
  for (const auto& [key, j] : model.quadratic()) {
    quadratic[std::to_string(key.first) + "," + std::to_string(key.second)] = j;
  }
  return Json{{"num_vars", model.num_vars()},
              {"linear", std::move(linear)},
              {"quadratic", std::move(quadratic)},
              {"offset", model.offset()}};
}

IsingModel model_from_json(const Json& json) {
  return decode_json("model", [&] {
    const auto num_vars = get_count(json.at("num_vars"));
    IsingModel::LinearMap linear;
    if (json.contains("linear")) {
      for (const auto& [key, value] : json.at("linear").items()) {
        linear[parse_index(key)] = value.get<double>();
      }
    }
    std::vector<QuadraticTerm> quadratic;
    if (json.contains("quadratic")) {
      for (const auto& [key, value] : json.at("quadratic").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) {
          throw ParameterError("quadratic key '" + key + "' is not of the form \"i,j\"");
        }
        const std::size_t i = parse_index(std::string_view(key).substr(0, comma));
        const std::size_t j = parse_index(std::string_view(key).substr(comma + 1));
        if (i >= j) throw ParameterError("quadratic key '" + key + "' must satisfy i < j");
        quadratic.push_back({i, j, value.get<double>()});
      }
    }
    return IsingModel(num_vars, std::move(linear), quadratic, json.value("offset", 0.0));
  });
}

Json to_json(const SubProblem& sub) {
  Json frozen = Json::array();
  for (const auto& entry : sub.frozen) frozen.push_back({entry.index, static_cast<int>(entry.value)});
  return Json{{"parent", sub.parent_id},
              {"id", sub.id},
              {"frozen", std::move(frozen)},
              {"model", to_json(sub.model)},
              {"index_map", sub.parent_index},
              {"mirror_of", sub.mirror_of ? Json(*sub.mirror_of) : Json(nullptr)}};
}

SubProblem subproblem_from_json(const Json& json) {
  return decode_json("sub-problem", [&] {
    SubProblem sub;
    sub.parent_id = json.at("parent").get<std::string>();
    sub.id = get_count(json.at("id"));
    for (const auto& entry : json.at("frozen")) {
      const int value = entry.at(1).get<int>();
      if (value != 1 && value != -1) throw ParameterError("frozen value must be +1 or -1");
      sub.frozen.push_back({get_count(entry.at(0)), static_cast<Spin>(value)});
    }
    sub.model = model_from_json(json.at("model"));
    sub.parent_index = get_counts(json.at("index_map"));
    if (sub.parent_index.size() != sub.model.num_vars()) {
      throw ParameterError("index_map length differs from the child model size");
    }
    if (json.contains("mirror_of") && !json.at("mirror_of").is_null()) {
      sub.mirror_of = get_count(json.at("mirror_of"));
    }
    return sub;
  });
}

Json to_json(const Circuit& circuit) {
  Json gates = Json::array();
  for (const auto& gate : circuit.gates) {
    Json entry{{"kind", to_string(gate.kind)}};
    entry["qubits"] = gate.is_two_qubit()
                          ? Json::array({gate.qubits[0], gate.qubits[1]})
                          : Json::array({gate.qubits[0]});
    if (gate.angle) entry["angle"] = angle_to_json(*gate.angle);
    if (gate.term) {
      entry["term"] = gate.term->j ? Json::array({gate.term->i, *gate.term->j})
                                   : Json::array({gate.term->i});
    }
    gates.push_back(std::move(entry));
  }
  return Json{{"num_qubits", circuit.num_qubits}, {"p", circuit.layers}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& json) {
  return decode_json("circuit", [&] {
    Circuit circuit;
    circuit.num_qubits = get_count(json.at("num_qubits"));
    circuit.layers = json.value("p", std::size_t{0});
    for (const auto& entry : json.at("gates")) {
      Gate gate;
      gate.kind = gate_kind_from_string(entry.at("kind").get<std::string>());
      const auto qubits = get_counts(entry.at("qubits"));
      if (qubits.size() != gate.arity()) {
        throw ParameterError(to_string(gate.kind) + " expects " + std::to_string(gate.arity()) +
                             " qubit(s)");
      }
      for (const auto q : qubits) {
        if (q >= circuit.num_qubits) throw ParameterError("gate qubit out of range");
      }
      gate.qubits = {qubits[0], qubits.back()};
      if (gate.is_two_qubit() && qubits[0] == qubits[1]) {
        throw ParameterError("two-qubit gate needs distinct qubits");
      }
      if (entry.contains("angle")) gate.angle = angle_from_json(entry.at("angle"));
      const bool rotation = gate.kind == GateKind::RX || gate.kind == GateKind::RZ;
      if (rotation != gate.angle.has_value()) {
        throw ParameterError(to_string(gate.kind) +
                             (rotation ? " requires an angle" : " takes no angle"));
      }
      if (entry.contains("term")) {
        const auto term = get_counts(entry.at("term"));
        if (term.empty() || term.size() > 2) throw ParameterError("bad term tag");
        gate.term = TermId{term[0], term.size() == 2 ? std::optional(term[1]) : std::nullopt};
      }
      circuit.gates.push_back(gate);
    }
    return circuit;
  });
}

Json to_json(const CompiledCircuit& compiled) {
  Json json = to_json(compiled.circuit);
  const auto& m = compiled.metrics;
  json["num_logical"] = compiled.num_logical;
  json["initial_layout"] = compiled.initial_layout;
  json["final_layout"] = compiled.final_layout;
  json["metrics"] = Json{{"cnot_logical", m.cnot_logical},   {"swap_count", m.swap_count},
                         {"cnot_from_swaps", m.cnot_from_swaps}, {"cnot_total", m.cnot_total},
                         {"depth", m.depth},                 {"duration_s", m.duration_s}};
  return json;
}

CompiledCircuit compiled_from_json(const Json& json) {
  return decode_json("compiled circuit", [&] {
    CompiledCircuit compiled;
    compiled.circuit = circuit_from_json(json);
    compiled.num_logical = get_count(json.at("num_logical"));
    compiled.initial_layout = get_counts(json.at("initial_layout"));
    compiled.final_layout = get_counts(json.at("final_layout"));
    const auto& m = json.at("metrics");
    compiled.metrics.cnot_logical = get_count(m.at("cnot_logical"));
    compiled.metrics.swap_count = get_count(m.at("swap_count"));
    compiled.metrics.cnot_from_swaps = get_count(m.at("cnot_from_swaps"));
    compiled.metrics.cnot_total = get_count(m.at("cnot_total"));
    compiled.metrics.depth = get_count(m.at("depth"));
    compiled.metrics.duration_s = m.at("duration_s").get<double>();
    return compiled;
  });
}

Json to_json(const CouplingMap& map) {
  if (const auto shape = map.grid_shape()) {
    return Json{{"rows", shape->first}, {"cols", shape->second}};
  }
  Json edges = Json::array();
  for (const auto& [a, b] : map.edges()) edges.push_back({a, b});
  return Json{{"num_physical", map.num_physical()}, {"edges", std::move(edges)}};
}

CouplingMap coupling_from_json(const Json& json) {
  return decode_json("coupling map", [&] {
    if (json.contains("rows") || json.contains("cols")) {
      return grid_map(get_count(json.at("rows")), get_count(json.at("cols")));
    }
    std::vector<CouplingMap::Edge> edges;
    std::size_t largest = 0;
    for (const auto& entry : json.at("edges")) {
      edges.emplace_back(get_count(entry.at(0)), get_count(entry.at(1)));
      largest = std::max({largest, edges.back().first + 1, edges.back().second + 1});
    }
    return CouplingMap(json.value("num_physical", largest), std::move(edges));
  });
}

Json to_json(const OutputDistribution& dist) {
  Json counts = Json::object();
  for (const auto& [index, count] : dist.counts) {
    counts[OutputDistribution::bitstring(index, dist.num_qubits)] = count;
  }
  return Json{{"shots", dist.shots}, {"counts", std::move(counts)}};
}

OutputDistribution distribution_from_json(const Json& json) {
  return decode_json("distribution", [&] {
    OutputDistribution dist;
    dist.shots = get_count(json.at("shots"));
    std::uint64_t total = 0;
    for (const auto& [bits, count] : json.at("counts").items()) {
      if (dist.counts.empty()) {
        dist.num_qubits = bits.size();
      } else if (bits.size() != dist.num_qubits) {
        throw ParameterError("bit strings in a distribution must share one width");
      }
      const auto n = get_count(count);
      dist.counts[OutputDistribution::index_from_bitstring(bits)] += n;
      total += n;
    }
    if (total != dist.shots) throw ParameterError("counts do not sum to shots");
    return dist;
  });
}

void write_landscape_csv(std::ostream& out, const Landscape& landscape) {
  char text[32];
  const auto put = [&](double v) {
    std::snprintf(text, sizeof text, "%.12g", v);
    out << text;
  };
  out << "gamma\\beta";
  for (const double beta : landscape.beta_axis) {
    out << ',';
    put(beta);
  }
  out << '\n';
  for (std::size_t r = 0; r < landscape.gamma_axis.size(); ++r) {
    put(landscape.gamma_axis[r]);
    for (std::size_t c = 0; c < landscape.beta_axis.size(); ++c) {
      out << ',';
      put(landscape.at(r, c));
    }
    out << '\n';
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParameterError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& json) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << json.dump(2) << '\n';
}

}  // namespace qfreeze::io
