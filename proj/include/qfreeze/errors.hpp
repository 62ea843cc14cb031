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

#include <stdexcept>
#include <string>

namespace qfreeze {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or index arity does not match the model / state it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the supported size envelope (brute force, simulation, fan-out).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value: bad graph parameters, duplicate indices, p == 0, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A model's term pattern does not match the slots of a compiled template.
class IncompatibleTemplateError : public Error {
 public:
  using Error::Error;
};

/// A ratio metric with a zero denominator (ARG with EV_ideal == 0, AR with C_min == 0).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// The simulator was handed a circuit that still has symbolic angles.
class UnboundAngleError : public Error {
 public:
  using Error::Error;
};

/// Routing failure: disconnected coupling map.
class RoutingError : public Error {
 public:
  using Error::Error;
};

/// A post-condition the library guarantees was observed to fail.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfreeze
