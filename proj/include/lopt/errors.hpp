// Copyright 2026 The lopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lopt {

/// Precondition violated by a caller-supplied value (non-unitary matrix,
/// bad mode index, wrong dimensions, ...).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string &what) : std::invalid_argument(what) {}
};

/// A configured size cap (basis size, permanent order) would be exceeded.
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string &what) : std::runtime_error(what) {}
};

/// Input is structurally valid but numerically degenerate (e.g. rank deficient).
struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string &what) : std::runtime_error(what) {}
};

/// The computational block of a gate still couples to bunched states, so
/// reading it off as a two-qubit gate is meaningless.
struct LeakyGate : std::runtime_error {
    LeakyGate(const std::string &what, double leakage) : std::runtime_error(what), leakage(leakage) {}
    double leakage;
};

/// Reading or writing a report/config file failed.
struct IoError : std::runtime_error {
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace lopt
