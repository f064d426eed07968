// Copyright 2026 The qembed Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qembed {

/// Bad caller-supplied value (out-of-range id, invalid parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SelfLoopError : public InputError {
public:
    using InputError::InputError;
};

/// A statistic or metric that has no value on the given graph (empty, edgeless).
class UndefinedMetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Degree sequence cannot be realized by a simple graph.
class GraphicalityError : public InputError {
public:
    using InputError::InputError;
};

/// Malformed serialized data. `line()` is 1-based, 0 when not line oriented.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace qembed
