// Copyright 2026 The isomech Authors. All rights reserved.
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

namespace isomech {

// Bad arguments use std::invalid_argument. The types below cover the
// remaining failure classes callers need to tell apart.

/// A documented precondition on the relation between inputs does not hold
/// (e.g. asking for a T-transform chain between non-majorizing vectors).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The request is well-formed but outside the supported problem size.
class UnsupportedSize : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A regression has no unique solution (e.g. only one outcome class).
class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class InputError : public std::invalid_argument {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& what)
      : std::invalid_argument(source + (line ? ":" + std::to_string(line) : std::string()) +
                              ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace isomech
