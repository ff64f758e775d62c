// Copyright 2026 The Decapode Authors. All Rights Reserved.
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

#include "decapode/error.hpp"

#include <sstream>

namespace decapode {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnsupportedFormat: return "unsupported-format";
    case ErrorCode::MalformedInput: return "malformed-input";
    case ErrorCode::NotWellCentered: return "not-well-centered";
    case ErrorCode::InvalidDegree: return "invalid-degree";
    case ErrorCode::SingularOperator: return "singular-operator";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::TypeError: return "type-error";
    case ErrorCode::InvalidPattern: return "invalid-pattern";
    case ErrorCode::NotCompilable: return "not-compilable";
    case ErrorCode::CyclicDependency: return "cyclic-dependency";
    case ErrorCode::MissingBinding: return "missing-binding";
    case ErrorCode::BindingTypeError: return "binding-type-error";
    case ErrorCode::Diverged: return "diverged";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string located(std::size_t line, std::size_t column, const std::string& message) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}

std::string diverged_message(std::size_t step, double time, const std::string& variable,
                             std::size_t index, double value) {
  std::ostringstream os;
  os << "solution diverged at step " << step << " (t=" << time << "): " << variable << "[" << index
     << "] = " << value;
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::SyntaxError, located(line, column, message)), line_(line), column_(column) {}

NotWellCenteredError::NotWellCenteredError(std::size_t triangle, const std::string& message)
    : Error(ErrorCode::NotWellCentered, message), triangle_(triangle) {}

DivergedError::DivergedError(std::size_t step, double time, std::string variable, std::size_t index,
                             double value)
    : Error(ErrorCode::Diverged, diverged_message(step, time, variable, index, value)),
      step_(step),
      time_(time),
      variable_(std::move(variable)),
      index_(index),
      value_(value) {}

}  // namespace decapode
