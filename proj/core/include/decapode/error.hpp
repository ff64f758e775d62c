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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace decapode {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedFormat,
  MalformedInput,
  NotWellCentered,
  InvalidDegree,
  SingularOperator,
  SyntaxError,
  TypeError,
  InvalidPattern,
  NotCompilable,
  CyclicDependency,
  MissingBinding,
  BindingTypeError,
  Diverged,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class NotWellCenteredError : public Error {
 public:
  NotWellCenteredError(std::size_t triangle, const std::string& message);

  std::size_t triangle() const noexcept { return triangle_; }

 private:
  std::size_t triangle_;
};

class DivergedError : public Error {
 public:
  DivergedError(std::size_t step, double time, std::string variable, std::size_t index, double value);

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }
  const std::string& variable() const noexcept { return variable_; }
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t step_;
  double time_;
  std::string variable_;
  std::size_t index_;
  double value_;
};

}  // namespace decapode
