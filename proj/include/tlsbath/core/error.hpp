// Copyright 2026 The tlsbath Authors
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

namespace tlsbath {

// Base for every exception the library throws on its own account.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of iterations or hit a singular system.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

// Configuration document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A named input file or resource does not exist or cannot be opened.
class MissingInput : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}
}  // namespace detail

}  // namespace tlsbath
