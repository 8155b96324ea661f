// Copyright 2026 The AMRText Authors.
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

#ifndef AMRTEXT_ERROR_H_
#define AMRTEXT_ERROR_H_

#include <stdexcept>
#include <string>

namespace amrtext {

// Base class for all library errors. The code is a short machine-readable
// identifier that the command-line tool prints on failure.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string &code() const { return code_; }

 private:
  std::string code_;
};

// Syntax or semantic error in PENMAN input, with a 1-based position.
class PenmanError : public Error {
 public:
  PenmanError(const std::string &message, int line, int column)
      : Error("penman", message + " at line " + std::to_string(line) +
                            ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A graph that breaks the structural invariants an operation relies on.
class InvalidGraphError : public Error {
 public:
  explicit InvalidGraphError(const std::string &message)
      : Error("invalid-graph", message) {}
};

// Raised when the external AMR parser cannot be run or its output cannot be
// matched up with the input sentences.
class TransportError : public Error {
 public:
  TransportError(const std::string &message, int batch = -1)
      : Error("transport", batch >= 0 ? "batch " + std::to_string(batch) +
                                            ": " + message
                                      : message),
        batch_(batch) {}

  int batch() const { return batch_; }

 private:
  int batch_;
};

}  // namespace amrtext

#endif  // AMRTEXT_ERROR_H_
