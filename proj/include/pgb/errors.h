// Copyright 2026 The PGB Authors
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

#ifndef PGB_ERRORS_H_
#define PGB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgb {

// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  kShape,
  kRange,
  kContract,
  kCapacity,
  kCalibration,
  kSamplingBudget,
  kTraining,
  kParse,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

// 0 is success; 1 is reserved for unexpected failures and 64 for usage errors.
int ExitCodeFor(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& m) : Error(ErrorKind::kShape, m) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& m) : Error(ErrorKind::kRange, m) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& m)
      : Error(ErrorKind::kContract, m) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& m)
      : Error(ErrorKind::kCapacity, m) {}
};

class CalibrationError : public Error {
 public:
  explicit CalibrationError(const std::string& m)
      : Error(ErrorKind::kCalibration, m) {}
};

class SamplingBudgetError : public Error {
 public:
  SamplingBudgetError(const std::string& m, double acceptance_rate)
      : Error(ErrorKind::kSamplingBudget, m),
        acceptance_rate_(acceptance_rate) {}
  double acceptance_rate() const { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& m)
      : Error(ErrorKind::kTraining, m) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& m)
      : Error(ErrorKind::kParse,
              source + ":" + std::to_string(line) + ": " + m),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& m)
      : Error(ErrorKind::kIo, path + ": " + m), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace pgb

#endif  // PGB_ERRORS_H_
