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

#include "pgb/errors.h"

namespace pgb {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape:
      return "shape";
    case ErrorKind::kRange:
      return "range";
    case ErrorKind::kContract:
      return "contract";
    case ErrorKind::kCapacity:
      return "capacity";
    case ErrorKind::kCalibration:
      return "calibration";
    case ErrorKind::kSamplingBudget:
      return "sampling-budget";
    case ErrorKind::kTraining:
      return "training";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return 2;
    case ErrorKind::kContract:
      return 3;
    case ErrorKind::kCalibration:
      return 4;
    case ErrorKind::kSamplingBudget:
      return 5;
    case ErrorKind::kIo:
      return 6;
    case ErrorKind::kShape:
      return 7;
    case ErrorKind::kRange:
      return 8;
    case ErrorKind::kCapacity:
      return 9;
    case ErrorKind::kTraining:
      return 10;
  }
  return 1;
}

}  // namespace pgb
