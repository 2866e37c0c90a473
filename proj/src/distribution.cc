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

#include "pgb/distribution.h"

#include <cmath>
#include <string>

#include "pgb/errors.h"

namespace pgb::internal {

void ValidateSimplex(std::span<const double> weights, const char* what) {
  if (weights.empty()) {
    throw ContractError(std::string(what) + ": empty weight vector");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ContractError(std::string(what) +
                          ": weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw ContractError(std::string(what) + ": weights sum to " +
                        std::to_string(total) + ", expected 1");
  }
}

std::vector<double> NormalizeWeights(std::vector<double> weights,
                                     const char* what) {
  // Kahan summation; the result must not depend on how callers chunk work.
  double total = 0.0;
  double carry = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ContractError(std::string(what) +
                          ": weights must be finite and non-negative");
    }
    const double y = w - carry;
    const double t = total + y;
    carry = (t - total) - y;
    total = t;
  }
  if (!(total > 0.0)) {
    throw ContractError(std::string(what) + ": weights sum to zero");
  }
  for (double& w : weights) w /= total;
  return weights;
}

}  // namespace pgb::internal
