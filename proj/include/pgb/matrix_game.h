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

#ifndef PGB_MATRIX_GAME_H_
#define PGB_MATRIX_GAME_H_

#include <vector>

namespace pgb {

struct ZeroSumSolution {
  double value = 0.0;
  std::vector<double> row_strategy;     // maximizer
  std::vector<double> column_strategy;  // minimizer
};

// Exact solution of the finite zero-sum game with payoff matrix
// `payoff[i][k]` paid by the column player to the row player. Solves the
// column player's linear program with a dense tableau simplex (Bland's rule)
// and reads the row strategy off the optimal duals. Intended for small
// instances; cost grows as rows * cols * pivots.
ZeroSumSolution SolveZeroSumGame(const std::vector<std::vector<double>>& payoff);

}  // namespace pgb

#endif  // PGB_MATRIX_GAME_H_
