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

#include "pgb/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "pgb/errors.h"

namespace pgb {
namespace {

using Real = long double;
constexpr Real kPivotEpsilon = 1e-15L;

}  // namespace

ZeroSumSolution SolveZeroSumGame(
    const std::vector<std::vector<double>>& payoff) {
  const std::size_t m = payoff.size();
  if (m == 0 || payoff.front().empty()) {
    throw ShapeError("payoff matrix must be non-empty");
  }
  const std::size_t n = payoff.front().size();
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& row : payoff) {
    if (row.size() != n) throw ShapeError("payoff matrix is ragged");
    for (double v : row) {
      if (!std::isfinite(v)) throw ContractError("payoff must be finite");
      lowest = std::min(lowest, v);
    }
  }
  // Shift so every entry is >= 1; the value shifts by the same amount.
  const Real shift = 1.0L - static_cast<Real>(lowest);

  // max sum(y) s.t. A y <= 1, y >= 0. Columns: n structural, m slack, rhs.
  const std::size_t width = n + m + 1;
  std::vector<Real> tab((m + 1) * width, 0.0L);
  auto at = [&](std::size_t r, std::size_t c) -> Real& {
    return tab[r * width + c];
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      at(i, k) = static_cast<Real>(payoff[i][k]) + shift;
    }
    at(i, n + i) = 1.0L;
    at(i, width - 1) = 1.0L;
  }
  for (std::size_t k = 0; k < n; ++k) at(m, k) = -1.0L;

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const std::size_t max_pivots = 50 * (n + m) + 1000;
  for (std::size_t pivots = 0;; ++pivots) {
    if (pivots > max_pivots) {
      throw CapacityError("simplex did not terminate");
    }
    // Bland: lowest-index column with negative reduced cost.
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c) {
      if (at(m, c) < -kPivotEpsilon) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Real best_ratio = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      const Real a = at(i, enter);
      if (a <= kPivotEpsilon) continue;
      const Real ratio = at(i, width - 1) / a;
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // The feasible region is bounded because every A entry is >= 1.
    if (leave == m) throw ContractError("unbounded game LP");

    const Real p = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= p;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const Real f = at(r, enter);
      if (f == 0.0L) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  const Real total = at(m, width - 1);
  ZeroSumSolution sol;
  sol.value = static_cast<double>(1.0L / total - shift);
  sol.column_strategy.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) {
      sol.column_strategy[basis[i]] =
          static_cast<double>(at(i, width - 1) / total);
    }
  }
  sol.row_strategy.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    sol.row_strategy[i] =
        static_cast<double>(std::max(at(m, n + i), 0.0L) / total);
  }
  return sol;
}

}  // namespace pgb
