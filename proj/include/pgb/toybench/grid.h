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

#ifndef PGB_TOYBENCH_GRID_H_
#define PGB_TOYBENCH_GRID_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgb/score_matrix.h"

namespace pgb::toy {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Square grid of spherical Gaussians centred on the origin. Mode k sits at
// row k / side, column k % side; coordinates are (i - (side - 1) / 2) *
// spacing.
struct GridMixtureSpec {
  int modes_per_side = 5;
  double grid_spacing = 1.0;
  double variance = 0.0025;
  int samples_per_mode = 1000;

  void Validate() const;
  int num_modes() const { return modes_per_side * modes_per_side; }
  Point2 Centroid(int mode) const;
};

// Points with the index of the mode that generated them.
struct Dataset {
  std::vector<Point2> points;
  std::vector<int> modes;

  std::size_t size() const { return points.size(); }
};

// samples_per_mode draws per mode, mode-major order.
Dataset GenGridMixture(const GridMixtureSpec& spec, std::uint64_t seed);

// A sequence of mode-restricted samplers standing in for the generators
// saved during training. Each covers only `covered_modes[g]`.
struct GeneratorPoolSpec {
  int n_generators = 1;
  int samples_per_generator = 1;
  std::vector<std::vector<int>> covered_modes;
  double jitter_std = 0.0;

  void Validate(int num_modes) const;
};

// The pooled samples B with generator provenance.
struct Pool {
  std::vector<Point2> points;
  std::vector<int> modes;
  std::vector<PoolId> ids;

  std::size_t size() const { return points.size(); }
  // Pool indices produced by generator `g`, in order.
  std::vector<std::size_t> IndicesOfGenerator(int g) const;
};

// Generator g contributes samples_per_generator points split equally over
// its covered modes (ascending; the remainder goes to the lowest modes). Each
// point is centroid + N(0, variance I) + N(0, jitter_std^2 I).
Pool MakeCollapsedPools(const GeneratorPoolSpec& spec,
                        const GridMixtureSpec& grid, std::uint64_t seed);

// Shape of a mode-collapse sequence: every generator misses `modes_missed`
// modes chosen at random, except that the first generator's missing set is
// disjoint from the last one's so the union covers the grid.
struct ModeCollapseSpec {
  int n_generators = 100;
  int samples_per_generator = 200;
  int modes_missed = 5;
  double jitter_std = 0.05;
};

GeneratorPoolSpec MakeModeCollapseSpec(const ModeCollapseSpec& spec,
                                       const GridMixtureSpec& grid,
                                       std::uint64_t seed);

}  // namespace pgb::toy

#endif  // PGB_TOYBENCH_GRID_H_
