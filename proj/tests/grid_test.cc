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


#include "pgb/toybench/grid.h"

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb::toy {
namespace {

TEST(GridTest, CentroidsFormCenteredLattice) {
  const GridMixtureSpec grid;
  EXPECT_EQ(grid.num_modes(), 25);
  EXPECT_EQ(grid.Centroid(0), (Point2{-2.0, -2.0}));
  EXPECT_EQ(grid.Centroid(12), (Point2{0.0, 0.0}));
  EXPECT_EQ(grid.Centroid(24), (Point2{2.0, 2.0}));
  std::set<std::pair<double, double>> seen;
  for (int k = 0; k < 25; ++k) {
    seen.insert({grid.Centroid(k).x1, grid.Centroid(k).x2});
  }
  EXPECT_EQ(seen.size(), 25u);
}

TEST(GridTest, SampleCountsAndLabels) {
  GridMixtureSpec grid;
  grid.samples_per_mode = 40;
  const Dataset d = GenGridMixture(grid, 1);
  ASSERT_EQ(d.size(), 1000u);
  std::vector<int> per_mode(25, 0);
  for (int m : d.modes) ++per_mode[m];
  for (int c : per_mode) EXPECT_EQ(c, 40);
}

TEST(GridTest, EmpiricalVarianceMatchesSpec) {
  GridMixtureSpec grid;
  grid.modes_per_side = 1;
  grid.samples_per_mode = 400000;
  const Dataset d = GenGridMixture(grid, 5);
  double sx = 0.0, sxx = 0.0;
  for (const Point2& p : d.points) {
    sx += p.x1;
    sxx += p.x1 * p.x1;
  }
  const double n = static_cast<double>(d.size());
  const double var = sxx / n - (sx / n) * (sx / n);
  // Standard error of the sample variance is var * sqrt(2 / n) ~ 5.6e-6.
  EXPECT_NEAR(var, 0.0025, 3e-5);
  EXPECT_NEAR(sx / n, 0.0, 3e-4);
}

TEST(GridTest, DeterministicGivenSeed) {
  const GridMixtureSpec grid;
  const Dataset a = GenGridMixture(grid, 42);
  const Dataset b = GenGridMixture(grid, 42);
  const Dataset c = GenGridMixture(grid, 43);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
}

TEST(GridTest, Validation) {
  GridMixtureSpec grid;
  grid.variance = 0.0;
  EXPECT_THROW(GenGridMixture(grid, 1), ContractError);
  grid = GridMixtureSpec{};
  grid.modes_per_side = 0;
  EXPECT_THROW(GenGridMixture(grid, 1), ContractError);
}

TEST(PoolTest, SingleModeGeneratorStaysNearItsMode) {
  const GridMixtureSpec grid;
  GeneratorPoolSpec spec;
  spec.n_generators = 1;
  spec.samples_per_generator = 5000;
  spec.covered_modes = {{7}};
  const Pool pool = MakeCollapsedPools(spec, grid, 3);
  const Point2 c = grid.Centroid(7);
  const double r99 = std::sqrt(0.0025 * 9.21034);
  int inside = 0;
  for (const Point2& p : pool.points) {
    if (std::hypot(p.x1 - c.x1, p.x2 - c.x2) <= r99) ++inside;
  }
  EXPECT_GE(inside / 5000.0, 0.97);
  for (int m : pool.modes) EXPECT_EQ(m, 7);
}

TEST(PoolTest, IdsAndSplitAcrossModes) {
  const GridMixtureSpec grid;
  GeneratorPoolSpec spec;
  spec.n_generators = 2;
  spec.samples_per_generator = 7;
  spec.covered_modes = {{0, 1, 2}, {5}};
  const Pool pool = MakeCollapsedPools(spec, grid, 9);
  ASSERT_EQ(pool.size(), 14u);
  EXPECT_EQ(pool.IndicesOfGenerator(1).size(), 7u);
  EXPECT_EQ(pool.ids[7], (PoolId{1, 0}));
  std::vector<int> counts(3, 0);
  for (std::size_t b = 0; b < 7; ++b) ++counts[pool.modes[b]];
  EXPECT_EQ(counts, (std::vector<int>{3, 2, 2}));
}

TEST(PoolTest, Validation) {
  const GridMixtureSpec grid;
  GeneratorPoolSpec spec;
  spec.n_generators = 2;
  spec.covered_modes = {{0}};
  EXPECT_THROW(MakeCollapsedPools(spec, grid, 1), ShapeError);
  spec.covered_modes = {{0}, {}};
  EXPECT_THROW(MakeCollapsedPools(spec, grid, 1), ContractError);
  spec.covered_modes = {{0}, {25}};
  EXPECT_THROW(MakeCollapsedPools(spec, grid, 1), ContractError);
}

TEST(ModeCollapseTest, EachGeneratorMissesExactlyK) {
  const GridMixtureSpec grid;
  ModeCollapseSpec mc;
  mc.n_generators = 30;
  mc.modes_missed = 5;
  const GeneratorPoolSpec spec = MakeModeCollapseSpec(mc, grid, 17);
  ASSERT_EQ(spec.covered_modes.size(), 30u);
  std::set<int> union_modes;
  for (const auto& modes : spec.covered_modes) {
    EXPECT_EQ(modes.size(), 20u);
    union_modes.insert(modes.begin(), modes.end());
  }
  EXPECT_EQ(union_modes.size(), 25u);
  // The first generator covers everything the last one misses.
  const auto& first = spec.covered_modes.front();
  std::set<int> first_set(first.begin(), first.end());
  for (int m = 0; m < 25; ++m) {
    const auto& last = spec.covered_modes.back();
    if (std::find(last.begin(), last.end(), m) == last.end()) {
      EXPECT_TRUE(first_set.count(m)) << "mode " << m;
    }
  }
}

TEST(ModeCollapseTest, Validation) {
  const GridMixtureSpec grid;
  ModeCollapseSpec mc;
  mc.modes_missed = 25;
  EXPECT_THROW(MakeModeCollapseSpec(mc, grid, 1), ContractError);
}

}  // namespace
}  // namespace pgb::toy
