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


#include "pgb/toybench/metrics.h"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/rng.h"
#include "pgb/toybench/grid.h"

namespace pgb::toy {
namespace {

GridMixtureSpec SmallGrid(int per_mode) {
  GridMixtureSpec g;
  g.samples_per_mode = per_mode;
  return g;
}

TEST(QualityScoreTest, RealDataScoresNearCoverage) {
  const GridMixtureSpec grid;
  const Dataset real = GenGridMixture(grid, 3);
  const auto q = QualityScore(real.points, {}, grid);
  EXPECT_NEAR(q.capped, 0.99, 0.01);
  EXPECT_NEAR(q.uncapped, 0.99, 0.01);
}

TEST(QualityScoreTest, CollapseToOneModeIsCapped) {
  const GridMixtureSpec grid;
  const std::vector<Point2> pts(50, grid.Centroid(3));
  const auto q = QualityScore(pts, {}, grid);
  EXPECT_EQ(q.capped, 0.04);
  EXPECT_EQ(q.uncapped, 1.0);
  EXPECT_EQ(q.mode_mass[3], 1.0);
}

TEST(QualityScoreTest, AllCentroidsScoreOne) {
  const GridMixtureSpec grid;
  std::vector<Point2> pts;
  for (int k = 0; k < 25; ++k) pts.push_back(grid.Centroid(k));
  EXPECT_NEAR(QualityScore(pts, {}, grid).capped, 1.0, 1e-12);
}

TEST(QualityScoreTest, InvariantToWeightScaleAndOrder) {
  const GridMixtureSpec grid = SmallGrid(20);
  const Dataset d = GenGridMixture(grid, 4);
  Rng rng(5);
  std::vector<double> w(d.size());
  for (double& v : w) v = Uniform01(rng);
  const double base = QualityScore(d.points, w, grid).capped;
  std::vector<double> scaled = w;
  for (double& v : scaled) v *= 37.5;
  EXPECT_NEAR(QualityScore(d.points, scaled, grid).capped, base, 1e-12);
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Point2> p2;
  std::vector<double> w2;
  for (std::size_t i : order) {
    p2.push_back(d.points[i]);
    w2.push_back(w[i]);
  }
  EXPECT_NEAR(QualityScore(p2, w2, grid).capped, base, 1e-12);
}

TEST(QualityScoreTest, ZeroWeightPointsIgnored) {
  const GridMixtureSpec grid;
  std::vector<Point2> pts = {grid.Centroid(0), {10.0, 10.0}};
  EXPECT_EQ(QualityScore(pts, std::vector<double>{1.0, 0.0}, grid).capped, 0.04);
  EXPECT_EQ(QualityScore(pts, std::vector<double>{1.0, 1.0}, grid).capped, 0.04);
  EXPECT_EQ(QualityScore(pts, std::vector<double>{1.0, 1.0}, grid).uncapped, 0.5);
}

TEST(QualityScoreTest, Contracts) {
  const GridMixtureSpec grid;
  const std::vector<Point2> pts = {grid.Centroid(0)};
  EXPECT_THROW(QualityScore(pts, std::vector<double>{1.0, 2.0}, grid),
               ShapeError);
  EXPECT_THROW(QualityScore(pts, std::vector<double>{-1.0}, grid), RangeError);
  EXPECT_THROW(QualityScore(pts, std::vector<double>{0.0}, grid), RangeError);
  QualityScoreParams params;
  params.chi2_critical = 5.0;
  EXPECT_THROW(QualityScore(pts, {}, grid, params), ContractError);
  EXPECT_NEAR(QualityScoreParams{}.radius(), std::sqrt(0.0025 * 9.21034),
              1e-15);
}

TEST(PmseTest, SelfCopyIsNearZero) {
  const Dataset real = GenGridMixture(SmallGrid(200), 6);
  EXPECT_LE(Pmse(real.points, real.points, {}, ClassifierSpec{}, 1), 0.005);
}

TEST(PmseTest, SeparatedSetsScoreHigh) {
  GridMixtureSpec one;
  one.modes_per_side = 1;
  one.samples_per_mode = 1000;
  const Dataset real = GenGridMixture(one, 7);
  std::vector<Point2> synth = GenGridMixture(one, 8).points;
  for (auto& p : synth) p.x1 += 1.0;
  EXPECT_GT(Pmse(real.points, synth, {}, ClassifierSpec{}, 2), 0.2);
}

TEST(PmseTest, WeightsMatter) {
  // Synthetic set holds a matching half and an off-support half; zeroing
  // the off-support half should lower pMSE.
  GridMixtureSpec one;
  one.modes_per_side = 1;
  one.samples_per_mode = 800;
  const Dataset real = GenGridMixture(one, 9);
  std::vector<Point2> synth = GenGridMixture(one, 10).points;
  std::vector<double> w(synth.size(), 1.0);
  for (std::size_t i = 0; i < synth.size() / 2; ++i) {
    synth[i].x1 += 1.0;
    w[i] = 0.0;
  }
  const double unweighted = Pmse(real.points, synth, {}, ClassifierSpec{}, 3);
  const double weighted = Pmse(real.points, synth, w, ClassifierSpec{}, 3);
  EXPECT_LT(weighted, 0.01);
  EXPECT_GT(unweighted, 0.05);
}

// Draws with replacement, so mode counts are multinomial as in the null.
std::vector<Point2> IidMixtureSample(std::size_t n, std::uint64_t seed) {
  const Dataset pool = GenGridMixture(SmallGrid(400), seed);
  Rng rng(seed + 1);
  std::vector<Point2> out(n);
  for (auto& p : out) p = pool.points[rng() % pool.size()];
  return out;
}

TEST(PmseRatioTest, SameDistributionNearOne) {
  const auto real = IidMixtureSample(2000, 11);
  const auto synth = IidMixtureSample(2000, 12);
  const auto r =
      PmseRatio(real, synth, {}, ClassifierSpec{}, kMinPermutations, 4);
  EXPECT_GT(r.ratio, 0.2);
  EXPECT_LT(r.ratio, 4.0);
  EXPECT_NEAR(r.ratio, r.pmse / r.null_mean, 1e-12);
}

TEST(PmseRatioTest, StratifiedCopiesFallBelowNull) {
  // Equal per-mode counts match better than a random relabelling does.
  const Dataset real = GenGridMixture(SmallGrid(80), 11);
  const Dataset synth = GenGridMixture(SmallGrid(80), 12);
  const auto r = PmseRatio(real.points, synth.points, {}, ClassifierSpec{},
                           kMinPermutations, 4);
  EXPECT_LT(r.ratio, 0.5);
}

TEST(PmseRatioTest, DifferentDistributionsFarAboveOne) {
  GridMixtureSpec one;
  one.modes_per_side = 1;
  one.samples_per_mode = 500;
  const Dataset real = GenGridMixture(one, 13);
  std::vector<Point2> synth = GenGridMixture(one, 14).points;
  for (auto& p : synth) p.x2 += 0.3;
  const auto r =
      PmseRatio(real.points, synth, {}, ClassifierSpec{}, kMinPermutations, 5);
  EXPECT_GT(r.ratio, 20.0);
}

TEST(PmseRatioTest, NeedsEnoughPermutations) {
  const std::vector<Point2> pts = {{0.0, 0.0}, {1.0, 1.0}};
  EXPECT_THROW(PmseRatio(pts, pts, {}, ClassifierSpec{}, kMinPermutations - 1, 1),
               ContractError);
  ClassifierSpec fourier;
  fourier.feature_map = FeatureKind::kFourier;
  EXPECT_THROW(Pmse(pts, pts, {}, fourier, 1), ContractError);
}

TEST(HistogramTest, NearestModeAndNormalization) {
  const GridMixtureSpec grid;
  EXPECT_EQ(NearestMode({-2.1, -1.9}, grid), 0);
  EXPECT_EQ(NearestMode({0.4, 0.4}, grid), 12);
  const std::vector<Point2> pts = {grid.Centroid(1), grid.Centroid(1),
                                   grid.Centroid(2)};
  const auto h = ModeHistogram(pts, std::vector<double>{1.0, 1.0, 2.0}, grid);
  EXPECT_DOUBLE_EQ(h[1], 0.5);
  EXPECT_DOUBLE_EQ(h[2], 0.5);
}

TEST(TvDistanceTest, HandCases) {
  EXPECT_EQ(TvDistance(std::vector<double>{0.5, 0.5},
                       std::vector<double>{0.75, 0.25}),
            0.25);
  EXPECT_EQ(TvDistance(std::vector<double>{1.0, 0.0},
                       std::vector<double>{0.0, 1.0}),
            1.0);
  const std::vector<double> p = {0.2, 0.3, 0.5};
  EXPECT_EQ(TvDistance(p, p), 0.0);
  EXPECT_THROW(TvDistance(p, std::vector<double>{1.0}), ShapeError);
}

}  // namespace
}  // namespace pgb::toy
