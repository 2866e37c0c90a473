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


#include "pgb/toybench/discriminator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/rng.h"
#include "pgb/toybench/grid.h"

namespace pgb::toy {
namespace {

std::vector<Point2> Gaussian(std::size_t n, Point2 center, double sd,
                             std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, sd);
  std::vector<Point2> out(n);
  for (auto& p : out) p = {center.x1 + noise(rng), center.x2 + noise(rng)};
  return out;
}

std::vector<Point2> Ring(std::size_t n, double r_lo, double r_hi,
                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> out(n);
  for (auto& p : out) {
    const double angle = 2.0 * std::numbers::pi * Uniform01(rng);
    const double r = r_lo + (r_hi - r_lo) * Uniform01(rng);
    p = {r * std::cos(angle), r * std::sin(angle)};
  }
  return out;
}

double Accuracy(const DiscriminatorModel& m, const std::vector<Point2>& real,
                const std::vector<Point2>& fake) {
  double correct = 0.0;
  for (const auto& p : real) correct += m.Predict(p) > 0.5 ? 1.0 : 0.0;
  for (const auto& p : fake) correct += m.Predict(p) < 0.5 ? 1.0 : 0.0;
  return correct / static_cast<double>(real.size() + fake.size());
}

TrainingOptions Options() {
  TrainingOptions o;
  o.steps = 500;
  o.learning_rate = 0.5;
  return o;
}

TEST(FeatureMapTest, Dimensions) {
  EXPECT_EQ(FeatureMap::Linear().dimension(), 2u);
  EXPECT_EQ(FeatureMap::Quadratic().dimension(), 5u);
  EXPECT_EQ(FeatureMap::Fourier(16, 0.5, 3).dimension(), 16u);
  EXPECT_THROW(FeatureMap::OfKind(FeatureKind::kFourier), ContractError);
  EXPECT_EQ(ParseFeatureKind(FeatureKindName(FeatureKind::kQuadratic)),
            FeatureKind::kQuadratic);
  EXPECT_THROW(ParseFeatureKind("cubic"), ContractError);
}

TEST(FeatureMapTest, QuadraticValues) {
  std::vector<double> f(5);
  FeatureMap::Quadratic().Apply({2.0, -3.0}, f);
  EXPECT_EQ(f, (std::vector<double>{2.0, -3.0, 4.0, 9.0, -6.0}));
}

TEST(FeatureMapTest, FourierIsSeededAndBounded) {
  const FeatureMap a = FeatureMap::Fourier(32, 0.25, 9);
  EXPECT_EQ(a, FeatureMap::Fourier(32, 0.25, 9));
  EXPECT_NE(a, FeatureMap::Fourier(32, 0.25, 10));
  std::vector<double> f(32);
  a.Apply({0.3, -1.2}, f);
  for (double v : f) EXPECT_LE(std::abs(v), std::sqrt(2.0) + 1e-15);
  const FeatureMap b =
      FeatureMap::FourierFromParams(a.frequencies(), a.phases());
  EXPECT_EQ(a, b);
}

TEST(DiscriminatorTest, ConstantHalfPredictsHalf) {
  const auto m = DiscriminatorModel::ConstantHalf(FeatureMap::Quadratic());
  EXPECT_DOUBLE_EQ(m.Predict({4.0, -1.0}), 0.5);
  DiscriminatorModel bad = m;
  bad.coefficients.pop_back();
  EXPECT_THROW(bad.Validate(), ShapeError);
}

TEST(TrainingTest, IdenticalSetsStayNearHalf) {
  const auto real = Gaussian(2000, {0.0, 0.0}, 1.0, 1);
  const auto fake = Gaussian(2000, {0.0, 0.0}, 1.0, 2);
  const auto m =
      TrainDiscriminator(real, fake, FeatureMap::Quadratic(), Options(), 3);
  double mean_dev = 0.0;
  for (const auto& p : real) mean_dev += std::abs(m.Predict(p) - 0.5);
  EXPECT_LE(mean_dev / real.size(), 0.05);
  EXPECT_NEAR(m.Predict({0.0, 0.0}), 0.5, 0.05);
}

TEST(TrainingTest, SeparatedSetsAreClassified) {
  const auto real = Gaussian(1000, {-2.0, 0.0}, 0.3, 4);
  const auto fake = Gaussian(1000, {2.0, 0.0}, 0.3, 5);
  const auto m =
      TrainDiscriminator(real, fake, FeatureMap::Linear(), Options(), 6);
  EXPECT_GE(Accuracy(m, real, fake), 0.99);
}

TEST(TrainingTest, CircularBoundaryNeedsQuadraticFeatures) {
  const auto real = Ring(1500, 0.0, 1.0, 7);
  const auto fake = Ring(1500, 1.3, 2.0, 8);
  const auto quad =
      TrainDiscriminator(real, fake, FeatureMap::Quadratic(), Options(), 9);
  const auto lin =
      TrainDiscriminator(real, fake, FeatureMap::Linear(), Options(), 9);
  EXPECT_GE(Accuracy(quad, real, fake), 0.95);
  EXPECT_LE(Accuracy(lin, real, fake), 0.6);
}

TEST(TrainingTest, ObjectiveNeverIncreases) {
  const auto real = Gaussian(800, {0.0, 0.0}, 0.5, 10);
  const auto fake = Ring(800, 0.5, 1.5, 11);
  for (const FeatureMap& map :
       {FeatureMap::Quadratic(), FeatureMap::Fourier(64, 0.5, 12)}) {
    TrainingTrace trace;
    TrainingOptions o = Options();
    o.learning_rate = 5.0;  // large enough to need backtracking
    o.checkpoint_every = 10;
    TrainDiscriminator(real, fake, map, o, 13, &trace);
    ASSERT_GE(trace.checkpoint_losses.size(), 2u);
    for (std::size_t i = 1; i < trace.checkpoint_losses.size(); ++i) {
      EXPECT_LE(trace.checkpoint_losses[i],
                trace.checkpoint_losses[i - 1] + 1e-12);
    }
  }
}

TEST(TrainingTest, BatchMatchesSingleFits) {
  const FeatureMap map = FeatureMap::Fourier(24, 0.5, 14);
  const auto real_pts = Gaussian(600, {0.0, 0.0}, 0.7, 15);
  const FeatureMatrix real = ComputeFeatures(map, real_pts);
  std::vector<FeatureMatrix> fakes;
  for (int g = 0; g < 3; ++g) {
    fakes.push_back(ComputeFeatures(
        map, Gaussian(200 + 50 * g, {0.3 * g, -0.2 * g}, 0.5, 16 + g)));
  }
  TrainingOptions o = Options();
  o.l2 = 1e-3;
  const auto batch = FitRealVsFakeBatch(real, fakes, o);
  ASSERT_EQ(batch.size(), 3u);
  for (std::size_t g = 0; g < 3; ++g) {
    FeatureMatrix stacked;
    stacked.cols = real.cols;
    stacked.rows = real.rows + fakes[g].rows;
    stacked.data = real.data;
    stacked.data.insert(stacked.data.end(), fakes[g].data.begin(),
                        fakes[g].data.end());
    std::vector<double> labels(stacked.rows, 0.0);
    std::vector<double> weights(stacked.rows, 0.5 / fakes[g].rows);
    for (std::size_t i = 0; i < real.rows; ++i) {
      labels[i] = 1.0;
      weights[i] = 0.5 / real.rows;
    }
    const LogisticFit single = FitLogistic(stacked, labels, weights, o);
    EXPECT_NEAR(batch[g].intercept, single.intercept, 1e-8);
    for (std::size_t k = 0; k < single.coefficients.size(); ++k) {
      EXPECT_NEAR(batch[g].coefficients[k], single.coefficients[k], 1e-8);
    }
  }
}

TEST(TrainingTest, Contracts) {
  const std::vector<Point2> empty;
  const auto some = Gaussian(10, {0.0, 0.0}, 1.0, 1);
  EXPECT_THROW(TrainDiscriminator(empty, some, FeatureMap::Linear(), Options(), 1),
               ContractError);
  EXPECT_EQ(ParseTrainingSet("cumulative"), TrainingSet::kCumulative);
  EXPECT_THROW(ParseTrainingSet("all"), ContractError);
}

TEST(ScoreMatrixBuildTest, HalfRowAndShape) {
  Pool pool;
  pool.points = {{0.0, 0.0}, {1.0, 1.0}, {-1.0, 0.5}};
  pool.modes = {0, 0, 0};
  pool.ids = {{0, 0}, {0, 1}, {1, 0}};
  const std::vector<Point2> real = {{0.1, 0.1}, {0.2, -0.3}};
  std::vector<DiscriminatorModel> models = {
      DiscriminatorModel::ConstantHalf(FeatureMap::Linear())};
  const ScoreMatrix sm = BuildScoreMatrix(real, pool, models);
  EXPECT_EQ(sm.num_discriminators(), 1u);
  EXPECT_EQ(sm.pool_size(), 3u);
  EXPECT_EQ(sm.n_real(), 2);
  EXPECT_EQ(sm.FindHalfDiscriminator(), 0);
  EXPECT_EQ(sm.pool_ids()[2], (PoolId{1, 0}));
}

TEST(ScoreMatrixBuildTest, OneByOneHandValue) {
  Pool pool;
  pool.points = {{1.0, 2.0}};
  pool.modes = {0};
  pool.ids = {{0, 0}};
  DiscriminatorModel m;
  m.feature_map = FeatureMap::Linear();
  m.coefficients = {0.5, -0.25};
  m.intercept = 0.1;
  const std::vector<Point2> real = {{0.0, 0.0}};
  const ScoreMatrix sm = BuildScoreMatrix(real, pool, std::vector{m});
  EXPECT_NEAR(sm.score(0, 0), 1.0 / (1.0 + std::exp(-0.1)), 1e-15);
  EXPECT_NEAR(sm.real_mean(0), 1.0 / (1.0 + std::exp(-0.1)), 1e-15);
}

TEST(ScoreMatrixBuildTest, ScoresAreClippedButMeansAreNot) {
  Pool pool;
  pool.points = {{1.0, 0.0}, {-1.0, 0.0}};
  pool.modes = {0, 0};
  pool.ids = {{0, 0}, {0, 1}};
  DiscriminatorModel m;
  m.feature_map = FeatureMap::Linear();
  m.coefficients = {100.0, 0.0};
  const std::vector<Point2> real = {{1.0, 0.0}};
  const ScoreMatrix sm = BuildScoreMatrix(real, pool, std::vector{m});
  EXPECT_DOUBLE_EQ(sm.score(0, 0), kScoreCeiling);
  EXPECT_DOUBLE_EQ(sm.score(0, 1), kScoreFloor);
  EXPECT_GT(sm.real_mean(0), kScoreCeiling);
}

TEST(ScoreMatrixBuildTest, RealMeanSensitivityIsAtMostOneOverN) {
  const auto real = Gaussian(200, {0.0, 0.0}, 1.0, 20);
  const auto fake = Gaussian(200, {0.5, 0.0}, 1.0, 21);
  Pool pool;
  pool.points = fake;
  pool.modes.assign(fake.size(), 0);
  for (int i = 0; i < 200; ++i) pool.ids.push_back({0, i});
  std::vector<DiscriminatorModel> models;
  for (int k = 0; k < 4; ++k) {
    models.push_back(TrainDiscriminator(real, fake,
                                        FeatureMap::Fourier(16, 0.5, 30 + k),
                                        Options(), 40 + k));
  }
  const ScoreMatrix base = BuildScoreMatrix(real, pool, models);
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    auto neighbour = real;
    neighbour[rng() % neighbour.size()] = {4.0 * Uniform01(rng) - 2.0,
                                           4.0 * Uniform01(rng) - 2.0};
    const ScoreMatrix other = BuildScoreMatrix(neighbour, pool, models);
    for (std::size_t j = 0; j < models.size(); ++j) {
      EXPECT_LE(std::abs(other.real_mean(j) - base.real_mean(j)),
                1.0 / 200.0 + 1e-15);
    }
  }
}

}  // namespace
}  // namespace pgb::toy
