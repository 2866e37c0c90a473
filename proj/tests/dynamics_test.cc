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


#include "pgb/dynamics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/game.h"
#include "pgb/rng.h"
#include "test_util.h"

namespace pgb {
namespace {

TEST(MwUpdateTest, HandComputedStep) {
  // Weights (1/2) e^{ln 2 * 1} and (1/2) e^0 normalize to (2/3, 1/3).
  const auto next = MwUpdate(SyntheticDistribution::Uniform(2),
                             std::vector<double>{1.0, 0.0}, std::log(2.0));
  EXPECT_NEAR(next[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(next[1], 1.0 / 3.0, 1e-15);
}

TEST(MwUpdateTest, ZeroWeightStaysZero) {
  const auto phi = SyntheticDistribution::Create({0.0, 0.5, 0.5});
  const auto next = MwUpdate(phi, std::vector<double>{1.0, 0.2, 0.1}, 3.0);
  EXPECT_EQ(next[0], 0.0);
  EXPECT_GT(next[1], next[2]);
}

TEST(MwUpdateTest, Contracts) {
  const auto phi = SyntheticDistribution::Uniform(2);
  EXPECT_THROW(MwUpdate(phi, std::vector<double>{0.5}, 1.0), ShapeError);
  EXPECT_THROW(MwUpdate(phi, std::vector<double>{0.5, 1.5}, 1.0),
               ContractError);
  EXPECT_THROW(MwUpdate(phi, std::vector<double>{0.5, 0.5}, 0.0),
               ContractError);
}

TEST(MwUpdateTest, LargeEtaDoesNotOverflow) {
  const auto next = MwUpdate(SyntheticDistribution::Uniform(3),
                             std::vector<double>{1.0, 0.999, 0.0}, 1e5);
  double total = next[0] + next[1] + next[2];
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GT(next[0], 0.99);
}

TEST(ScheduleTest, DefaultsAndTheoremRounds) {
  EXPECT_DOUBLE_EQ(DefaultEta(100, 400), 0.5 * std::sqrt(std::log(100.0) / 400.0));
  EXPECT_EQ(TheoremRounds(32, 0.05), static_cast<int>(std::ceil(std::log(32.0) / 0.0025)));
  EXPECT_EQ(TheoremRounds(2, 1.0), 1);
  EXPECT_THROW(TheoremRounds(1, 0.1), ContractError);
  EXPECT_THROW(TheoremRounds(10, 0.0), ContractError);
  EXPECT_THROW(DefaultEta(1, 10), ContractError);
}

TEST(ScheduleTest, RegretBounds) {
  EXPECT_DOUBLE_EQ(RegretBoundSynthetic(0.1, 100, 10),
                   4.0 * 0.1 * 100 + std::log(10.0) / 0.1);
  const PrivacyAccount acct{0.05, 500, 1e-5, 0, 0};
  EXPECT_DOUBLE_EQ(RegretBoundDistinguisher(acct, 10, {0.05}, 1000),
                   2.0 * 500 * std::log(10.0 * 500 / 0.05) / (1000 * 0.05));
  EXPECT_THROW(RegretBoundDistinguisher(acct, 10, {1.5}, 1000), ContractError);
}

TEST(BoostTest, ConfigValidation) {
  Rng rng(1);
  const ScoreMatrix sm = test_util::RandomScoreMatrix(3, 4, 10, rng);
  BoostConfig cfg;
  cfg.rounds = 10;
  EXPECT_THROW(RunPgb(sm, cfg), ContractError);  // eta = 0
  cfg.eta = 0.1;
  cfg.mode = PrivacyAccount{0.1, 9, 1e-5, 0, 0};
  EXPECT_THROW(RunPgb(sm, cfg), ContractError);  // round mismatch
  EXPECT_THROW(RunNonPrivatePgb(sm, cfg), ContractError);
  cfg.mode = NonPrivateMode{};
  EXPECT_THROW(RunPrivatePgb(sm, cfg), ContractError);
}

TEST(BoostTest, DeterministicGivenSeed) {
  Rng rng(4);
  const ScoreMatrix sm = test_util::RandomScoreMatrix(8, 50, 100, rng);
  BoostConfig cfg;
  cfg.rounds = 200;
  cfg.eta = DefaultEta(50, 200);
  cfg.mode = PrivacyAccount{0.2, 200, 1e-5, 0, 0};
  cfg.seed = 77;
  const BoostResult a = RunPgb(sm, cfg);
  const BoostResult b = RunPgb(sm, cfg);
  EXPECT_EQ(a.phi_bar, b.phi_bar);
  EXPECT_EQ(a.d_bar, b.d_bar);
  EXPECT_EQ(a.selected_rounds, b.selected_rounds);
  cfg.seed = 78;
  EXPECT_NE(RunPgb(sm, cfg).selected_rounds, a.selected_rounds);
}

TEST(BoostTest, TrajectoryAveragesToPhiBar) {
  Rng rng(6);
  const ScoreMatrix sm = test_util::RandomScoreMatrix(4, 12, 100, rng);
  BoostConfig cfg;
  cfg.rounds = 37;
  cfg.eta = 0.3;
  cfg.record_trajectory = true;
  const BoostResult r = RunPgb(sm, cfg);
  ASSERT_EQ(r.trajectory.size(), 37u);
  for (double w : r.trajectory.front()) EXPECT_DOUBLE_EQ(w, 1.0 / 12.0);
  for (std::size_t b = 0; b < 12; ++b) {
    double mean = 0.0;
    for (const auto& phi : r.trajectory) mean += phi[b];
    EXPECT_NEAR(mean / 37.0, r.phi_bar[b], 1e-14);
  }
  // Consecutive iterates follow the update rule.
  for (std::size_t t = 0; t + 1 < r.trajectory.size(); ++t) {
    const auto next = MwUpdate(
        SyntheticDistribution::Create(r.trajectory[t]),
        sm.row(r.selected_rounds[t]), cfg.eta);
    for (std::size_t b = 0; b < 12; ++b) {
      EXPECT_NEAR(next[b], r.trajectory[t + 1][b], 1e-12);
    }
  }
  double counted = 0.0;
  for (double v : r.d_bar.weights()) counted += v * 37.0;
  EXPECT_NEAR(counted, 37.0, 1e-9);
}

TEST(BoostTest, NonPrivatePlaysBestResponse) {
  Rng rng(9);
  const ScoreMatrix sm = test_util::RandomScoreMatrix(5, 10, 100, rng);
  BoostConfig cfg;
  cfg.rounds = 30;
  cfg.eta = 0.2;
  cfg.record_trajectory = true;
  const BoostResult r = RunPgb(sm, cfg);
  EXPECT_LE(r.regret_distinguisher, 1e-9);
  for (std::size_t t = 0; t < r.trajectory.size(); ++t) {
    const auto u = PayoffAgainstEachDiscriminator(
        sm, SyntheticDistribution::Create(r.trajectory[t]));
    EXPECT_EQ(static_cast<std::size_t>(
                  std::max_element(u.begin(), u.end()) - u.begin()),
              r.selected_rounds[t]);
  }
  EXPECT_FALSE(r.account.has_value());
}

TEST(BoostTest, SyntheticRegretUnderBoundProperty) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t pool = 2 + rng() % 60;
    const ScoreMatrix sm = test_util::RandomScoreMatrix(1 + rng() % 10, pool, 100, rng);
    BoostConfig cfg;
    cfg.rounds = 1 + static_cast<int>(rng() % 400);
    cfg.eta = 0.01 + Uniform01(rng);
    if (trial % 2) cfg.mode = PrivacyAccount{0.1, cfg.rounds, 1e-5, 0, 0};
    cfg.seed = rng();
    const BoostResult r = RunPgb(sm, cfg);
    EXPECT_LE(r.regret_synthetic, RegretBoundSynthetic(cfg.eta, cfg.rounds, pool));
  }
}

TEST(BoostTest, NonPrivateReachesAlphaOnTwoByTwo) {
  const ScoreMatrix sm =
      ScoreMatrix::Create(10, {0.5, 0.5}, {{0.3, 0.7}, {0.9, 0.1}});
  BoostConfig cfg;
  cfg.rounds = TheoremRounds(2, 0.05);
  cfg.eta = DefaultEta(2, cfg.rounds);
  const BoostResult r = RunPgb(sm, cfg);
  EXPECT_LE(r.gaps.max(), 0.05);
  EXPECT_NEAR(PayoffMixed(sm, r.phi_bar, r.d_bar), 1.0, 0.05);
}

TEST(BoostTest, PrivateRunCarriesAccounting) {
  Rng rng(12);
  const ScoreMatrix sm = test_util::RandomScoreMatrix(3, 5, 100, rng);
  BoostConfig cfg;
  cfg.rounds = 20;
  cfg.eta = 0.1;
  cfg.mode = PrivacyAccount{0.05, 20, 1e-5, 0.9, 1e-5};
  const BoostResult r = RunPgb(sm, cfg);
  ASSERT_TRUE(r.account.has_value());
  EXPECT_EQ(r.account->rounds, 20);
  EXPECT_NEAR(r.account->eps_total,
              0.9 + AdvancedCompositionEpsilon(0.05, 20, 1e-5), 1e-15);
}

}  // namespace
}  // namespace pgb
