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


#include "pgb/toybench/scenario.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb::toy {
namespace {

Scenario Tiny() {
  Scenario s = Scenario::Private();
  s.grid.samples_per_mode = 40;
  s.pools.n_generators = 4;
  s.pools.samples_per_generator = 100;
  s.discriminators.fourier_dim = 16;
  s.discriminators.steps = 40;
  s.discriminators.real_subsample = 300;
  s.boost.rounds = 60;
  s.drs.target_count = 50;
  return s;
}

TEST(ScenarioTest, PresetsDiffer) {
  const Scenario p = Scenario::Private();
  const Scenario np = Scenario::NonPrivate();
  EXPECT_TRUE(p.boost.is_private);
  EXPECT_FALSE(np.boost.is_private);
  EXPECT_LT(np.pools.jitter_std, p.pools.jitter_std);
  EXPECT_NO_THROW(p.Validate());
  EXPECT_NO_THROW(np.Validate());
}

TEST(ScenarioTest, JsonRoundTrip) {
  Scenario s = Tiny();
  s.boost.eta = 0.125;
  s.boost.eps0 = 0.003;
  s.seed = 123456789012345ULL;
  const nlohmann::json j = ScenarioToJson(s);
  const Scenario back = ScenarioFromJson(j, "mem");
  EXPECT_EQ(ScenarioToJson(back), j);
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(*back.boost.eta, 0.125);
}

TEST(ScenarioTest, PartialJsonKeepsDefaults) {
  const Scenario s =
      ScenarioFromJson(nlohmann::json::parse(R"({"boost": {"rounds": 5}})"), "m");
  EXPECT_EQ(s.boost.rounds, 5);
  EXPECT_EQ(s.pools.n_generators, Scenario{}.pools.n_generators);
}

TEST(ScenarioTest, UnknownKeyNamesItsPath) {
  try {
    ScenarioFromJson(nlohmann::json::parse(R"({"boost": {"round": 5}})"), "m");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("$.boost.round"), std::string::npos)
        << e.what();
  }
}

TEST(ScenarioTest, WrongTypeRejected) {
  EXPECT_THROW(ScenarioFromJson(
                   nlohmann::json::parse(R"({"seed": "seven"})"), "m"),
               ParseError);
  EXPECT_THROW(
      ScenarioFromJson(nlohmann::json::parse(
                           R"({"discriminators": {"feature_map": "cubic"}})"),
                       "m"),
      Error);
}

TEST(ScenarioTest, LoadReportsLineOfSyntaxError) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("pgb_scenario_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + ".json");
  {
    std::ofstream out(path);
    out << "{\n  \"seed\": 3,\n  \"boost\": {\n    \"rounds\": ,\n  }\n}\n";
  }
  try {
    LoadScenario(path.string());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(LoadScenario("/nonexistent/scenario.json"), IoError);
}

TEST(ScenarioTest, ValidationCatchesBadValues) {
  Scenario s;
  s.schema_version = 2;
  EXPECT_THROW(s.Validate(), ContractError);
  s = Scenario{};
  s.pools.modes_missed = 25;
  EXPECT_THROW(s.Validate(), ContractError);
  s = Scenario{};
  s.boost.rounds = 0;
  EXPECT_THROW(s.Validate(), ContractError);
}

TEST(StageSeedsTest, DistinctAndStable) {
  const StageSeeds a = StageSeeds::From(7);
  const std::set<std::uint64_t> all = {a.data,     a.pools,        a.feature_map,
                                       a.discriminators, a.boost,
                                       a.drs_baseline,   a.drs_pgb,
                                       a.metrics};
  EXPECT_EQ(all.size(), 8u);
  EXPECT_EQ(StageSeeds::From(7).boost, a.boost);
  EXPECT_NE(StageSeeds::From(8).boost, a.boost);
  EXPECT_EQ(a.data, DeriveSeed(7, "data"));
}

TEST(PipelineTest, TinyScenarioIsDeterministic) {
  const Scenario s = Tiny();
  auto run = [&] {
    const ToyData data = GenerateToyData(s);
    const auto models = TrainScenarioDiscriminators(s, data.real, data.pool);
    const ScoreMatrix sm = BuildScoreMatrix(data.real.points, data.pool, models);
    const BoostResult r = RunPgb(sm, MakeBoostConfig(s, sm));
    return std::make_pair(r.phi_bar, r.selected_rounds);
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

TEST(PipelineTest, ShapesAndMethods) {
  Scenario s = Tiny();
  s.discriminators.include_half = true;
  const ToyData data = GenerateToyData(s);
  ASSERT_EQ(data.pool.size(), 400u);
  const auto models = TrainScenarioDiscriminators(s, data.real, data.pool);
  ASSERT_EQ(models.size(), 5u);
  const ScoreMatrix sm = BuildScoreMatrix(data.real.points, data.pool, models);
  EXPECT_EQ(sm.FindHalfDiscriminator(), 4);

  const BoostConfig cfg = MakeBoostConfig(s, sm);
  ASSERT_TRUE(cfg.is_private());
  const auto& acct = std::get<PrivacyAccount>(cfg.mode);
  EXPECT_NEAR(AdvancedCompositionEpsilon(acct.eps0, acct.rounds, acct.delta),
              s.boost.eps2, 1e-9);

  const MethodSample last = LastGeneratorSample(data.pool);
  EXPECT_EQ(last.points.size(), 100u);
  const auto proposal = LastGeneratorProposal(data.pool.ids);
  for (std::size_t b = 0; b < 300; ++b) EXPECT_EQ(proposal[b], 0.0);

  const BoostResult r = RunPgb(sm, cfg);
  const DrsResult base = RunBaselineDrs(s, sm);
  for (std::size_t b : base.accepted) EXPECT_EQ(data.pool.ids[b].generator, 3);
  const DrsResult pgb = RunPgbDrs(s, sm, r.phi_bar, r.d_bar);
  EXPECT_EQ(pgb.accepted.size(), 50u);
  const MethodSample accepted = DrsAcceptedSample(kMethodPgbDrs, data.pool, pgb);
  EXPECT_EQ(accepted.points.size(), 50u);

  const MethodMetrics m = EvaluateSample(s, data.real, PgbSample(data.pool, r.phi_bar));
  EXPECT_EQ(m.method, kMethodPgb);
  EXPECT_GT(m.quality, 0.0);
  EXPECT_LE(m.quality, 1.0);
  EXPECT_GE(m.tv_distance, 0.0);
}

TEST(PipelineTest, ResampledPgbFollowsPhiBar) {
  Pool pool;
  pool.points = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  pool.modes = {0, 1, 2};
  pool.ids = {{0, 0}, {0, 1}, {1, 0}};
  const auto phi = SyntheticDistribution::Create({0.0, 0.25, 0.75});
  const MethodSample s = PgbResampledSample(pool, phi, 20000, 5);
  EXPECT_EQ(s.name, kMethodPgbResampled);
  EXPECT_TRUE(s.weights.empty());
  double third = 0.0;
  for (const Point2& p : s.points) {
    EXPECT_NE(p.x1, 0.0);
    third += p.x1 == 2.0 ? 1.0 : 0.0;
  }
  // Binomial standard deviation is about 0.003.
  EXPECT_NEAR(third / 20000.0, 0.75, 0.015);
  EXPECT_EQ(PgbResampledSample(pool, phi, 50, 9).points,
            PgbResampledSample(pool, phi, 50, 9).points);
  EXPECT_THROW(PgbResampledSample(pool, SyntheticDistribution::Uniform(2), 5, 1),
               ShapeError);
}

TEST(PipelineTest, ExplicitEps0Wins) {
  Scenario s = Tiny();
  s.boost.eps0 = 0.02;
  Rng rng(1);
  const ScoreMatrix sm =
      ScoreMatrix::Create(10, {0.5}, {std::vector<double>(3, 0.5)});
  const BoostConfig cfg = MakeBoostConfig(s, sm);
  EXPECT_EQ(std::get<PrivacyAccount>(cfg.mode).eps0, 0.02);
  s.boost.is_private = false;
  EXPECT_FALSE(MakeBoostConfig(s, sm).is_private());
}

}  // namespace
}  // namespace pgb::toy
