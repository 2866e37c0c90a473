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

#ifndef PGB_TOYBENCH_SCENARIO_H_
#define PGB_TOYBENCH_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pgb/dynamics.h"
#include "pgb/rejection.h"
#include "pgb/score_matrix.h"
#include "pgb/toybench/discriminator.h"
#include "pgb/toybench/grid.h"
#include "pgb/toybench/metrics.h"

namespace pgb::toy {

inline constexpr int kScenarioSchemaVersion = 1;

struct ScenarioPools {
  int n_generators = 100;
  int samples_per_generator = 200;
  int modes_missed = 5;
  double jitter_std = 0.2;
};

struct ScenarioDiscriminators {
  FeatureKind feature_map = FeatureKind::kFourier;
  int fourier_dim = 128;
  double lengthscale = 0.25;
  int steps = 500;
  double learning_rate = 0.5;
  double l2 = 1e-3;
  std::size_t real_subsample = 2500;
  TrainingSet training_set = TrainingSet::kGenerator;
  bool include_half = false;  // append the constant-1/2 scorer
};

struct ScenarioBoost {
  bool is_private = true;
  int rounds = 1000;
  std::optional<double> eta;   // default: DefaultEta
  std::optional<double> eps0;  // when absent, calibrated from eps2
  double eps2 = 0.1;
  double delta2 = 1e-5;
  double eps1 = 0.9;
  double delta1 = 1e-5;
  double beta = 0.05;
  bool record_trajectory = false;
};

struct ScenarioDrs {
  bool enabled = true;
  std::size_t target_count = 5000;
  std::size_t max_proposals = 10'000'000;
};

inline ClassifierSpec DefaultClassifier() {
  ClassifierSpec spec;
  spec.max_real_samples = 5000;
  return spec;
}

struct ScenarioMetrics {
  int pmse_permutations = kMinPermutations;
  ClassifierSpec classifier = DefaultClassifier();
  QualityScoreParams quality;
};

// Everything one seeded run of the toy pipeline needs.
struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::uint64_t seed = 7;
  GridMixtureSpec grid;
  ScenarioPools pools;
  ScenarioDiscriminators discriminators;
  ScenarioBoost boost;
  ScenarioDrs drs;
  ScenarioMetrics metrics;

  void Validate() const;

  static Scenario Private();     // noisy generators, eps2 = 0.1
  static Scenario NonPrivate();  // sharper generators, exact best responses
};

nlohmann::json ScenarioToJson(const Scenario& s);
// Missing keys keep the private preset's values; unknown keys and type
// mismatches raise ParseError naming `source`.
Scenario ScenarioFromJson(const nlohmann::json& j, std::string_view source);
Scenario LoadScenario(const std::string& path);

// Child seeds of the run; every stage draws from its own stream.
struct StageSeeds {
  std::uint64_t data;
  std::uint64_t pools;
  std::uint64_t feature_map;
  std::uint64_t discriminators;
  std::uint64_t boost;
  std::uint64_t drs_baseline;
  std::uint64_t drs_pgb;
  std::uint64_t metrics;

  static StageSeeds From(std::uint64_t master);
};

struct ToyData {
  Dataset real;
  GeneratorPoolSpec pool_spec;
  Pool pool;
};

ToyData GenerateToyData(const Scenario& s);

FeatureMap ScenarioFeatureMap(const Scenario& s);

std::vector<DiscriminatorModel> TrainScenarioDiscriminators(
    const Scenario& s, const Dataset& real, const Pool& pool);

// Resolves eta and the privacy budget against the score matrix.
BoostConfig MakeBoostConfig(const Scenario& s, const ScoreMatrix& sm);

// A (possibly weighted) sample produced by one method.
struct MethodSample {
  std::string name;
  std::vector<Point2> points;
  std::vector<double> weights;  // empty means unit weights
};

inline constexpr const char* kMethodLastGenerator = "last_generator";
inline constexpr const char* kMethodDrs = "drs";
inline constexpr const char* kMethodPgb = "pgb";
inline constexpr const char* kMethodPgbDrs = "pgb_drs";
inline constexpr const char* kMethodPgbResampled = "pgb_resampled";

// The last generator's samples, uniformly weighted.
MethodSample LastGeneratorSample(const Pool& pool);
// The whole pool under phi-bar.
MethodSample PgbSample(const Pool& pool, const SyntheticDistribution& phi_bar);
// Accepted DRS draws, one unit-weight point per acceptance.
// `count` draws with replacement from phi-bar, for unweighted metrics.
MethodSample PgbResampledSample(const Pool& pool,
                                const SyntheticDistribution& phi_bar,
                                std::size_t count, std::uint64_t seed);
MethodSample DrsAcceptedSample(std::string name, const Pool& pool,
                               const DrsResult& drs);

// Uniform distribution over the samples of the highest generator id.
SyntheticDistribution LastGeneratorProposal(const std::vector<PoolId>& ids);

// Uniform proposal over the last generator's samples, scored by the last
// discriminator.
DrsResult RunBaselineDrs(const Scenario& s, const ScoreMatrix& sm);
// phi-bar proposal scored by the mixture discriminator.
DrsResult RunPgbDrs(const Scenario& s, const ScoreMatrix& sm,
                    const SyntheticDistribution& phi_bar,
                    const MixtureDiscriminator& d_bar);

struct MethodMetrics {
  std::string method;
  double quality = 0.0;
  double quality_uncapped = 0.0;
  double pmse = 0.0;
  double pmse_null = 0.0;
  double pmse_ratio = 0.0;
  double tv_distance = 0.0;
};

MethodMetrics EvaluateSample(const Scenario& s, const Dataset& real,
                             const MethodSample& sample);

}  // namespace pgb::toy

#endif  // PGB_TOYBENCH_SCENARIO_H_
