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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "pgb/errors.h"
#include "pgb/privacy.h"
#include "pgb/rng.h"

namespace pgb::toy {
namespace {

using nlohmann::json;

// Reads fields from one JSON object, rejecting keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path, std::string_view source)
      : j_(j), path_(std::move(path)), source_(source) {
    if (!j_.is_object()) Fail(path_, "expected an object");
  }

  template <typename T>
  void Read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      Fail(path_ + "." + key, e.what());
    }
  }

  template <typename T>
  void ReadOptional(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      Fail(path_ + "." + key, e.what());
    }
  }

  // Calls fn(child_json, child_path) when the key is present.
  template <typename Fn>
  void Child(const char* key, Fn fn) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it != j_.end()) fn(*it, path_ + "." + key);
  }

  std::string_view source() const { return source_; }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) Fail(path_ + "." + key, "unknown key");
    }
  }

  [[noreturn]] void Fail(const std::string& where,
                         const std::string& msg) const {
    throw ParseError(std::string(source_), 0, where + ": " + msg);
  }

 private:
  const json& j_;
  std::string path_;
  std::string_view source_;
  std::set<std::string> seen_;
};

template <typename Enum, typename ParseFn>
void ReadEnum(ObjectReader& r, const char* key, Enum& out, ParseFn parse,
              const std::string& path) {
  std::optional<std::string> name;
  r.ReadOptional(key, name);
  if (!name) return;
  try {
    out = parse(*name);
  } catch (const ContractError& e) {
    r.Fail(path + "." + key, e.what());
  }
}

json OptionalToJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void Scenario::Validate() const {
  if (schema_version != kScenarioSchemaVersion) {
    throw ContractError("unsupported scenario schema_version " +
                        std::to_string(schema_version));
  }
  grid.Validate();
  if (pools.n_generators < 1 || pools.samples_per_generator < 1) {
    throw ContractError("pools need >= 1 generator and >= 1 sample each");
  }
  if (pools.modes_missed < 0 || pools.modes_missed >= grid.num_modes()) {
    throw ContractError("modes_missed must lie in [0, modes)");
  }
  if (!(pools.jitter_std >= 0.0)) {
    throw ContractError("jitter_std must be >= 0");
  }
  const auto& d = discriminators;
  if (d.feature_map == FeatureKind::kFourier &&
      (d.fourier_dim < 1 || !(d.lengthscale > 0.0))) {
    throw ContractError("Fourier features need fourier_dim >= 1 and "
                        "lengthscale > 0");
  }
  if (d.steps < 0 || !(d.learning_rate > 0.0) || !(d.l2 >= 0.0)) {
    throw ContractError("invalid discriminator training settings");
  }
  if (boost.rounds < 1) throw ContractError("boost rounds must be >= 1");
  if (boost.eta && !(*boost.eta > 0.0)) {
    throw ContractError("eta must be > 0");
  }
  if (boost.is_private) {
    if (boost.eps0 && !(*boost.eps0 > 0.0)) {
      throw ContractError("eps0 must be > 0");
    }
    if (!boost.eps0 && !(boost.eps2 > 0.0)) {
      throw ContractError("eps2 must be > 0");
    }
    if (!(boost.delta2 > 0.0 && boost.delta2 < 1.0)) {
      throw ContractError("delta2 must lie in (0, 1)");
    }
    if (!(boost.eps1 >= 0.0) ||
        !(boost.delta1 >= 0.0 && boost.delta1 < 1.0)) {
      throw ContractError("eps1 must be >= 0 and delta1 in [0, 1)");
    }
  }
  if (!(boost.beta > 0.0 && boost.beta < 1.0)) {
    throw ContractError("beta must lie in (0, 1)");
  }
  if (drs.enabled) {
    if (drs.target_count < 1 || drs.max_proposals < drs.target_count) {
      throw ContractError("DRS needs target_count >= 1 and max_proposals >= "
                          "target_count");
    }
  }
  if (metrics.pmse_permutations < kMinPermutations) {
    throw ContractError("pmse_permutations must be >= " +
                        std::to_string(kMinPermutations));
  }
  metrics.classifier.Validate();
  metrics.quality.Validate();
}

Scenario Scenario::Private() { return Scenario{}; }

Scenario Scenario::NonPrivate() {
  Scenario s;
  s.pools.jitter_std = 0.05;
  s.boost.is_private = false;
  return s;
}

json ScenarioToJson(const Scenario& s) {
  const auto& d = s.discriminators;
  const auto& b = s.boost;
  const auto& m = s.metrics;
  return json{
      {"schema_version", s.schema_version},
      {"seed", s.seed},
      {"grid",
       {{"modes_per_side", s.grid.modes_per_side},
        {"grid_spacing", s.grid.grid_spacing},
        {"variance", s.grid.variance},
        {"samples_per_mode", s.grid.samples_per_mode}}},
      {"pools",
       {{"n_generators", s.pools.n_generators},
        {"samples_per_generator", s.pools.samples_per_generator},
        {"modes_missed", s.pools.modes_missed},
        {"jitter_std", s.pools.jitter_std}}},
      {"discriminators",
       {{"feature_map", FeatureKindName(d.feature_map)},
        {"fourier_dim", d.fourier_dim},
        {"lengthscale", d.lengthscale},
        {"steps", d.steps},
        {"learning_rate", d.learning_rate},
        {"l2", d.l2},
        {"real_subsample", d.real_subsample},
        {"training_set", TrainingSetName(d.training_set)},
        {"include_half", d.include_half}}},
      {"boost",
       {{"private", b.is_private},
        {"rounds", b.rounds},
        {"eta", OptionalToJson(b.eta)},
        {"eps0", OptionalToJson(b.eps0)},
        {"eps2", b.eps2},
        {"delta2", b.delta2},
        {"eps1", b.eps1},
        {"delta1", b.delta1},
        {"beta", b.beta},
        {"record_trajectory", b.record_trajectory}}},
      {"drs",
       {{"enabled", s.drs.enabled},
        {"target_count", s.drs.target_count},
        {"max_proposals", s.drs.max_proposals}}},
      {"metrics",
       {{"pmse_permutations", m.pmse_permutations},
        {"classifier",
         {{"feature_map", FeatureKindName(m.classifier.feature_map)},
          {"steps", m.classifier.steps},
          {"learning_rate", m.classifier.learning_rate},
          {"gradient_tolerance", m.classifier.gradient_tolerance},
          {"max_real_samples", m.classifier.max_real_samples}}},
        {"quality",
         {{"coverage_probability", m.quality.coverage_probability},
          {"chi2_critical", m.quality.chi2_critical},
          {"variance", m.quality.variance}}}}},
  };
}

Scenario ScenarioFromJson(const json& j, std::string_view source) {
  Scenario s;
  ObjectReader root(j, "$", source);
  root.Read("schema_version", s.schema_version);
  root.Read("seed", s.seed);
  root.Child("grid", [&](const json& c, const std::string& p) {
    ObjectReader r(c, p, source);
    r.Read("modes_per_side", s.grid.modes_per_side);
    r.Read("grid_spacing", s.grid.grid_spacing);
    r.Read("variance", s.grid.variance);
    r.Read("samples_per_mode", s.grid.samples_per_mode);
    r.Finish();
  });
  root.Child("pools", [&](const json& c, const std::string& p) {
    ObjectReader r(c, p, source);
    r.Read("n_generators", s.pools.n_generators);
    r.Read("samples_per_generator", s.pools.samples_per_generator);
    r.Read("modes_missed", s.pools.modes_missed);
    r.Read("jitter_std", s.pools.jitter_std);
    r.Finish();
  });
  root.Child("discriminators", [&](const json& c, const std::string& p) {
    auto& d = s.discriminators;
    ObjectReader r(c, p, source);
    ReadEnum(r, "feature_map", d.feature_map, ParseFeatureKind, p);
    r.Read("fourier_dim", d.fourier_dim);
    r.Read("lengthscale", d.lengthscale);
    r.Read("steps", d.steps);
    r.Read("learning_rate", d.learning_rate);
    r.Read("l2", d.l2);
    r.Read("real_subsample", d.real_subsample);
    ReadEnum(r, "training_set", d.training_set, ParseTrainingSet, p);
    r.Read("include_half", d.include_half);
    r.Finish();
  });
  root.Child("boost", [&](const json& c, const std::string& p) {
    auto& b = s.boost;
    ObjectReader r(c, p, source);
    r.Read("private", b.is_private);
    r.Read("rounds", b.rounds);
    r.ReadOptional("eta", b.eta);
    r.ReadOptional("eps0", b.eps0);
    r.Read("eps2", b.eps2);
    r.Read("delta2", b.delta2);
    r.Read("eps1", b.eps1);
    r.Read("delta1", b.delta1);
    r.Read("beta", b.beta);
    r.Read("record_trajectory", b.record_trajectory);
    r.Finish();
  });
  root.Child("drs", [&](const json& c, const std::string& p) {
    ObjectReader r(c, p, source);
    r.Read("enabled", s.drs.enabled);
    r.Read("target_count", s.drs.target_count);
    r.Read("max_proposals", s.drs.max_proposals);
    r.Finish();
  });
  root.Child("metrics", [&](const json& c, const std::string& p) {
    auto& m = s.metrics;
    ObjectReader r(c, p, source);
    r.Read("pmse_permutations", m.pmse_permutations);
    r.Child("classifier", [&](const json& cc, const std::string& pp) {
      ObjectReader rc(cc, pp, source);
      ReadEnum(rc, "feature_map", m.classifier.feature_map, ParseFeatureKind,
               pp);
      rc.Read("steps", m.classifier.steps);
      rc.Read("learning_rate", m.classifier.learning_rate);
      rc.Read("gradient_tolerance", m.classifier.gradient_tolerance);
      rc.Read("max_real_samples", m.classifier.max_real_samples);
      rc.Finish();
    });
    r.Child("quality", [&](const json& cc, const std::string& pp) {
      ObjectReader rc(cc, pp, source);
      rc.Read("coverage_probability", m.quality.coverage_probability);
      rc.Read("chi2_critical", m.quality.chi2_critical);
      rc.Read("variance", m.quality.variance);
      rc.Finish();
    });
    r.Finish();
  });
  root.Finish();
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open scenario file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to a line number.
    std::ifstream again(path);
    std::size_t line = 1;
    std::size_t offset = 0;
    char ch;
    while (offset < e.byte && again.get(ch)) {
      if (ch == '\n') ++line;
      ++offset;
    }
    throw ParseError(path, line, e.what());
  }
  Scenario s = ScenarioFromJson(j, path);
  s.Validate();
  return s;
}

StageSeeds StageSeeds::From(std::uint64_t master) {
  return {
      .data = DeriveSeed(master, "data"),
      .pools = DeriveSeed(master, "pools"),
      .feature_map = DeriveSeed(master, "feature_map"),
      .discriminators = DeriveSeed(master, "discriminators"),
      .boost = DeriveSeed(master, "boost"),
      .drs_baseline = DeriveSeed(master, "drs/baseline"),
      .drs_pgb = DeriveSeed(master, "drs/pgb"),
      .metrics = DeriveSeed(master, "metrics"),
  };
}

ToyData GenerateToyData(const Scenario& s) {
  const StageSeeds seeds = StageSeeds::From(s.seed);
  ToyData data;
  data.real = GenGridMixture(s.grid, seeds.data);
  ModeCollapseSpec collapse;
  collapse.n_generators = s.pools.n_generators;
  collapse.samples_per_generator = s.pools.samples_per_generator;
  collapse.modes_missed = s.pools.modes_missed;
  collapse.jitter_std = s.pools.jitter_std;
  data.pool_spec =
      MakeModeCollapseSpec(collapse, s.grid, DeriveSeed(seeds.pools, "spec"));
  data.pool = MakeCollapsedPools(data.pool_spec, s.grid,
                                 DeriveSeed(seeds.pools, "samples"));
  return data;
}

FeatureMap ScenarioFeatureMap(const Scenario& s) {
  const auto& d = s.discriminators;
  if (d.feature_map == FeatureKind::kFourier) {
    return FeatureMap::Fourier(d.fourier_dim, d.lengthscale,
                               StageSeeds::From(s.seed).feature_map);
  }
  return FeatureMap::OfKind(d.feature_map);
}

std::vector<DiscriminatorModel> TrainScenarioDiscriminators(
    const Scenario& s, const Dataset& real, const Pool& pool) {
  const auto& d = s.discriminators;
  TrainingOptions options;
  options.steps = d.steps;
  options.learning_rate = d.learning_rate;
  options.l2 = d.l2;
  options.max_real_samples = d.real_subsample;
  const FeatureMap map = ScenarioFeatureMap(s);
  auto models = TrainDiscriminatorSequence(
      real.points, pool, map, options, d.training_set,
      StageSeeds::From(s.seed).discriminators);
  if (d.include_half) models.push_back(DiscriminatorModel::ConstantHalf(map));
  return models;
}

BoostConfig MakeBoostConfig(const Scenario& s, const ScoreMatrix& sm) {
  const auto& b = s.boost;
  BoostConfig cfg;
  cfg.rounds = b.rounds;
  cfg.eta = b.eta ? *b.eta : DefaultEta(sm.pool_size(), b.rounds);
  cfg.seed = StageSeeds::From(s.seed).boost;
  cfg.record_trajectory = b.record_trajectory;
  if (b.is_private) {
    PrivacyAccount acct;
    acct.rounds = b.rounds;
    acct.delta = b.delta2;
    acct.eps0 = b.eps0 ? *b.eps0 : CalibrateRounds(b.eps2, b.delta2, b.rounds);
    acct.training_eps = b.eps1;
    acct.training_delta = b.delta1;
    cfg.mode = acct;
  }
  cfg.Validate();
  return cfg;
}

MethodSample LastGeneratorSample(const Pool& pool) {
  if (pool.size() == 0) throw ContractError("empty pool");
  int last = 0;
  for (const PoolId& id : pool.ids) last = std::max(last, id.generator);
  MethodSample sample;
  sample.name = kMethodLastGenerator;
  for (std::size_t b : pool.IndicesOfGenerator(last)) {
    sample.points.push_back(pool.points[b]);
  }
  return sample;
}

MethodSample PgbSample(const Pool& pool, const SyntheticDistribution& phi_bar) {
  if (phi_bar.size() != pool.size()) {
    throw ShapeError("phi-bar has " + std::to_string(phi_bar.size()) +
                     " entries for a pool of " + std::to_string(pool.size()));
  }
  MethodSample sample;
  sample.name = kMethodPgb;
  sample.points = pool.points;
  sample.weights.assign(phi_bar.weights().begin(), phi_bar.weights().end());
  return sample;
}

MethodSample PgbResampledSample(const Pool& pool,
                                const SyntheticDistribution& phi_bar,
                                std::size_t count, std::uint64_t seed) {
  if (phi_bar.size() != pool.size()) {
    throw ShapeError("phi-bar has " + std::to_string(phi_bar.size()) +
                     " entries for a pool of " + std::to_string(pool.size()));
  }
  if (count == 0) throw ContractError("resample count must be >= 1");
  std::discrete_distribution<std::size_t> pick(phi_bar.weights().begin(),
                                               phi_bar.weights().end());
  Rng rng(seed);
  MethodSample sample;
  sample.name = kMethodPgbResampled;
  sample.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    sample.points.push_back(pool.points[pick(rng)]);
  }
  return sample;
}

MethodSample DrsAcceptedSample(std::string name, const Pool& pool,
                               const DrsResult& drs) {
  MethodSample sample;
  sample.name = std::move(name);
  sample.points.reserve(drs.accepted.size());
  for (std::size_t b : drs.accepted) {
    if (b >= pool.size()) throw ShapeError("accepted index outside the pool");
    sample.points.push_back(pool.points[b]);
  }
  return sample;
}

SyntheticDistribution LastGeneratorProposal(const std::vector<PoolId>& ids) {
  if (ids.empty()) throw ContractError("empty pool");
  int last = 0;
  for (const PoolId& id : ids) last = std::max(last, id.generator);
  std::vector<double> w(ids.size(), 0.0);
  for (std::size_t b = 0; b < ids.size(); ++b) {
    if (ids[b].generator == last) w[b] = 1.0;
  }
  return SyntheticDistribution::Normalized(std::move(w));
}

DrsResult RunBaselineDrs(const Scenario& s, const ScoreMatrix& sm) {
  const std::vector<PoolId>& ids = sm.pool_ids();
  int last = 0;
  for (const PoolId& id : ids) last = std::max(last, id.generator);
  const auto phi = LastGeneratorProposal(ids);
  // The last generator's own discriminator; a trailing constant-1/2 scorer
  // is skipped.
  std::size_t row = static_cast<std::size_t>(last);
  if (row >= sm.num_discriminators()) row = sm.num_discriminators() - 1;
  DrsConfig cfg;
  cfg.mode = DrsMode::kLastDiscriminator;
  cfg.target_count = s.drs.target_count;
  cfg.max_proposals = s.drs.max_proposals;
  cfg.seed = StageSeeds::From(s.seed).drs_baseline;
  return DrsSample(phi, sm.row(row), cfg);
}

DrsResult RunPgbDrs(const Scenario& s, const ScoreMatrix& sm,
                    const SyntheticDistribution& phi_bar,
                    const MixtureDiscriminator& d_bar) {
  const std::vector<double> scores = MixtureScores(sm.grid(), d_bar);
  DrsConfig cfg;
  cfg.mode = DrsMode::kMixture;
  cfg.target_count = s.drs.target_count;
  cfg.max_proposals = s.drs.max_proposals;
  cfg.seed = StageSeeds::From(s.seed).drs_pgb;
  return DrsSample(phi_bar, scores, cfg);
}

MethodMetrics EvaluateSample(const Scenario& s, const Dataset& real,
                             const MethodSample& sample) {
  MethodMetrics m;
  m.method = sample.name;
  const QualityScoreResult q =
      QualityScore(sample.points, sample.weights, s.grid, s.metrics.quality);
  m.quality = q.capped;
  m.quality_uncapped = q.uncapped;
  const PmseRatioResult pr = PmseRatio(
      real.points, sample.points, sample.weights, s.metrics.classifier,
      s.metrics.pmse_permutations,
      DeriveSeed(StageSeeds::From(s.seed).metrics, sample.name));
  m.pmse = pr.pmse;
  m.pmse_null = pr.null_mean;
  m.pmse_ratio = pr.ratio;
  const auto p = ModeHistogram(real.points, {}, s.grid);
  const auto qh = ModeHistogram(sample.points, sample.weights, s.grid);
  m.tv_distance = TvDistance(p, qh);
  return m;
}

}  // namespace pgb::toy
