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

#include "pgb/cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pgb/cli/io.h"
#include "pgb/cli/report.h"
#include "pgb/cli/svg.h"
#include "pgb/dynamics.h"
#include "pgb/errors.h"
#include "pgb/rejection.h"
#include "pgb/rng.h"
#include "pgb/toybench/scenario.h"

namespace pgb::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using toy::Scenario;

// Files inside a run directory.
constexpr const char* kScenarioJson = "scenario.json";
constexpr const char* kRealCsv = "real.csv";
constexpr const char* kPoolCsv = "pool.csv";
constexpr const char* kDiscsJson = "discriminators.json";
constexpr const char* kMatrixCsv = "score_matrix.csv";
constexpr const char* kPhiBarCsv = "phi_bar.csv";
constexpr const char* kDBarCsv = "d_bar.csv";
constexpr const char* kTrajectoryCsv = "trajectory.csv";
constexpr const char* kBoostJson = "boost.json";
constexpr const char* kReportJson = "report.json";
constexpr const char* kMetricsSvg = "metrics.svg";

std::string AcceptedCsv(const std::string& method) {
  return "accepted_" + method + ".csv";
}
std::string DrsJson(const std::string& method) {
  return "drs_" + method + ".json";
}
std::string ScatterName(const std::string& method) {
  return "scatter_" + method + ".svg";
}

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Scenario JSON file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Master seed (overrides the scenario)");
  cmd->add_option("--out", f.out, "Existing run directory")
      ->capture_default_str();
}

Scenario ResolveScenario(const CommonFlags& f) {
  Scenario s = f.config.empty() ? Scenario::Private() : toy::LoadScenario(f.config);
  if (f.seed) s.seed = *f.seed;
  s.Validate();
  return s;
}

fs::path OutDir(const CommonFlags& f) {
  const fs::path dir(f.out);
  if (!fs::is_directory(dir)) {
    throw IoError(dir.string(), "output directory does not exist");
  }
  return dir;
}

// An input path given explicitly, or the conventional file in the run
// directory.
fs::path InputPath(const std::string& flag, const fs::path& dir,
                   const char* default_name) {
  return flag.empty() ? dir / default_name : fs::path(flag);
}

struct BoostFlags {
  bool non_private = false;
  std::optional<int> rounds;
  std::optional<double> alpha;
  std::optional<double> eta;
  std::optional<double> eps0;
  std::optional<double> eps2;
  std::optional<double> delta2;
  std::optional<double> eps1;
  std::optional<double> delta1;
  std::optional<double> beta;
  bool trajectory = false;
};

void AddBoostFlags(CLI::App* cmd, BoostFlags& f) {
  cmd->add_flag("--non-private", f.non_private,
                "Exact best responses instead of the exponential mechanism");
  auto* rounds = cmd->add_option("--rounds", f.rounds, "Boosting rounds T");
  cmd->add_option("--alpha", f.alpha,
                  "Pick T = ceil(log|B| / alpha^2) instead of --rounds")
      ->excludes(rounds);
  cmd->add_option("--eta", f.eta, "MW learning rate (default sqrt(log|B|/T)/2)");
  auto* eps0 = cmd->add_option("--eps0", f.eps0, "Per-round budget");
  cmd->add_option("--eps2", f.eps2, "Total boosting budget; calibrates eps0")
      ->excludes(eps0);
  cmd->add_option("--delta2", f.delta2, "Composition slack of the boosting");
  cmd->add_option("--eps1", f.eps1, "Declared generator-training epsilon");
  cmd->add_option("--delta1", f.delta1, "Declared generator-training delta");
  cmd->add_option("--beta", f.beta, "Failure probability of regret bounds");
  cmd->add_flag("--trajectory", f.trajectory, "Write every round's phi");
}

void ApplyBoostFlags(const BoostFlags& f, std::size_t pool_size, Scenario& s) {
  auto& b = s.boost;
  if (f.non_private) b.is_private = false;
  if (f.rounds) b.rounds = *f.rounds;
  if (f.alpha) b.rounds = TheoremRounds(pool_size, *f.alpha);
  if (f.eta) b.eta = *f.eta;
  if (f.eps0) b.eps0 = *f.eps0;
  if (f.eps2) {
    b.eps2 = *f.eps2;
    b.eps0.reset();
  }
  if (f.delta2) b.delta2 = *f.delta2;
  if (f.eps1) b.eps1 = *f.eps1;
  if (f.delta1) b.delta1 = *f.delta1;
  if (f.beta) b.beta = *f.beta;
  if (f.trajectory) b.record_trajectory = true;
  s.Validate();
}

void LogWrite(std::ostream& log, const fs::path& path) {
  const std::string bytes = ReadTextFile(path);
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << Fnv1a64(bytes);
  log << "wrote " << path.string() << " (" << bytes.size()
      << " bytes, fnv1a64 " << hash.str() << ")\n";
}

void SaveJsonLogged(std::ostream& log, const fs::path& path, const json& j) {
  SaveJsonFile(path, j);
  LogWrite(log, path);
}

// ---- Stages shared by the single-step commands and run-all. ----

toy::ToyData StageGenToy(const Scenario& s, const fs::path& dir,
                         std::ostream& log) {
  toy::ToyData data = toy::GenerateToyData(s);
  SaveJsonLogged(log, dir / kScenarioJson, toy::ScenarioToJson(s));
  SaveDataset(dir / kRealCsv, data.real);
  LogWrite(log, dir / kRealCsv);
  SavePool(dir / kPoolCsv, data.pool);
  LogWrite(log, dir / kPoolCsv);
  return data;
}

std::vector<toy::DiscriminatorModel> StageTrain(const Scenario& s,
                                                const toy::Dataset& real,
                                                const toy::Pool& pool,
                                                const fs::path& dir,
                                                std::ostream& log) {
  auto models = toy::TrainScenarioDiscriminators(s, real, pool);
  SaveJsonLogged(log, dir / kDiscsJson, DiscriminatorsToJson(models));
  return models;
}

ScoreMatrix StageMatrix(const toy::Dataset& real, const toy::Pool& pool,
                        const std::vector<toy::DiscriminatorModel>& models,
                        const fs::path& dir, std::ostream& log) {
  ScoreMatrix sm = toy::BuildScoreMatrix(real.points, pool, models);
  SaveScoreMatrix(dir / kMatrixCsv, sm);
  LogWrite(log, dir / kMatrixCsv);
  return sm;
}

struct BoostStage {
  BoostConfig cfg;
  BoostResult result;
  BoostSummary summary;
};

BoostStage StageBoost(const Scenario& s, const ScoreMatrix& sm,
                      const fs::path& dir, std::ostream& log) {
  const BoostConfig cfg = toy::MakeBoostConfig(s, sm);
  BoostResult result = RunPgb(sm, cfg);
  const BoostSummary summary = SummarizeBoost(sm, cfg, result, s.boost.beta);
  BoostStage stage{cfg, std::move(result), summary};
  SavePhiBar(dir / kPhiBarCsv, stage.result.phi_bar, sm.pool_ids());
  LogWrite(log, dir / kPhiBarCsv);
  SaveDBar(dir / kDBarCsv, stage.result.d_bar);
  LogWrite(log, dir / kDBarCsv);
  if (stage.cfg.record_trajectory) {
    SaveTrajectory(dir / kTrajectoryCsv, stage.result.trajectory);
    LogWrite(log, dir / kTrajectoryCsv);
  }
  RunReport report;
  report.command = "boost";
  report.seed = s.seed;
  report.config = {{"boost", toy::ScenarioToJson(s)["boost"]},
                   {"eta", stage.cfg.eta}};
  report.accounting = stage.result.account;
  report.boost = stage.summary;
  SaveJsonLogged(log, dir / kBoostJson, ReportToJson(report));
  return stage;
}

DrsSummary StageDrs(const std::string& method, DrsMode mode,
                    const DrsResult& drs,
                    const SyntheticDistribution& proposal,
                    const ScoreMatrix& sm, const Scenario& s,
                    const fs::path& dir, std::ostream& log) {
  SaveAccepted(dir / AcceptedCsv(method), drs, proposal, sm.pool_ids());
  LogWrite(log, dir / AcceptedCsv(method));
  const DrsSummary summary = SummarizeDrs(mode, drs);
  json j = DrsSummaryToJson(summary);
  j["seed"] = s.seed;
  j["target_count"] = s.drs.target_count;
  j["max_proposals"] = s.drs.max_proposals;
  SaveJsonLogged(log, dir / DrsJson(method), j);
  return summary;
}

std::vector<toy::MethodMetrics> StageEvaluate(
    const Scenario& s, const toy::Dataset& real,
    const std::vector<toy::MethodSample>& samples, const fs::path& dir,
    std::ostream& log) {
  std::vector<toy::MethodMetrics> metrics;
  std::vector<std::string> names;
  for (const auto& sample : samples) {
    metrics.push_back(toy::EvaluateSample(s, real, sample));
    names.push_back(sample.name);
    const fs::path plot = dir / ScatterName(sample.name);
    WriteTextFile(plot, ScatterSvg("real (grey) vs " + sample.name,
                                   real.points, sample.points,
                                   sample.weights));
    LogWrite(log, plot);
  }
  std::vector<BarSeries> series(4);
  series[0].name = "quality";
  series[1].name = "quality (uncapped)";
  series[2].name = "1 - TV";
  series[3].name = "pMSE x 10";
  for (const auto& m : metrics) {
    series[0].values.push_back(m.quality);
    series[1].values.push_back(m.quality_uncapped);
    series[2].values.push_back(1.0 - m.tv_distance);
    series[3].values.push_back(10.0 * m.pmse);
  }
  WriteTextFile(dir / kMetricsSvg,
                BarChartSvg("metrics by method", names, series));
  LogWrite(log, dir / kMetricsSvg);
  return metrics;
}

void PrintMetrics(std::ostream& out,
                  const std::vector<toy::MethodMetrics>& metrics) {
  out << std::left << std::setw(16) << "method" << std::right
      << std::setw(10) << "quality" << std::setw(10) << "uncapped"
      << std::setw(10) << "pmse" << std::setw(12) << "pmse_ratio"
      << std::setw(10) << "tv" << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& m : metrics) {
    out << std::left << std::setw(16) << m.method << std::right
        << std::setw(10) << m.quality << std::setw(10) << m.quality_uncapped
        << std::setw(10) << m.pmse << std::setw(12) << m.pmse_ratio
        << std::setw(10) << m.tv_distance << '\n';
  }
  out << std::defaultfloat;
}

// ---- Commands. ----

struct TrainFlags {
  std::string real;
  std::string pool;
};

struct MatrixFlags {
  std::string real;
  std::string pool;
  std::string discs;
};

struct DrsFlags {
  std::string matrix;
  std::string phi_bar;
  std::string d_bar;
  std::string mode = "mixture";
  std::optional<std::size_t> target_count;
  std::optional<std::size_t> max_proposals;
};

struct EvaluateFlags {
  std::string real;
  std::string pool;
  std::vector<std::string> methods;
};

void ApplyDrsFlags(const DrsFlags& f, Scenario& s) {
  if (f.target_count) s.drs.target_count = *f.target_count;
  if (f.max_proposals) s.drs.max_proposals = *f.max_proposals;
  s.drs.enabled = true;
  s.Validate();
}

int CmdGenToy(const CommonFlags& c, std::ostream& out) {
  const Scenario s = ResolveScenario(c);
  const fs::path dir = OutDir(c);
  const toy::ToyData data = StageGenToy(s, dir, out);
  out << "real: " << data.real.size() << " points; pool: " << data.pool.size()
      << " samples from " << s.pools.n_generators << " generators\n";
  return 0;
}

int CmdTrain(const CommonFlags& c, const TrainFlags& f, std::ostream& out) {
  const Scenario s = ResolveScenario(c);
  const fs::path dir = OutDir(c);
  const toy::Dataset real = LoadDataset(InputPath(f.real, dir, kRealCsv));
  const toy::Pool pool = LoadPool(InputPath(f.pool, dir, kPoolCsv));
  const auto models = StageTrain(s, real, pool, dir, out);
  out << "trained " << models.size() << " discriminators\n";
  return 0;
}

int CmdMatrix(const CommonFlags& c, const MatrixFlags& f, std::ostream& out) {
  const fs::path dir = OutDir(c);
  const toy::Dataset real = LoadDataset(InputPath(f.real, dir, kRealCsv));
  const toy::Pool pool = LoadPool(InputPath(f.pool, dir, kPoolCsv));
  const fs::path discs_path = InputPath(f.discs, dir, kDiscsJson);
  const auto models =
      DiscriminatorsFromJson(LoadJsonFile(discs_path), discs_path.string());
  const ScoreMatrix sm = StageMatrix(real, pool, models, dir, out);
  out << "score matrix: " << sm.num_discriminators() << " x "
      << sm.pool_size() << '\n';
  return 0;
}

int CmdBoost(const CommonFlags& c, const BoostFlags& b,
             const std::string& matrix, std::ostream& out) {
  Scenario s = ResolveScenario(c);
  const fs::path dir = OutDir(c);
  const ScoreMatrix sm = LoadScoreMatrix(InputPath(matrix, dir, kMatrixCsv));
  ApplyBoostFlags(b, sm.pool_size(), s);
  const BoostStage stage = StageBoost(s, sm, dir, out);
  const BoostSummary& sum = stage.summary;
  out << (sum.is_private ? "private" : "non-private") << " boosting, T = "
      << sum.rounds << ", eta = " << sum.eta << '\n';
  out << "gaps: distinguisher " << sum.gaps.distinguisher << ", synthetic "
      << sum.gaps.synthetic << " (bound " << sum.alpha_bound << ")\n";
  if (stage.result.account) {
    const AccountingReport& a = *stage.result.account;
    out << "eps0 = " << a.eps0 << ", eps2 = " << a.eps2_boost
        << ", eps_total = " << a.eps_total << ", delta_total = "
        << a.delta_total << '\n';
  }
  return 0;
}

int CmdDrs(const CommonFlags& c, const DrsFlags& f, std::ostream& out) {
  Scenario s = ResolveScenario(c);
  ApplyDrsFlags(f, s);
  const fs::path dir = OutDir(c);
  const ScoreMatrix sm = LoadScoreMatrix(InputPath(f.matrix, dir, kMatrixCsv));
  const DrsMode mode = ParseDrsMode(f.mode);
  DrsSummary summary;
  if (mode == DrsMode::kLastDiscriminator) {
    const DrsResult drs = toy::RunBaselineDrs(s, sm);
    summary = StageDrs(toy::kMethodDrs, mode, drs,
                       toy::LastGeneratorProposal(sm.pool_ids()), sm, s, dir,
                       out);
  } else {
    const auto phi_bar = LoadPhiBar(InputPath(f.phi_bar, dir, kPhiBarCsv));
    const auto d_bar = LoadDBar(InputPath(f.d_bar, dir, kDBarCsv));
    if (phi_bar.size() != sm.pool_size() ||
        d_bar.size() != sm.num_discriminators()) {
      throw ShapeError("phi-bar / D-bar do not match the score matrix");
    }
    const DrsResult drs = toy::RunPgbDrs(s, sm, phi_bar, d_bar);
    summary =
        StageDrs(toy::kMethodPgbDrs, mode, drs, phi_bar, sm, s, dir, out);
  }
  out << "accepted " << summary.accepted << " of " << summary.proposals
      << " proposals (rate " << summary.acceptance_rate
      << ", M = " << summary.max_ratio << ")\n";
  return 0;
}

int CmdEvaluate(const CommonFlags& c, const EvaluateFlags& f,
                std::ostream& out) {
  const Scenario s = ResolveScenario(c);
  const fs::path dir = OutDir(c);
  const fs::path real_path = InputPath(f.real, dir, kRealCsv);
  const fs::path pool_path = InputPath(f.pool, dir, kPoolCsv);

  // Inputs each method needs beyond the real data and the pool.
  const std::vector<std::pair<std::string, fs::path>> all = {
      {toy::kMethodLastGenerator, pool_path},
      {toy::kMethodDrs, dir / AcceptedCsv(toy::kMethodDrs)},
      {toy::kMethodPgb, dir / kPhiBarCsv},
      {toy::kMethodPgbDrs, dir / AcceptedCsv(toy::kMethodPgbDrs)},
      {toy::kMethodPgbResampled, dir / kPhiBarCsv},
  };
  std::vector<std::string> requested = f.methods;
  const bool explicit_methods = !requested.empty();
  if (!explicit_methods) {
    for (const auto& [name, path] : all) {
      if (name == toy::kMethodPgbResampled) continue;  // opt-in only
      if (fs::exists(path)) requested.push_back(name);
    }
  }
  std::vector<std::string> missing;
  for (const fs::path& p : {real_path, pool_path}) {
    if (!fs::exists(p)) missing.push_back(p.string());
  }
  for (const auto& name : requested) {
    bool known = false;
    for (const auto& [n, path] : all) {
      if (n != name) continue;
      known = true;
      if (!fs::exists(path)) missing.push_back(path.string());
    }
    if (!known) throw ContractError("unknown method '" + name + "'");
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw IoError(dir.string(), "missing evaluation inputs: " + list);
  }

  const toy::Dataset real = LoadDataset(real_path);
  const toy::Pool pool = LoadPool(pool_path);
  std::vector<toy::MethodSample> samples;
  for (const auto& [name, path] : all) {
    if (std::find(requested.begin(), requested.end(), name) ==
        requested.end()) {
      continue;
    }
    if (name == toy::kMethodLastGenerator) {
      samples.push_back(toy::LastGeneratorSample(pool));
    } else if (name == toy::kMethodPgb) {
      samples.push_back(toy::PgbSample(pool, LoadPhiBar(path)));
    } else if (name == toy::kMethodPgbResampled) {
      samples.push_back(toy::PgbResampledSample(
          pool, LoadPhiBar(path), s.drs.target_count,
          DeriveSeed(toy::StageSeeds::From(s.seed).metrics, name)));
    } else {
      DrsResult drs;
      drs.accepted = LoadAcceptedIndices(path);
      samples.push_back(toy::DrsAcceptedSample(name, pool, drs));
    }
  }
  RunReport report;
  report.command = "evaluate";
  report.seed = s.seed;
  report.config = toy::ScenarioToJson(s);
  const auto t0 = std::chrono::steady_clock::now();
  report.metrics = StageEvaluate(s, real, samples, dir, out);
  report.timings.push_back(
      {"evaluate", std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count()});
  SaveJsonLogged(out, dir / kReportJson, ReportToJson(report));
  PrintMetrics(out, report.metrics);
  return 0;
}

// Runs one run-all stage, tagging any library error with the stage name.
template <typename Fn>
auto TimedStage(const std::string& name, std::vector<StageTiming>& timings,
                Fn fn) {
  const auto t0 = std::chrono::steady_clock::now();
  auto record = [&] {
    timings.push_back({name, std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto value = fn();
      record();
      return value;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), "stage '" + name + "' failed: " + e.what());
  }
}

int CmdRunAll(const CommonFlags& c, const BoostFlags& b, bool skip_drs,
              std::ostream& out) {
  Scenario s = ResolveScenario(c);
  if (skip_drs) s.drs.enabled = false;
  const fs::path dir = OutDir(c);
  RunReport report;
  report.command = "run-all";
  report.seed = s.seed;

  const toy::ToyData data = TimedStage("gen-toy", report.timings, [&] {
    const std::size_t pool_size =
        static_cast<std::size_t>(s.pools.n_generators) *
        s.pools.samples_per_generator;
    ApplyBoostFlags(b, pool_size, s);
    return StageGenToy(s, dir, out);
  });
  report.config = toy::ScenarioToJson(s);
  const auto models = TimedStage("train-discs", report.timings, [&] {
    return StageTrain(s, data.real, data.pool, dir, out);
  });
  const ScoreMatrix sm = TimedStage("build-matrix", report.timings, [&] {
    return StageMatrix(data.real, data.pool, models, dir, out);
  });
  const BoostStage boost = TimedStage(
      "boost", report.timings, [&] { return StageBoost(s, sm, dir, out); });
  report.accounting = boost.result.account;
  report.boost = boost.summary;

  std::vector<toy::MethodSample> samples;
  samples.push_back(toy::LastGeneratorSample(data.pool));
  samples.push_back(toy::PgbSample(data.pool, boost.result.phi_bar));
  if (s.drs.enabled) {
    TimedStage("drs", report.timings, [&] {
      const DrsResult base = toy::RunBaselineDrs(s, sm);
      report.drs_baseline =
          StageDrs(toy::kMethodDrs, DrsMode::kLastDiscriminator, base,
                   toy::LastGeneratorProposal(sm.pool_ids()), sm, s, dir, out);
      const DrsResult mixed = toy::RunPgbDrs(s, sm, boost.result.phi_bar,
                                             boost.result.d_bar);
      report.drs_pgb =
          StageDrs(toy::kMethodPgbDrs, DrsMode::kMixture, mixed,
                   boost.result.phi_bar, sm, s, dir, out);
      samples.insert(samples.begin() + 1,
                     toy::DrsAcceptedSample(toy::kMethodDrs, data.pool, base));
      samples.push_back(
          toy::DrsAcceptedSample(toy::kMethodPgbDrs, data.pool, mixed));
    });
  }
  report.metrics = TimedStage("evaluate", report.timings, [&] {
    return StageEvaluate(s, data.real, samples, dir, out);
  });
  SaveJsonLogged(out, dir / kReportJson, ReportToJson(report));
  PrintMetrics(out, report.metrics);
  if (report.accounting) {
    out << "privacy: eps_total = " << report.accounting->eps_total
        << ", delta_total = " << report.accounting->delta_total << '\n';
  }
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Post-GAN boosting: pool generator samples, reweight them "
               "against stored discriminators, and evaluate the result."};
  app.name("pgb");
  app.require_subcommand(1);

  CommonFlags common;
  BoostFlags boost_flags;
  TrainFlags train_flags;
  MatrixFlags matrix_flags;
  DrsFlags drs_flags;
  EvaluateFlags eval_flags;
  std::string boost_matrix;
  bool skip_drs = false;

  auto* gen = app.add_subcommand("gen-toy", "Generate the grid data and pool");
  AddCommon(gen, common);

  auto* train = app.add_subcommand("train-discs", "Train the discriminators");
  AddCommon(train, common);
  train->add_option("--real", train_flags.real, "Real dataset CSV");
  train->add_option("--pool", train_flags.pool, "Pool CSV");

  auto* matrix = app.add_subcommand("build-matrix", "Score the pool");
  AddCommon(matrix, common);
  matrix->add_option("--real", matrix_flags.real, "Real dataset CSV");
  matrix->add_option("--pool", matrix_flags.pool, "Pool CSV");
  matrix->add_option("--discs", matrix_flags.discs, "Discriminators JSON");

  auto* boost = app.add_subcommand("boost", "Run post-GAN boosting");
  AddCommon(boost, common);
  AddBoostFlags(boost, boost_flags);
  boost->add_option("--matrix", boost_matrix, "Score matrix CSV");

  auto* drs = app.add_subcommand("drs", "Discriminator rejection sampling");
  AddCommon(drs, common);
  drs->add_option("--matrix", drs_flags.matrix, "Score matrix CSV");
  drs->add_option("--phi-bar", drs_flags.phi_bar, "phi-bar CSV");
  drs->add_option("--d-bar", drs_flags.d_bar, "D-bar CSV");
  drs->add_option("--mode", drs_flags.mode, "mixture | last_discriminator")
      ->check(CLI::IsMember({"mixture", "last_discriminator"}))
      ->capture_default_str();
  drs->add_option("--target-count", drs_flags.target_count,
                  "Accepted samples to draw");
  drs->add_option("--max-proposals", drs_flags.max_proposals,
                  "Proposal budget");

  auto* evaluate = app.add_subcommand("evaluate", "Compute the metric table");
  AddCommon(evaluate, common);
  evaluate->add_option("--real", eval_flags.real, "Real dataset CSV");
  evaluate->add_option("--pool", eval_flags.pool, "Pool CSV");
  evaluate->add_option("--methods", eval_flags.methods,
                       "Methods to evaluate (default: all with inputs)")
      ->delimiter(',');

  auto* run_all = app.add_subcommand("run-all", "Run every stage");
  AddCommon(run_all, common);
  AddBoostFlags(run_all, boost_flags);
  run_all->add_flag("--skip-drs", skip_drs, "Skip rejection sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageExitCode;
  }

  try {
    if (gen->parsed()) return CmdGenToy(common, out);
    if (train->parsed()) return CmdTrain(common, train_flags, out);
    if (matrix->parsed()) return CmdMatrix(common, matrix_flags, out);
    if (boost->parsed()) return CmdBoost(common, boost_flags, boost_matrix, out);
    if (drs->parsed()) return CmdDrs(common, drs_flags, out);
    if (evaluate->parsed()) return CmdEvaluate(common, eval_flags, out);
    if (run_all->parsed()) {
      return CmdRunAll(common, boost_flags, skip_drs, out);
    }
  } catch (const Error& e) {
    err << "pgb: " << ErrorKindName(e.kind()) << " error: " << e.what()
        << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "pgb: unexpected error: " << e.what() << '\n';
    return 1;
  }
  return kUsageExitCode;
}

}  // namespace pgb::cli
