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

#include "pgb/cli/report.h"

#include <cmath>

namespace pgb::cli {
namespace {

using nlohmann::json;

json OptionalNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

BoostSummary SummarizeBoost(const ScoreMatrix& sm, const BoostConfig& cfg,
                            const BoostResult& result, double beta) {
  BoostSummary s;
  s.is_private = cfg.is_private();
  s.rounds = cfg.rounds;
  s.eta = cfg.eta;
  s.pool_size = sm.pool_size();
  s.n_discriminators = sm.num_discriminators();
  s.n_real = sm.n_real();
  s.gaps = result.gaps;
  s.regret_synthetic = result.regret_synthetic;
  s.regret_synthetic_bound =
      RegretBoundSynthetic(cfg.eta, cfg.rounds, sm.pool_size());
  s.regret_distinguisher = result.regret_distinguisher;
  s.beta = beta;
  if (const auto* acct = std::get_if<PrivacyAccount>(&cfg.mode)) {
    RegretBoundParams params;
    params.beta = beta;
    s.regret_distinguisher_bound = RegretBoundDistinguisher(
        *acct, sm.num_discriminators(), params, sm.n_real());
    s.alpha_bound = ApproximateEquilibriumAlpha(
        cfg.eta, cfg.rounds, sm.pool_size(), sm.num_discriminators(),
        sm.n_real(), acct->eps0, beta);
  } else {
    // Exact best responses leave the distinguisher with no regret, so the
    // synthetic player's ceiling alone bounds both gaps.
    s.alpha_bound = s.regret_synthetic_bound / cfg.rounds;
  }
  return s;
}

DrsSummary SummarizeDrs(DrsMode mode, const DrsResult& result) {
  DrsSummary s;
  s.mode = DrsModeName(mode);
  s.accepted = result.accepted.size();
  s.proposals = result.proposals;
  s.acceptance_rate = result.acceptance_rate;
  s.max_ratio = result.max_ratio;
  return s;
}

json AccountingToJson(const AccountingReport& a) {
  return {{"eps0", a.eps0},
          {"rounds", a.rounds},
          {"delta2", a.delta2},
          {"eps2_boost", a.eps2_boost},
          {"eps1_training", a.eps1_training},
          {"delta1_training", a.delta1_training},
          {"eps_total", a.eps_total},
          {"delta_total", a.delta_total}};
}

json DrsSummaryToJson(const DrsSummary& d) {
  return {{"mode", d.mode},
          {"accepted", d.accepted},
          {"proposals", d.proposals},
          {"acceptance_rate", d.acceptance_rate},
          {"M", d.max_ratio}};
}

json ReportToJson(const RunReport& report) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["config"] = report.config;
  j["accounting"] =
      report.accounting ? AccountingToJson(*report.accounting) : json(nullptr);
  if (report.boost) {
    const BoostSummary& b = *report.boost;
    j["boost"] = {
        {"private", b.is_private},
        {"rounds", b.rounds},
        {"eta", b.eta},
        {"pool_size", b.pool_size},
        {"n_discriminators", b.n_discriminators},
        {"n_real", b.n_real},
        {"gaps",
         {{"distinguisher", b.gaps.distinguisher},
          {"synthetic", b.gaps.synthetic},
          {"max", b.gaps.max()}}},
        {"regret",
         {{"synthetic", b.regret_synthetic},
          {"synthetic_bound", b.regret_synthetic_bound},
          {"distinguisher", b.regret_distinguisher},
          {"distinguisher_bound",
           OptionalNumber(b.regret_distinguisher_bound)},
          {"beta", b.beta}}},
        {"alpha_bound", b.alpha_bound},
    };
  }
  if (report.drs_baseline || report.drs_pgb) {
    json drs = json::object();
    if (report.drs_baseline) {
      drs[toy::kMethodDrs] = DrsSummaryToJson(*report.drs_baseline);
    }
    if (report.drs_pgb) {
      drs[toy::kMethodPgbDrs] = DrsSummaryToJson(*report.drs_pgb);
    }
    j["drs"] = std::move(drs);
  }
  if (!report.metrics.empty()) {
    json methods = json::array();
    json table = json::object();
    for (const auto& m : report.metrics) {
      methods.push_back(m.method);
      table[m.method] = {{"quality_score", m.quality},
                         {"quality_score_uncapped", m.quality_uncapped},
                         {"pmse", m.pmse},
                         {"pmse_null", m.pmse_null},
                         {"pmse_ratio", m.pmse_ratio},
                         {"tv_distance", m.tv_distance}};
    }
    j["methods"] = std::move(methods);
    j["metrics"] = std::move(table);
  }
  json timings = json::object();
  double total = 0.0;
  for (const auto& t : report.timings) {
    timings[t.stage] = t.seconds;
    total += t.seconds;
  }
  timings["total"] = total;
  j["timings"] = std::move(timings);
  return j;
}

json WithoutTimings(json report) {
  report.erase("timings");
  return report;
}

}  // namespace pgb::cli
