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

#ifndef PGB_CLI_REPORT_H_
#define PGB_CLI_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgb/dynamics.h"
#include "pgb/privacy.h"
#include "pgb/rejection.h"
#include "pgb/score_matrix.h"
#include "pgb/toybench/scenario.h"

namespace pgb::cli {

inline constexpr int kReportSchemaVersion = 1;

struct BoostSummary {
  bool is_private = false;
  int rounds = 0;
  double eta = 0.0;
  std::size_t pool_size = 0;
  std::size_t n_discriminators = 0;
  int n_real = 0;
  EquilibriumGaps gaps;
  double regret_synthetic = 0.0;
  double regret_synthetic_bound = 0.0;
  double regret_distinguisher = 0.0;
  // Private runs only: the high-probability ceiling at failure rate beta.
  std::optional<double> regret_distinguisher_bound;
  double beta = 0.0;
  // Approximation level guaranteed for the average plays (with probability
  // 1 - beta in private runs).
  double alpha_bound = 0.0;
};

BoostSummary SummarizeBoost(const ScoreMatrix& sm, const BoostConfig& cfg,
                            const BoostResult& result, double beta);

struct DrsSummary {
  std::string mode;
  std::size_t accepted = 0;
  std::size_t proposals = 0;
  double acceptance_rate = 0.0;
  double max_ratio = 0.0;
};

DrsSummary SummarizeDrs(DrsMode mode, const DrsResult& result);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json config;  // effective configuration echo
  std::optional<AccountingReport> accounting;
  std::optional<BoostSummary> boost;
  std::optional<DrsSummary> drs_baseline;
  std::optional<DrsSummary> drs_pgb;
  std::vector<toy::MethodMetrics> metrics;
  std::vector<StageTiming> timings;
};

nlohmann::json AccountingToJson(const AccountingReport& a);
nlohmann::json DrsSummaryToJson(const DrsSummary& d);
nlohmann::json ReportToJson(const RunReport& report);

// The report without its timing block, for reproducibility comparisons.
nlohmann::json WithoutTimings(nlohmann::json report);

}  // namespace pgb::cli

#endif  // PGB_CLI_REPORT_H_
