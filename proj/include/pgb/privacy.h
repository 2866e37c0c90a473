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

#ifndef PGB_PRIVACY_H_
#define PGB_PRIVACY_H_

#include <cstddef>
#include <vector>

#include "pgb/rng.h"

namespace pgb {

// Budget of the boosting stage (per-round eps0 over `rounds` exponential
// mechanism draws, composed at failure probability `delta`) together with the
// declared cost of the upstream training stage.
struct PrivacyAccount {
  double eps0 = 0.0;
  int rounds = 0;
  double delta = 0.0;
  double training_eps = 0.0;
  double training_delta = 0.0;

  // Throws ContractError unless eps0 > 0, rounds >= 1, 0 < delta < 1,
  // training_eps >= 0 and 0 <= training_delta < 1.
  void Validate() const;
};

// Candidate qualities for one exponential-mechanism draw and the sensitivity
// of the quality function (1 / n_real for post-GAN boosting).
struct QualityScores {
  std::vector<double> values;
  double sensitivity = 1.0;
};

// P(j) proportional to exp(eps * q_j / (2 * sensitivity)), evaluated after
// subtracting max_j q_j.
std::vector<double> ExpMechProbabilities(const QualityScores& q, double eps);

// One draw with the probabilities above: a single uniform is located in the
// cumulative sum of the unnormalized weights.
std::size_t ExpMechSelect(const QualityScores& q, double eps, Rng& rng);

// sqrt(2 log(1/delta) T) eps0 + T eps0 (exp(eps0) - 1). Accepts eps0 >= 0.
double AdvancedCompositionEpsilon(double eps0, int rounds, double delta);

// The boosting stage's total epsilon for `acct`.
double ComposeAdvanced(const PrivacyAccount& acct);

struct PrivacyTotals {
  double eps = 0.0;
  double delta = 0.0;
};

// Training stage plus boosting stage, composed additively.
PrivacyTotals ComposeStages(const PrivacyAccount& acct);

inline constexpr double kCalibrationUpperBracket = 10.0;

// Largest eps0 in (0, kCalibrationUpperBracket] whose composed epsilon does
// not exceed `target_eps2`, by bisection. Throws CalibrationError when even
// the upper bracket stays below the target.
double CalibrateRounds(double target_eps2, double delta, int rounds);

// Accounting block echoed into every run report.
struct AccountingReport {
  double eps0 = 0.0;
  int rounds = 0;
  double delta2 = 0.0;
  double eps2_boost = 0.0;
  double eps1_training = 0.0;
  double delta1_training = 0.0;
  double eps_total = 0.0;
  double delta_total = 0.0;
};

AccountingReport MakeAccountingReport(const PrivacyAccount& acct);

}  // namespace pgb

#endif  // PGB_PRIVACY_H_
