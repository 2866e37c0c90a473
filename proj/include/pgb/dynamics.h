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

#ifndef PGB_DYNAMICS_H_
#define PGB_DYNAMICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "pgb/distribution.h"
#include "pgb/game.h"
#include "pgb/privacy.h"
#include "pgb/score_matrix.h"

namespace pgb {

// Exact best response each round (ties go to the lowest index).
struct NonPrivateMode {};

struct BoostConfig {
  int rounds = 1;
  double eta = 0.0;
  std::variant<NonPrivateMode, PrivacyAccount> mode = NonPrivateMode{};
  std::uint64_t seed = 0;
  bool record_trajectory = false;

  bool is_private() const {
    return std::holds_alternative<PrivacyAccount>(mode);
  }
  void Validate() const;
};

// Trajectories above this many stored weights are not recorded by default.
inline constexpr std::size_t kTrajectoryEntryLimit = 10'000'000;

struct BoostResult {
  SyntheticDistribution phi_bar;  // mean of phi^1 .. phi^T
  MixtureDiscriminator d_bar;     // selection multiplicities / T
  std::vector<std::size_t> selected_rounds;
  // R_syn = sum_t U(phi^t, D^t) - min_b sum_t U(b, D^t)
  double regret_synthetic = 0.0;
  // R_dis = max_j sum_t U(phi^t, D_j) - sum_t U(phi^t, D^t)
  double regret_distinguisher = 0.0;
  EquilibriumGaps gaps;
  std::optional<AccountingReport> account;  // absent for non-private runs
  std::vector<std::vector<double>> trajectory;  // phi^t, when recorded
};

// One multiplicative-weights step: phi'(b) proportional to
// phi(b) exp(eta D(b)), evaluated in log space. Zero-weight entries stay zero.
SyntheticDistribution MwUpdate(const SyntheticDistribution& phi,
                               std::span<const double> disc_scores,
                               double eta);

// Private boosting: each round the distinguisher is chosen by the exponential
// mechanism with quality U(phi^t, D_j), sensitivity 1 / n_real and budget
// eps0; the synthetic player answers with MwUpdate on the chosen row.
// Requires a private config whose account rounds equal cfg.rounds.
BoostResult RunPrivatePgb(const ScoreMatrix& sm, const BoostConfig& cfg);

// Same loop with the exact best response in place of the mechanism.
BoostResult RunNonPrivatePgb(const ScoreMatrix& sm, const BoostConfig& cfg);

// Dispatches on cfg.mode.
BoostResult RunPgb(const ScoreMatrix& sm, const BoostConfig& cfg);

// eta = sqrt(log|B| / T) / 2 (natural log). Throws for pool_size < 2.
double DefaultEta(std::size_t pool_size, int rounds);

// ceil(log|B| / alpha^2): rounds for an alpha-equilibrium in the non-private
// variant under DefaultEta.
int TheoremRounds(std::size_t pool_size, double alpha);

// MW regret ceiling 4 eta T + log|B| / eta.
double RegretBoundSynthetic(double eta, int rounds, std::size_t pool_size);

struct RegretBoundParams {
  double beta = 0.05;  // failure probability
};

// High-probability distinguisher regret ceiling 2 T log(N T / beta) / (n eps0).
double RegretBoundDistinguisher(const PrivacyAccount& acct,
                                std::size_t n_discriminators,
                                const RegretBoundParams& params, int n_real);

// 4 eta + log|B| / (eta T) + 2 log(N T / beta) / (n eps0): approximation
// level of the average plays with probability 1 - beta.
double ApproximateEquilibriumAlpha(double eta, int rounds,
                                   std::size_t pool_size,
                                   std::size_t n_discriminators, int n_real,
                                   double eps0, double beta);

}  // namespace pgb

#endif  // PGB_DYNAMICS_H_
