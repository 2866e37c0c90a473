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

#ifndef PGB_REJECTION_H_
#define PGB_REJECTION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgb/distribution.h"
#include "pgb/rng.h"
#include "pgb/score_matrix.h"

namespace pgb {

// Discriminator rejection sampling. Everything here is post-processing of
// the boosting output: the interface only admits the proposal distribution,
// per-sample discriminator scores and configuration, never real-data
// statistics.

enum class DrsMode {
  kMixture,            // D-bar over the proposal phi-bar
  kLastDiscriminator,  // D_N over the last generator's raw pool
};

std::string DrsModeName(DrsMode mode);
DrsMode ParseDrsMode(const std::string& name);  // throws ContractError

struct DrsConfig {
  DrsMode mode = DrsMode::kMixture;
  std::size_t target_count = 1;
  std::size_t max_proposals = 1;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct DrsResult {
  std::vector<std::size_t> accepted;  // pool indices, in acceptance order
  std::size_t proposals = 0;
  double acceptance_rate = 0.0;  // accepted / proposals
  double max_ratio = 0.0;        // M = max over the proposal support of r(b)
};

// D-bar(b) = sum_j psi(j) D_j(b).
std::vector<double> MixtureScores(const ScoreGrid& scores,
                                  const MixtureDiscriminator& d_bar);

// r(b) = D(b) / (1 - D(b)).
double DensityRatio(double score);

// Distribution of an accepted sample: proportional to phi(b) r(b).
std::vector<double> DrsInducedDistribution(const SyntheticDistribution& phi,
                                           std::span<const double> scores);

// Draws proposals b ~ phi and accepts each with probability r(b) / M until
// `target_count` are accepted. Throws SamplingBudgetError (carrying the
// observed acceptance rate) if `max_proposals` run out first.
DrsResult DrsSample(const SyntheticDistribution& phi,
                    std::span<const double> scores, const DrsConfig& cfg,
                    Rng& rng);

// Same, seeded from cfg.seed.
DrsResult DrsSample(const SyntheticDistribution& phi,
                    std::span<const double> scores, const DrsConfig& cfg);

}  // namespace pgb

#endif  // PGB_REJECTION_H_
