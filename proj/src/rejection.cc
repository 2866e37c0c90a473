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

#include "pgb/rejection.h"

#include <algorithm>
#include <cmath>

#include "pgb/errors.h"

namespace pgb {

std::string DrsModeName(DrsMode mode) {
  return mode == DrsMode::kMixture ? "mixture" : "last_discriminator";
}

DrsMode ParseDrsMode(const std::string& name) {
  if (name == "mixture") return DrsMode::kMixture;
  if (name == "last_discriminator") return DrsMode::kLastDiscriminator;
  throw ContractError("unknown DRS mode '" + name + "'");
}

void DrsConfig::Validate() const {
  if (target_count < 1) throw ContractError("DRS target_count must be >= 1");
  if (max_proposals < target_count) {
    throw ContractError("DRS max_proposals must be >= target_count");
  }
}

std::vector<double> MixtureScores(const ScoreGrid& scores,
                                  const MixtureDiscriminator& d_bar) {
  if (d_bar.size() != scores.num_discriminators()) {
    throw ShapeError("mixture has " + std::to_string(d_bar.size()) +
                     " weights for " +
                     std::to_string(scores.num_discriminators()) +
                     " discriminators");
  }
  std::vector<double> out(scores.pool_size(), 0.0);
  for (std::size_t j = 0; j < scores.num_discriminators(); ++j) {
    const double w = d_bar[j];
    if (w == 0.0) continue;
    const auto r = scores.row(j);
    for (std::size_t b = 0; b < out.size(); ++b) out[b] += w * r[b];
  }
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return out;
}

double DensityRatio(double score) { return score / (1.0 - score); }

namespace {

void CheckInputs(const SyntheticDistribution& phi,
                 std::span<const double> scores) {
  if (scores.size() != phi.size()) {
    throw ShapeError("score vector has " + std::to_string(scores.size()) +
                     " entries, proposal has " + std::to_string(phi.size()));
  }
  for (double s : scores) {
    if (!(s >= kScoreFloor * (1 - 1e-12) && s <= kScoreCeiling * (1 + 1e-12))) {
      throw ContractError("DRS scores must be clipped to [1e-6, 1 - 1e-6]");
    }
  }
}

}  // namespace

std::vector<double> DrsInducedDistribution(const SyntheticDistribution& phi,
                                           std::span<const double> scores) {
  CheckInputs(phi, scores);
  std::vector<double> w(phi.size());
  for (std::size_t b = 0; b < w.size(); ++b) {
    w[b] = phi[b] * DensityRatio(scores[b]);
  }
  const auto induced = SyntheticDistribution::Normalized(std::move(w));
  return {induced.weights().begin(), induced.weights().end()};
}

DrsResult DrsSample(const SyntheticDistribution& phi,
                    std::span<const double> scores, const DrsConfig& cfg,
                    Rng& rng) {
  cfg.Validate();
  CheckInputs(phi, scores);

  DrsResult result;
  std::vector<double> cumulative(phi.size());
  double total = 0.0;
  for (std::size_t b = 0; b < phi.size(); ++b) {
    total += phi[b];
    cumulative[b] = total;
    if (phi[b] > 0.0) {
      result.max_ratio = std::max(result.max_ratio, DensityRatio(scores[b]));
    }
  }

  result.accepted.reserve(cfg.target_count);
  while (result.accepted.size() < cfg.target_count) {
    if (result.proposals == cfg.max_proposals) {
      const double rate = static_cast<double>(result.accepted.size()) /
                          static_cast<double>(result.proposals);
      throw SamplingBudgetError(
          "DRS exhausted " + std::to_string(cfg.max_proposals) +
              " proposals with " + std::to_string(result.accepted.size()) +
              " of " + std::to_string(cfg.target_count) +
              " accepted (acceptance rate " + std::to_string(rate) + ")",
          rate);
    }
    ++result.proposals;
    const double u = Uniform01(rng) * total;
    // The first strict crossing always lands on a positive-weight atom.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t b = std::min<std::size_t>(it - cumulative.begin(),
                                                cumulative.size() - 1);
    const double accept = DensityRatio(scores[b]) / result.max_ratio;
    if (Uniform01(rng) < accept) result.accepted.push_back(b);
  }
  result.acceptance_rate = static_cast<double>(result.accepted.size()) /
                           static_cast<double>(result.proposals);
  return result;
}

DrsResult DrsSample(const SyntheticDistribution& phi,
                    std::span<const double> scores, const DrsConfig& cfg) {
  Rng rng(cfg.seed);
  return DrsSample(phi, scores, cfg, rng);
}

}  // namespace pgb
