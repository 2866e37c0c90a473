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

#include "pgb/game.h"

#include <cmath>
#include <string>

#include "pgb/errors.h"
#include "pgb/matrix_game.h"

namespace pgb {
namespace {

void CheckPhi(const ScoreMatrix& sm, const SyntheticDistribution& phi) {
  if (phi.size() != sm.pool_size()) {
    throw ShapeError("synthetic distribution has " +
                     std::to_string(phi.size()) + " entries, pool has " +
                     std::to_string(sm.pool_size()));
  }
}

void CheckPsi(const ScoreMatrix& sm, const MixtureDiscriminator& psi) {
  if (psi.size() != sm.num_discriminators()) {
    throw ShapeError("mixture discriminator has " +
                     std::to_string(psi.size()) + " entries, matrix has " +
                     std::to_string(sm.num_discriminators()) +
                     " discriminators");
  }
}

}  // namespace

double PayoffPure(const ScoreMatrix& sm, std::size_t b, std::size_t j) {
  if (b >= sm.pool_size()) {
    throw RangeError("pool index " + std::to_string(b) + " out of range");
  }
  if (j >= sm.num_discriminators()) {
    throw RangeError("discriminator index " + std::to_string(j) +
                     " out of range");
  }
  return sm.real_mean(j) + (1.0 - sm.score(j, b));
}

std::vector<double> PayoffAgainstEachDiscriminator(
    const ScoreMatrix& sm, const SyntheticDistribution& phi) {
  CheckPhi(sm, phi);
  const auto w = phi.weights();
  std::vector<double> out(sm.num_discriminators());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto r = sm.row(j);
    double fooled = 0.0;
    for (std::size_t b = 0; b < r.size(); ++b) fooled += w[b] * r[b];
    out[j] = sm.real_mean(j) + (1.0 - fooled);
  }
  return out;
}

std::vector<double> PayoffPerSample(const ScoreMatrix& sm,
                                    const MixtureDiscriminator& psi) {
  CheckPsi(sm, psi);
  std::vector<double> mixed(sm.pool_size(), 0.0);
  double mean_real = 0.0;
  for (std::size_t j = 0; j < sm.num_discriminators(); ++j) {
    const double p = psi[j];
    if (p == 0.0) continue;
    mean_real += p * sm.real_mean(j);
    const auto r = sm.row(j);
    for (std::size_t b = 0; b < r.size(); ++b) mixed[b] += p * r[b];
  }
  for (double& v : mixed) v = mean_real + (1.0 - v);
  return mixed;
}

double PayoffMixed(const ScoreMatrix& sm, const SyntheticDistribution& phi,
                   const MixtureDiscriminator& psi) {
  CheckPsi(sm, psi);
  const auto per_disc = PayoffAgainstEachDiscriminator(sm, phi);
  double total = 0.0;
  for (std::size_t j = 0; j < per_disc.size(); ++j) total += psi[j] * per_disc[j];
  return total;
}

EquilibriumGaps ComputeEquilibriumGaps(const ScoreMatrix& sm,
                                       const SyntheticDistribution& phi_bar,
                                       const MixtureDiscriminator& d_bar) {
  CheckPhi(sm, phi_bar);
  CheckPsi(sm, d_bar);
  const auto per_disc = PayoffAgainstEachDiscriminator(sm, phi_bar);
  double value = 0.0;
  double best_disc = per_disc.front();
  for (std::size_t j = 0; j < per_disc.size(); ++j) {
    value += d_bar[j] * per_disc[j];
    if (per_disc[j] > best_disc) best_disc = per_disc[j];
  }
  const auto per_sample = PayoffPerSample(sm, d_bar);
  double best_sample = per_sample.front();
  for (double u : per_sample) {
    if (u < best_sample) best_sample = u;
  }
  return EquilibriumGaps{best_disc - value, value - best_sample};
}

ExactGameSolution SolveGameExactly(const ScoreMatrix& sm) {
  if (sm.num_discriminators() > kOracleMaxDiscriminators ||
      sm.pool_size() > kOracleMaxPool) {
    throw CapacityError("exact game solver limited to " +
                        std::to_string(kOracleMaxDiscriminators) + " x " +
                        std::to_string(kOracleMaxPool) + ", got " +
                        std::to_string(sm.num_discriminators()) + " x " +
                        std::to_string(sm.pool_size()));
  }
  std::vector<std::vector<double>> payoff(
      sm.num_discriminators(), std::vector<double>(sm.pool_size()));
  for (std::size_t j = 0; j < sm.num_discriminators(); ++j) {
    for (std::size_t b = 0; b < sm.pool_size(); ++b) {
      payoff[j][b] = PayoffPure(sm, b, j);
    }
  }
  ZeroSumSolution sol = SolveZeroSumGame(payoff);
  return ExactGameSolution{
      sol.value, SyntheticDistribution::Normalized(sol.column_strategy),
      MixtureDiscriminator::Normalized(sol.row_strategy)};
}

double GameValueOracle(const ScoreMatrix& sm) {
  return SolveGameExactly(sm).value;
}

CoverageCertificate CheckCoverage(const ScoreMatrix& sm,
                                  const CoverageCheckParams& params) {
  if (!(params.lipschitz_bound >= 0.0) || !(params.coverage_radius >= 0.0)) {
    throw ContractError("Lipschitz bound and coverage radius must be >= 0");
  }
  CoverageCertificate cert;
  cert.lower = 1.0;
  cert.upper = 1.0 + params.lipschitz_bound * params.coverage_radius;
  if (!params.includes_half_discriminator) return cert;
  if (sm.FindHalfDiscriminator() < 0) {
    throw ContractError(
        "coverage check declares a constant-1/2 discriminator but no row is "
        "identically 1/2 with real mean 1/2");
  }
  if (sm.num_discriminators() <= kOracleMaxDiscriminators &&
      sm.pool_size() <= kOracleMaxPool) {
    const double v = GameValueOracle(sm);
    cert.game_value = v;
    cert.holds = v >= cert.lower - kCoverageSlack &&
                 v <= cert.upper + kCoverageSlack;
  }
  return cert;
}

}  // namespace pgb
