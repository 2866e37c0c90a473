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

#include "pgb/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb {
namespace {

// Writes softmax(log_weights) into `out`.
void Softmax(const std::vector<double>& log_weights, std::vector<double>& out) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) top = std::max(top, v);
  double total = 0.0;
  for (std::size_t b = 0; b < log_weights.size(); ++b) {
    out[b] = std::exp(log_weights[b] - top);
    total += out[b];
  }
  for (double& v : out) v /= total;
}

BoostResult RunLoop(const ScoreMatrix& sm, const BoostConfig& cfg,
                    const PrivacyAccount* account) {
  cfg.Validate();
  const std::size_t pool = sm.pool_size();
  const std::size_t n_disc = sm.num_discriminators();
  const int rounds = cfg.rounds;

  QualityScores quality;
  quality.values.resize(n_disc);
  quality.sensitivity = 1.0 / static_cast<double>(sm.n_real());
  Rng rng(cfg.seed);

  std::vector<double> log_weights(pool, 0.0);
  std::vector<double> phi(pool, 1.0 / static_cast<double>(pool));
  std::vector<double> phi_sum(pool, 0.0);
  std::vector<double> sample_payoff(pool, 0.0);  // sum_t U(b, D^t)
  std::vector<double> disc_payoff(n_disc, 0.0);  // sum_t U(phi^t, D_j)
  std::vector<std::size_t> counts(n_disc, 0);
  double played = 0.0;  // sum_t U(phi^t, D^t)
  // Row j of the score grid; fooled[j] = sum_b phi(b) D_j(b).
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      scores(sm.grid().row(0).data(), static_cast<Eigen::Index>(n_disc),
             static_cast<Eigen::Index>(pool));
  Eigen::VectorXd fooled(n_disc);

  BoostResult result{SyntheticDistribution::Uniform(pool),
                     MixtureDiscriminator::Uniform(n_disc),
                     {},
                     0.0,
                     0.0,
                     {},
                     std::nullopt,
                     {}};
  result.selected_rounds.reserve(rounds);
  if (cfg.record_trajectory) result.trajectory.reserve(rounds);

  for (int t = 0; t < rounds; ++t) {
    if (t > 0) Softmax(log_weights, phi);
    for (std::size_t b = 0; b < pool; ++b) phi_sum[b] += phi[b];
    if (cfg.record_trajectory) result.trajectory.push_back(phi);

    fooled.noalias() = scores * Eigen::Map<const Eigen::VectorXd>(
                                    phi.data(), static_cast<Eigen::Index>(pool));
    for (std::size_t j = 0; j < n_disc; ++j) {
      quality.values[j] = sm.real_mean(j) + (1.0 - fooled[j]);
      disc_payoff[j] += quality.values[j];
    }

    std::size_t chosen = 0;
    if (account != nullptr) {
      chosen = ExpMechSelect(quality, account->eps0, rng);
    } else {
      for (std::size_t j = 1; j < n_disc; ++j) {
        if (quality.values[j] > quality.values[chosen]) chosen = j;
      }
    }
    ++counts[chosen];
    result.selected_rounds.push_back(chosen);
    played += quality.values[chosen];

    const auto r = sm.row(chosen);
    const double base = sm.real_mean(chosen) + 1.0;
    for (std::size_t b = 0; b < pool; ++b) {
      sample_payoff[b] += base - r[b];
      log_weights[b] += cfg.eta * r[b];
    }
  }

  const double inv_t = 1.0 / static_cast<double>(rounds);
  for (double& v : phi_sum) v *= inv_t;
  std::vector<double> d_bar(n_disc);
  for (std::size_t j = 0; j < n_disc; ++j) {
    d_bar[j] = static_cast<double>(counts[j]) * inv_t;
  }
  result.phi_bar = SyntheticDistribution::Create(std::move(phi_sum));
  result.d_bar = MixtureDiscriminator::Create(std::move(d_bar));

  result.regret_synthetic =
      played - *std::min_element(sample_payoff.begin(), sample_payoff.end());
  result.regret_distinguisher =
      *std::max_element(disc_payoff.begin(), disc_payoff.end()) - played;
  result.gaps = ComputeEquilibriumGaps(sm, result.phi_bar, result.d_bar);
  if (account != nullptr) result.account = MakeAccountingReport(*account);

  // The MW guarantee holds for every loss sequence; a violation is a bug.
  const double ceiling = RegretBoundSynthetic(cfg.eta, rounds, pool);
  if (result.regret_synthetic > ceiling * (1.0 + 1e-12) + 1e-9) {
    throw std::logic_error("synthetic regret " +
                           std::to_string(result.regret_synthetic) +
                           " exceeds the multiplicative-weights ceiling " +
                           std::to_string(ceiling));
  }
  return result;
}

}  // namespace

void BoostConfig::Validate() const {
  if (rounds < 1) throw ContractError("rounds must be at least 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ContractError("learning rate eta must be positive");
  }
  if (const auto* acct = std::get_if<PrivacyAccount>(&mode)) {
    acct->Validate();
    if (acct->rounds != rounds) {
      throw ContractError("privacy account covers " +
                          std::to_string(acct->rounds) +
                          " rounds but the run has " + std::to_string(rounds));
    }
  }
}

SyntheticDistribution MwUpdate(const SyntheticDistribution& phi,
                               std::span<const double> disc_scores,
                               double eta) {
  if (disc_scores.size() != phi.size()) {
    throw ShapeError("score vector has " + std::to_string(disc_scores.size()) +
                     " entries, distribution has " +
                     std::to_string(phi.size()));
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ContractError("learning rate eta must be positive");
  }
  std::vector<double> log_w(phi.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < phi.size(); ++b) {
    const double s = disc_scores[b];
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw ContractError("discriminator scores must lie in [0, 1]");
    }
    log_w[b] = phi[b] > 0.0 ? std::log(phi[b]) + eta * s
                            : -std::numeric_limits<double>::infinity();
    top = std::max(top, log_w[b]);
  }
  std::vector<double> w(phi.size());
  for (std::size_t b = 0; b < w.size(); ++b) w[b] = std::exp(log_w[b] - top);
  return SyntheticDistribution::Normalized(std::move(w));
}

BoostResult RunPrivatePgb(const ScoreMatrix& sm, const BoostConfig& cfg) {
  const auto* acct = std::get_if<PrivacyAccount>(&cfg.mode);
  if (acct == nullptr) {
    throw ContractError("private boosting needs a privacy account");
  }
  return RunLoop(sm, cfg, acct);
}

BoostResult RunNonPrivatePgb(const ScoreMatrix& sm, const BoostConfig& cfg) {
  if (cfg.is_private()) {
    throw ContractError("non-private boosting got a private config");
  }
  return RunLoop(sm, cfg, nullptr);
}

BoostResult RunPgb(const ScoreMatrix& sm, const BoostConfig& cfg) {
  return cfg.is_private() ? RunPrivatePgb(sm, cfg) : RunNonPrivatePgb(sm, cfg);
}

double DefaultEta(std::size_t pool_size, int rounds) {
  if (pool_size < 2) {
    throw ContractError("default eta needs a pool of at least 2 samples");
  }
  if (rounds < 1) throw ContractError("rounds must be at least 1");
  return 0.5 * std::sqrt(std::log(static_cast<double>(pool_size)) /
                         static_cast<double>(rounds));
}

int TheoremRounds(std::size_t pool_size, double alpha) {
  if (pool_size < 2) throw ContractError("pool must hold at least 2 samples");
  if (!(alpha > 0.0)) throw ContractError("alpha must be positive");
  return static_cast<int>(
      std::ceil(std::log(static_cast<double>(pool_size)) / (alpha * alpha)));
}

double RegretBoundSynthetic(double eta, int rounds, std::size_t pool_size) {
  if (!(eta > 0.0)) throw ContractError("eta must be positive");
  return 4.0 * eta * static_cast<double>(rounds) +
         std::log(static_cast<double>(pool_size)) / eta;
}

double RegretBoundDistinguisher(const PrivacyAccount& acct,
                                std::size_t n_discriminators,
                                const RegretBoundParams& params, int n_real) {
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw ContractError("beta must lie in (0, 1)");
  }
  if (n_discriminators < 1 || n_real < 1 || acct.rounds < 1 ||
      !(acct.eps0 > 0.0)) {
    throw ContractError("regret bound arguments must be positive");
  }
  const double t = static_cast<double>(acct.rounds);
  return 2.0 * t *
         std::log(static_cast<double>(n_discriminators) * t / params.beta) /
         (static_cast<double>(n_real) * acct.eps0);
}

double ApproximateEquilibriumAlpha(double eta, int rounds,
                                   std::size_t pool_size,
                                   std::size_t n_discriminators, int n_real,
                                   double eps0, double beta) {
  PrivacyAccount acct{eps0, rounds, 0.5, 0.0, 0.0};
  const double t = static_cast<double>(rounds);
  return RegretBoundSynthetic(eta, rounds, pool_size) / t +
         RegretBoundDistinguisher(acct, n_discriminators,
                                  RegretBoundParams{beta}, n_real) /
             t;
}

}  // namespace pgb
