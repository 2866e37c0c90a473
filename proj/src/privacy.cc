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

#include "pgb/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgb/errors.h"

namespace pgb {

void PrivacyAccount::Validate() const {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
    throw ContractError("eps0 must be a positive finite number");
  }
  if (rounds < 1) throw ContractError("rounds must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError(
        "delta2 must lie in (0, 1); advanced composition is undefined at 0");
  }
  if (!(training_eps >= 0.0) || !std::isfinite(training_eps)) {
    throw ContractError("training epsilon must be >= 0");
  }
  if (!(training_delta >= 0.0 && training_delta < 1.0)) {
    throw ContractError("training delta must lie in [0, 1)");
  }
}

std::vector<double> ExpMechProbabilities(const QualityScores& q, double eps) {
  if (q.values.empty()) throw ContractError("no candidates to select from");
  if (!(q.sensitivity > 0.0)) throw ContractError("sensitivity must be > 0");
  if (!(eps > 0.0)) throw ContractError("epsilon must be > 0");
  double top = q.values.front();
  for (double v : q.values) {
    if (!std::isfinite(v)) throw ContractError("non-finite quality score");
    top = std::max(top, v);
  }
  const double scale = eps / (2.0 * q.sensitivity);
  std::vector<double> w(q.values.size());
  double total = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = std::exp(scale * (q.values[j] - top));
    total += w[j];
  }
  for (double& x : w) x /= total;
  return w;
}

std::size_t ExpMechSelect(const QualityScores& q, double eps, Rng& rng) {
  if (q.values.empty()) throw ContractError("no candidates to select from");
  if (!(q.sensitivity > 0.0)) throw ContractError("sensitivity must be > 0");
  if (!(eps > 0.0)) throw ContractError("epsilon must be > 0");
  double top = q.values.front();
  for (double v : q.values) {
    if (!std::isfinite(v)) throw ContractError("non-finite quality score");
    top = std::max(top, v);
  }
  const double scale = eps / (2.0 * q.sensitivity);
  std::vector<double> cumulative(q.values.size());
  double total = 0.0;
  for (std::size_t j = 0; j < cumulative.size(); ++j) {
    total += std::exp(scale * (q.values[j] - top));
    cumulative[j] = total;
  }
  const double u = Uniform01(rng) * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  // u < total always holds, so `it` is in range; guard anyway for rounding.
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

double AdvancedCompositionEpsilon(double eps0, int rounds, double delta) {
  if (!(eps0 >= 0.0)) throw ContractError("eps0 must be >= 0");
  if (rounds < 1) throw ContractError("rounds must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError("delta must lie in (0, 1)");
  }
  const double t = static_cast<double>(rounds);
  return std::sqrt(2.0 * std::log(1.0 / delta) * t) * eps0 +
         t * eps0 * std::expm1(eps0);
}

double ComposeAdvanced(const PrivacyAccount& acct) {
  acct.Validate();
  return AdvancedCompositionEpsilon(acct.eps0, acct.rounds, acct.delta);
}

PrivacyTotals ComposeStages(const PrivacyAccount& acct) {
  return PrivacyTotals{acct.training_eps + ComposeAdvanced(acct),
                       acct.training_delta + acct.delta};
}

double CalibrateRounds(double target_eps2, double delta, int rounds) {
  if (!(target_eps2 > 0.0) || !std::isfinite(target_eps2)) {
    throw ContractError("target eps2 must be positive");
  }
  if (rounds < 1) throw ContractError("rounds must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError("delta2 must lie in (0, 1)");
  }
  if (AdvancedCompositionEpsilon(kCalibrationUpperBracket, rounds, delta) <
      target_eps2) {
    throw CalibrationError("target eps2 " + std::to_string(target_eps2) +
                           " needs eps0 above " +
                           std::to_string(kCalibrationUpperBracket));
  }
  // Invariant: f(lo) <= target < f(hi) or hi is the bracket.
  double lo = 0.0;
  double hi = kCalibrationUpperBracket;
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (AdvancedCompositionEpsilon(mid, rounds, delta) <= target_eps2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0) ||
      AdvancedCompositionEpsilon(lo, rounds, delta) < target_eps2 - 1e-9) {
    throw CalibrationError("could not bracket eps0 for target eps2 " +
                           std::to_string(target_eps2));
  }
  return lo;
}

AccountingReport MakeAccountingReport(const PrivacyAccount& acct) {
  const PrivacyTotals totals = ComposeStages(acct);
  AccountingReport r;
  r.eps0 = acct.eps0;
  r.rounds = acct.rounds;
  r.delta2 = acct.delta;
  r.eps2_boost = ComposeAdvanced(acct);
  r.eps1_training = acct.training_eps;
  r.delta1_training = acct.training_delta;
  r.eps_total = totals.eps;
  r.delta_total = totals.delta;
  return r;
}

}  // namespace pgb
