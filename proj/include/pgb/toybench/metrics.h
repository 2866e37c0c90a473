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

#ifndef PGB_TOYBENCH_METRICS_H_
#define PGB_TOYBENCH_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pgb/toybench/discriminator.h"
#include "pgb/toybench/grid.h"

namespace pgb::toy {

struct QualityScoreParams {
  double coverage_probability = 0.99;
  double chi2_critical = 9.21034;  // chi-square(2) quantile at 0.99
  double variance = 0.0025;

  double radius() const;
  // Checks positivity and that chi2_critical matches coverage_probability
  // (for two degrees of freedom the quantile is -2 ln(1 - p)).
  void Validate() const;
};

struct QualityScoreResult {
  double capped = 0.0;    // sum_i min(1 / modes, W_i / W)
  double uncapped = 0.0;  // sum_i W_i / W
  std::vector<double> mode_mass;  // W_i / W per mode
};

// Weighted fraction of samples inside the high-density disc of some mode,
// with each mode's contribution capped at its real-data share. Empty weights
// mean unit weights.
QualityScoreResult QualityScore(std::span<const Point2> points,
                                std::span<const double> weights,
                                const GridMixtureSpec& grid,
                                const QualityScoreParams& params = {});

// The distinguishing classifier used for propensity scores.
struct ClassifierSpec {
  FeatureKind feature_map = FeatureKind::kQuadratic;
  int steps = 500;
  double learning_rate = 0.1;
  double gradient_tolerance = 1e-8;
  // Random cap on real rows fed to the classifier; 0 keeps all.
  std::size_t max_real_samples = 0;

  void Validate() const;
};

// Mean over the labelled union of (propensity - c)^2 with c the real share.
// Synthetic weights are rescaled to sum to the synthetic row count; empty
// weights mean unit weights.
double Pmse(std::span<const Point2> real, std::span<const Point2> synthetic,
            std::span<const double> weights, const ClassifierSpec& spec,
            std::uint64_t seed);

inline constexpr int kMinPermutations = 20;

struct PmseRatioResult {
  double pmse = 0.0;
  double null_mean = 0.0;
  double ratio = 0.0;
};

// pMSE divided by the mean pMSE of refits with the real/synthetic labels
// permuted. Weights stay attached to their points under permutation.
PmseRatioResult PmseRatio(std::span<const Point2> real,
                          std::span<const Point2> synthetic,
                          std::span<const double> weights,
                          const ClassifierSpec& spec, int n_permutations,
                          std::uint64_t seed);

// Index of the nearest centroid (ties to the lower index).
int NearestMode(const Point2& p, const GridMixtureSpec& grid);

// Weighted nearest-mode histogram normalised to a probability vector.
std::vector<double> ModeHistogram(std::span<const Point2> points,
                                  std::span<const double> weights,
                                  const GridMixtureSpec& grid);

// Half the L1 distance between two probability vectors over the same bins.
double TvDistance(std::span<const double> p, std::span<const double> q);

}  // namespace pgb::toy

#endif  // PGB_TOYBENCH_METRICS_H_
