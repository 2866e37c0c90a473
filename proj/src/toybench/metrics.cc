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

#include "pgb/toybench/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb::toy {
namespace {

std::vector<double> UnitOrCopy(std::span<const double> weights,
                               std::size_t n) {
  if (weights.empty()) return std::vector<double>(n, 1.0);
  if (weights.size() != n) {
    throw ShapeError("got " + std::to_string(weights.size()) +
                     " weights for " + std::to_string(n) + " points");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw RangeError("sample weights must be finite and >= 0");
    }
  }
  return {weights.begin(), weights.end()};
}

struct LabelledSet {
  FeatureMatrix features;
  std::vector<double> labels;
  std::vector<double> weights;
};

LabelledSet Assemble(std::span<const Point2> real,
                     std::span<const Point2> synthetic,
                     std::span<const double> weights,
                     const ClassifierSpec& spec, Rng& rng) {
  if (real.empty() || synthetic.empty()) {
    throw ContractError("pMSE needs non-empty real and synthetic data");
  }
  spec.Validate();
  std::vector<double> synth_w = UnitOrCopy(weights, synthetic.size());
  const double total = std::accumulate(synth_w.begin(), synth_w.end(), 0.0);
  if (!(total > 0.0)) throw RangeError("synthetic weights sum to 0");
  const double scale = static_cast<double>(synthetic.size()) / total;

  std::vector<std::size_t> real_rows(real.size());
  std::iota(real_rows.begin(), real_rows.end(), 0);
  if (spec.max_real_samples > 0 && spec.max_real_samples < real.size()) {
    std::shuffle(real_rows.begin(), real_rows.end(), rng);
    real_rows.resize(spec.max_real_samples);
    std::sort(real_rows.begin(), real_rows.end());
  }

  std::vector<Point2> points;
  LabelledSet set;
  points.reserve(real_rows.size() + synthetic.size());
  for (std::size_t i : real_rows) {
    points.push_back(real[i]);
    set.labels.push_back(1.0);
    set.weights.push_back(1.0);
  }
  for (std::size_t i = 0; i < synthetic.size(); ++i) {
    if (synth_w[i] == 0.0) continue;  // contributes nothing either way
    points.push_back(synthetic[i]);
    set.labels.push_back(0.0);
    set.weights.push_back(synth_w[i] * scale);
  }
  const FeatureMap map = FeatureMap::OfKind(spec.feature_map);
  set.features = ComputeFeatures(map, points);
  return set;
}

double FitAndScore(const LabelledSet& set, std::span<const double> labels,
                   const ClassifierSpec& spec) {
  TrainingOptions options;
  options.steps = spec.steps;
  options.learning_rate = spec.learning_rate;
  options.gradient_tolerance = spec.gradient_tolerance;
  const LogisticFit fit =
      FitLogistic(set.features, labels, set.weights, options);
  DiscriminatorModel model;
  model.feature_map = FeatureMap::OfKind(spec.feature_map);
  model.coefficients = fit.coefficients;
  model.intercept = fit.intercept;

  double total = 0.0;
  double real_share = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total += set.weights[i];
    real_share += set.weights[i] * labels[i];
  }
  const double c = real_share / total;
  double acc = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = model.PredictFromFeatures(set.features.row(i));
    acc += set.weights[i] * (p - c) * (p - c);
  }
  return acc / total;
}

}  // namespace

double QualityScoreParams::radius() const {
  return std::sqrt(variance * chi2_critical);
}

void QualityScoreParams::Validate() const {
  if (!(coverage_probability > 0.0 && coverage_probability < 1.0)) {
    throw ContractError("coverage_probability must lie in (0, 1)");
  }
  if (!(variance > 0.0) || !(chi2_critical > 0.0)) {
    throw ContractError("variance and chi2_critical must be > 0");
  }
  const double expected = -2.0 * std::log1p(-coverage_probability);
  if (std::abs(chi2_critical - expected) > 1e-4 * expected) {
    throw ContractError("chi2_critical " + std::to_string(chi2_critical) +
                        " does not match coverage probability " +
                        std::to_string(coverage_probability));
  }
}

QualityScoreResult QualityScore(std::span<const Point2> points,
                                std::span<const double> weights,
                                const GridMixtureSpec& grid,
                                const QualityScoreParams& params) {
  grid.Validate();
  params.Validate();
  if (points.empty()) throw ContractError("quality score of an empty sample");
  const std::vector<double> w = UnitOrCopy(weights, points.size());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) throw RangeError("sample weights sum to 0");

  const int modes = grid.num_modes();
  const double r2 = params.variance * params.chi2_critical;
  std::vector<double> mass(modes, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (w[i] == 0.0) continue;
    const int k = NearestMode(points[i], grid);
    const Point2 c = grid.Centroid(k);
    const double dx = points[i].x1 - c.x1;
    const double dy = points[i].x2 - c.x2;
    if (dx * dx + dy * dy <= r2) mass[k] += w[i];
  }
  QualityScoreResult result;
  const double cap = 1.0 / modes;
  result.mode_mass.resize(modes);
  for (int k = 0; k < modes; ++k) {
    result.mode_mass[k] = mass[k] / total;
    result.uncapped += result.mode_mass[k];
    result.capped += std::min(cap, result.mode_mass[k]);
  }
  result.capped = std::min(result.capped, 1.0);
  result.uncapped = std::min(result.uncapped, 1.0);
  return result;
}

void ClassifierSpec::Validate() const {
  if (feature_map == FeatureKind::kFourier) {
    throw ContractError("the pMSE classifier supports linear or quadratic");
  }
  if (steps < 1 || !(learning_rate > 0.0) || !(gradient_tolerance >= 0.0)) {
    throw ContractError("invalid classifier settings");
  }
}

double Pmse(std::span<const Point2> real, std::span<const Point2> synthetic,
            std::span<const double> weights, const ClassifierSpec& spec,
            std::uint64_t seed) {
  Rng rng(seed);
  const LabelledSet set = Assemble(real, synthetic, weights, spec, rng);
  return FitAndScore(set, set.labels, spec);
}

PmseRatioResult PmseRatio(std::span<const Point2> real,
                          std::span<const Point2> synthetic,
                          std::span<const double> weights,
                          const ClassifierSpec& spec, int n_permutations,
                          std::uint64_t seed) {
  if (n_permutations < kMinPermutations) {
    throw ContractError("pMSE ratio needs at least " +
                        std::to_string(kMinPermutations) + " permutations");
  }
  Rng rng(seed);
  const LabelledSet set = Assemble(real, synthetic, weights, spec, rng);
  PmseRatioResult result;
  result.pmse = FitAndScore(set, set.labels, spec);
  std::vector<double> permuted = set.labels;
  double null_total = 0.0;
  for (int p = 0; p < n_permutations; ++p) {
    Rng perm_rng(DeriveSeed(seed, "permutation/" + std::to_string(p)));
    std::shuffle(permuted.begin(), permuted.end(), perm_rng);
    null_total += FitAndScore(set, permuted, spec);
  }
  result.null_mean = null_total / n_permutations;
  result.ratio = result.null_mean > 0.0
                     ? result.pmse / result.null_mean
                     : std::numeric_limits<double>::infinity();
  return result;
}

int NearestMode(const Point2& p, const GridMixtureSpec& grid) {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.num_modes(); ++k) {
    const Point2 c = grid.Centroid(k);
    const double d2 = (p.x1 - c.x1) * (p.x1 - c.x1) +
                      (p.x2 - c.x2) * (p.x2 - c.x2);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  return best;
}

std::vector<double> ModeHistogram(std::span<const Point2> points,
                                  std::span<const double> weights,
                                  const GridMixtureSpec& grid) {
  grid.Validate();
  const std::vector<double> w = UnitOrCopy(weights, points.size());
  std::vector<double> hist(grid.num_modes(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    hist[NearestMode(points[i], grid)] += w[i];
    total += w[i];
  }
  if (!(total > 0.0)) throw RangeError("histogram weights sum to 0");
  for (double& h : hist) h /= total;
  return hist;
}

double TvDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ShapeError("histograms have " + std::to_string(p.size()) + " and " +
                     std::to_string(q.size()) + " bins");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return std::min(1.0, 0.5 * acc);
}

}  // namespace pgb::toy
