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

#ifndef PGB_TOYBENCH_DISCRIMINATOR_H_
#define PGB_TOYBENCH_DISCRIMINATOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgb/score_matrix.h"
#include "pgb/toybench/grid.h"

namespace pgb::toy {

enum class FeatureKind {
  kLinear,     // (x1, x2)
  kQuadratic,  // (x1, x2, x1^2, x2^2, x1 x2)
  kFourier,    // sqrt(2) cos(w_k . x + b_k), random w_k ~ N(0, I / l^2)
};

std::string FeatureKindName(FeatureKind kind);
FeatureKind ParseFeatureKind(const std::string& name);  // throws ContractError

class FeatureMap {
 public:
  static FeatureMap Linear();
  static FeatureMap Quadratic();
  static FeatureMap Fourier(int dimension, double lengthscale,
                            std::uint64_t seed);
  // Rebuilds a Fourier map from stored parameters; frequencies are
  // interleaved (w_k1, w_k2) pairs.
  static FeatureMap FourierFromParams(std::vector<double> frequencies,
                                      std::vector<double> phases);
  static FeatureMap OfKind(FeatureKind kind);  // linear or quadratic only

  FeatureKind kind() const { return kind_; }
  std::size_t dimension() const;
  void Apply(const Point2& p, std::span<double> out) const;

  const std::vector<double>& frequencies() const { return frequencies_; }
  const std::vector<double>& phases() const { return phases_; }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  explicit FeatureMap(FeatureKind kind) : kind_(kind) {}

  FeatureKind kind_;
  std::vector<double> frequencies_;
  std::vector<double> phases_;
};

// Row-major feature rows for a batch of points.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * cols, cols);
  }
};

FeatureMatrix ComputeFeatures(const FeatureMap& map,
                              std::span<const Point2> points);

// Logistic scorer sigmoid(coefficients . phi(x) + intercept) standing in for
// a trained discriminator network.
struct DiscriminatorModel {
  FeatureMap feature_map = FeatureMap::Linear();
  std::vector<double> coefficients;
  double intercept = 0.0;

  // The constant-1/2 scorer (all weights zero).
  static DiscriminatorModel ConstantHalf(const FeatureMap& map);

  void Validate() const;  // coefficient count must match the feature map
  double Logit(const Point2& p) const;
  double Predict(const Point2& p) const;
  double PredictFromFeatures(std::span<const double> features) const;
};

struct TrainingOptions {
  int steps = 500;
  double learning_rate = 0.1;
  double l2 = 0.0;
  double gradient_tolerance = 1e-8;
  // Weight each class to total 1/2 instead of weighting every row equally.
  bool balance_classes = true;
  // Random subsample caps applied before training; 0 keeps everything.
  std::size_t max_real_samples = 0;
  std::size_t max_fake_samples = 0;
  int checkpoint_every = 50;
};

struct TrainingTrace {
  std::vector<double> checkpoint_losses;  // objective at steps 0, k, 2k, ...
  int steps_run = 0;
};

struct LogisticFit {
  std::vector<double> coefficients;  // in the raw feature scale
  double intercept = 0.0;
};

// Full-batch gradient descent on the (optionally L2-penalised) weighted
// logistic loss over standardized features. A step that would increase the
// objective is retried with half the step size, so recorded losses never
// increase. Throws TrainingError if the objective becomes non-finite.
LogisticFit FitLogistic(const FeatureMatrix& features,
                        std::span<const double> labels,
                        std::span<const double> weights,
                        const TrainingOptions& options,
                        TrainingTrace* trace = nullptr);

// Fits one real-vs-fake model per fake block against shared real rows. Each
// model follows exactly the iterates FitLogistic would produce on its own
// stacked data (real labelled 1, class weights as in `options`); the real
// rows enter through matrix-matrix products shared by all models.
std::vector<LogisticFit> FitRealVsFakeBatch(
    const FeatureMatrix& real, std::span<const FeatureMatrix> fakes,
    const TrainingOptions& options);

// Real points are labelled 1, fake points 0. The seed drives subsampling.
DiscriminatorModel TrainDiscriminator(std::span<const Point2> real,
                                      std::span<const Point2> fake,
                                      const FeatureMap& feature_map,
                                      const TrainingOptions& options,
                                      std::uint64_t seed,
                                      TrainingTrace* trace = nullptr);

// Which fake samples discriminator j is trained against.
enum class TrainingSet {
  kGenerator,   // samples of generator j only
  kCumulative,  // samples of generators 0..j
};

std::string TrainingSetName(TrainingSet set);
TrainingSet ParseTrainingSet(const std::string& name);

// One discriminator per generator in pool order, sharing the feature map and
// the real-data subsample.
std::vector<DiscriminatorModel> TrainDiscriminatorSequence(
    std::span<const Point2> real, const Pool& pool,
    const FeatureMap& feature_map, const TrainingOptions& options,
    TrainingSet training_set, std::uint64_t seed);

// Real-data means and pool scores of every model, clipped on ingestion.
ScoreMatrix BuildScoreMatrix(std::span<const Point2> real, const Pool& pool,
                             std::span<const DiscriminatorModel> discs);

}  // namespace pgb::toy

#endif  // PGB_TOYBENCH_DISCRIMINATOR_H_
