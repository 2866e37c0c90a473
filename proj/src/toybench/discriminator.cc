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

#include "pgb/toybench/discriminator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb::toy {
namespace {

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
[[maybe_unused]] double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// Element-wise log(1 + exp(z)) and sigmoid(z) over Eigen arrays. Exponents
// are clamped at -kExpFloor so saturated logits never produce subnormals;
// the neglected terms are below 1e-21.
constexpr double kExpFloor = 50.0;

template <typename Derived>
auto SoftplusArray(const Eigen::ArrayBase<Derived>& z) {
  return (z.max(0.0) + (1.0 + (-z.abs()).max(-kExpFloor).exp()).log()).eval();
}

template <typename Derived>
auto SigmoidArray(const Eigen::ArrayBase<Derived>& z) {
  return (1.0 + (-z).max(-kExpFloor).min(kExpFloor).exp()).inverse().eval();
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Keeps at most `cap` of `n` indices, chosen uniformly without replacement
// and returned in increasing order. cap == 0 keeps all.
std::vector<std::size_t> Subsample(std::size_t n, std::size_t cap, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (cap == 0 || cap >= n) return idx;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

FeatureMatrix SelectRows(const FeatureMatrix& m,
                         std::span<const std::size_t> rows) {
  FeatureMatrix out;
  out.rows = rows.size();
  out.cols = m.cols;
  out.data.reserve(out.rows * out.cols);
  for (std::size_t r : rows) {
    const auto src = m.row(r);
    out.data.insert(out.data.end(), src.begin(), src.end());
  }
  return out;
}

// Stacks real rows (label 1) over fake rows (label 0) and fits.
DiscriminatorModel FitRealVsFake(const FeatureMap& map,
                                 const FeatureMatrix& real,
                                 const FeatureMatrix& fake,
                                 const TrainingOptions& options,
                                 TrainingTrace* trace) {
  FeatureMatrix stacked;
  stacked.cols = real.cols;
  stacked.rows = real.rows + fake.rows;
  stacked.data.reserve(stacked.rows * stacked.cols);
  stacked.data.insert(stacked.data.end(), real.data.begin(), real.data.end());
  stacked.data.insert(stacked.data.end(), fake.data.begin(), fake.data.end());

  std::vector<double> labels(stacked.rows, 0.0);
  std::fill(labels.begin(), labels.begin() + real.rows, 1.0);
  std::vector<double> weights(stacked.rows, 1.0);
  if (options.balance_classes) {
    std::fill(weights.begin(), weights.begin() + real.rows,
              0.5 / static_cast<double>(real.rows));
    std::fill(weights.begin() + real.rows, weights.end(),
              0.5 / static_cast<double>(fake.rows));
  }
  LogisticFit fit = FitLogistic(stacked, labels, weights, options, trace);
  DiscriminatorModel model;
  model.feature_map = map;
  model.coefficients = std::move(fit.coefficients);
  model.intercept = fit.intercept;
  return model;
}

}  // namespace

std::string FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLinear:
      return "linear";
    case FeatureKind::kQuadratic:
      return "quadratic";
    case FeatureKind::kFourier:
      return "fourier";
  }
  return "unknown";
}

FeatureKind ParseFeatureKind(const std::string& name) {
  if (name == "linear") return FeatureKind::kLinear;
  if (name == "quadratic") return FeatureKind::kQuadratic;
  if (name == "fourier") return FeatureKind::kFourier;
  throw ContractError("unknown feature map '" + name + "'");
}

FeatureMap FeatureMap::Linear() { return FeatureMap(FeatureKind::kLinear); }

FeatureMap FeatureMap::Quadratic() {
  return FeatureMap(FeatureKind::kQuadratic);
}

FeatureMap FeatureMap::Fourier(int dimension, double lengthscale,
                               std::uint64_t seed) {
  if (dimension < 1) throw ContractError("Fourier dimension must be >= 1");
  if (!(lengthscale > 0.0)) {
    throw ContractError("Fourier lengthscale must be > 0");
  }
  Rng rng(seed);
  std::normal_distribution<double> freq(0.0, 1.0 / lengthscale);
  std::vector<double> frequencies(2 * static_cast<std::size_t>(dimension));
  std::vector<double> phases(dimension);
  for (int k = 0; k < dimension; ++k) {
    frequencies[2 * k] = freq(rng);
    frequencies[2 * k + 1] = freq(rng);
    phases[k] = 2.0 * std::numbers::pi * Uniform01(rng);
  }
  return FourierFromParams(std::move(frequencies), std::move(phases));
}

FeatureMap FeatureMap::FourierFromParams(std::vector<double> frequencies,
                                         std::vector<double> phases) {
  if (phases.empty() || frequencies.size() != 2 * phases.size()) {
    throw ShapeError("Fourier map needs 2 frequencies per phase");
  }
  FeatureMap map(FeatureKind::kFourier);
  map.frequencies_ = std::move(frequencies);
  map.phases_ = std::move(phases);
  return map;
}

FeatureMap FeatureMap::OfKind(FeatureKind kind) {
  if (kind == FeatureKind::kFourier) {
    throw ContractError("Fourier maps need a dimension, lengthscale and seed");
  }
  return FeatureMap(kind);
}

std::size_t FeatureMap::dimension() const {
  switch (kind_) {
    case FeatureKind::kLinear:
      return 2;
    case FeatureKind::kQuadratic:
      return 5;
    case FeatureKind::kFourier:
      return phases_.size();
  }
  return 0;
}

void FeatureMap::Apply(const Point2& p, std::span<double> out) const {
  switch (kind_) {
    case FeatureKind::kLinear:
      out[0] = p.x1;
      out[1] = p.x2;
      return;
    case FeatureKind::kQuadratic:
      out[0] = p.x1;
      out[1] = p.x2;
      out[2] = p.x1 * p.x1;
      out[3] = p.x2 * p.x2;
      out[4] = p.x1 * p.x2;
      return;
    case FeatureKind::kFourier:
      for (std::size_t k = 0; k < phases_.size(); ++k) {
        out[k] = std::numbers::sqrt2 *
                 std::cos(frequencies_[2 * k] * p.x1 +
                          frequencies_[2 * k + 1] * p.x2 + phases_[k]);
      }
      return;
  }
}

FeatureMatrix ComputeFeatures(const FeatureMap& map,
                              std::span<const Point2> points) {
  FeatureMatrix m;
  m.rows = points.size();
  m.cols = map.dimension();
  m.data.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    map.Apply(points[i], std::span<double>(m.data).subspan(i * m.cols, m.cols));
  }
  return m;
}

DiscriminatorModel DiscriminatorModel::ConstantHalf(const FeatureMap& map) {
  DiscriminatorModel model;
  model.feature_map = map;
  model.coefficients.assign(map.dimension(), 0.0);
  model.intercept = 0.0;
  return model;
}

void DiscriminatorModel::Validate() const {
  if (coefficients.size() != feature_map.dimension()) {
    throw ShapeError("discriminator has " +
                     std::to_string(coefficients.size()) +
                     " coefficients for a " +
                     std::to_string(feature_map.dimension()) +
                     "-dimensional feature map");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw ContractError("non-finite coefficient");
  }
  if (!std::isfinite(intercept)) throw ContractError("non-finite intercept");
}

double DiscriminatorModel::Logit(const Point2& p) const {
  std::vector<double> f(feature_map.dimension());
  feature_map.Apply(p, f);
  return Dot(coefficients, f) + intercept;
}

double DiscriminatorModel::Predict(const Point2& p) const {
  return Sigmoid(Logit(p));
}

double DiscriminatorModel::PredictFromFeatures(
    std::span<const double> features) const {
  return Sigmoid(Dot(coefficients, features) + intercept);
}

LogisticFit FitLogistic(const FeatureMatrix& features,
                        std::span<const double> labels,
                        std::span<const double> weights,
                        const TrainingOptions& options,
                        TrainingTrace* trace) {
  const std::size_t n = features.rows;
  const std::size_t d = features.cols;
  if (n == 0) throw ContractError("cannot train on an empty dataset");
  if (labels.size() != n || weights.size() != n) {
    throw ShapeError("labels and weights must have one entry per row");
  }
  if (options.steps < 0 || !(options.learning_rate > 0.0) ||
      !(options.l2 >= 0.0)) {
    throw ContractError("invalid training options");
  }
  double weight_total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ContractError("training weights must be finite and >= 0");
    }
    weight_total += w;
  }
  if (!(weight_total > 0.0)) throw ContractError("training weights sum to 0");

  // Standardize columns under the training weights.
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = features.row(i);
    for (std::size_t k = 0; k < d; ++k) mean[k] += weights[i] * r[k];
  }
  for (double& m : mean) m /= weight_total;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = features.row(i);
    for (std::size_t k = 0; k < d; ++k) {
      const double c = r[k] - mean[k];
      scale[k] += weights[i] * c * c;
    }
  }
  std::vector<double> inv_sd(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double sd = std::sqrt(scale[k] / weight_total);
    inv_sd[k] = sd > 1e-12 ? 1.0 / sd : 0.0;
  }
  using RowMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrix z(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = features.row(i);
    for (std::size_t k = 0; k < d; ++k) {
      z(i, k) = (r[k] - mean[k]) * inv_sd[k];
    }
  }
  const Eigen::Map<const Eigen::VectorXd> y(labels.data(), n);
  Eigen::VectorXd w_norm(n);
  for (std::size_t i = 0; i < n; ++i) w_norm[i] = weights[i] / weight_total;

  auto objective = [&](const Eigen::VectorXd& th, const Eigen::VectorXd& lg) {
    double loss = (w_norm.array() *
                   (SoftplusArray(lg.array()) - y.array() * lg.array()))
                      .sum();
    if (options.l2 > 0.0) loss += 0.5 * options.l2 * th.squaredNorm();
    return loss;
  };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  double bias = 0.0;
  Eigen::VectorXd logits = Eigen::VectorXd::Zero(n);
  double loss = objective(theta, logits);
  if (trace != nullptr) {
    trace->checkpoint_losses.assign(1, loss);
    trace->steps_run = 0;
  }
  Eigen::VectorXd residual(n);
  Eigen::VectorXd grad(d);
  Eigen::VectorXd next_theta(d);
  Eigen::VectorXd next_logits(n);
  double lr = options.learning_rate;
  int step = 0;
  for (; step < options.steps; ++step) {
    residual = w_norm.array() * (SigmoidArray(logits.array()) - y.array());
    const double grad_bias = residual.sum();
    grad.noalias() = z.transpose() * residual;
    grad += options.l2 * theta;
    const double grad_norm =
        std::sqrt(grad.squaredNorm() + grad_bias * grad_bias);
    if (!std::isfinite(grad_norm)) {
      throw TrainingError("gradient became non-finite at step " +
                          std::to_string(step));
    }
    if (grad_norm < options.gradient_tolerance) break;

    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      next_theta = theta - lr * grad;
      const double next_bias = bias - lr * grad_bias;
      next_logits.noalias() = z * next_theta;
      next_logits.array() += next_bias;
      const double next_loss = objective(next_theta, next_logits);
      if (!std::isfinite(next_loss)) {
        throw TrainingError("training loss became non-finite at step " +
                            std::to_string(step));
      }
      if (next_loss <= loss) {
        theta.swap(next_theta);
        logits.swap(next_logits);
        bias = next_bias;
        loss = next_loss;
        accepted = true;
        break;
      }
      lr *= 0.5;
    }
    if (!accepted) break;  // no descent direction at machine precision
    if (trace != nullptr && options.checkpoint_every > 0 &&
        (step + 1) % options.checkpoint_every == 0) {
      trace->checkpoint_losses.push_back(loss);
    }
  }
  if (trace != nullptr) {
    trace->steps_run = step;
    if (options.checkpoint_every <= 0 ||
        step % options.checkpoint_every != 0) {
      trace->checkpoint_losses.push_back(loss);
    }
  }
  LogisticFit fit;
  fit.coefficients.resize(d);
  fit.intercept = bias;
  for (std::size_t k = 0; k < d; ++k) {
    fit.coefficients[k] = theta[k] * inv_sd[k];
    fit.intercept -= fit.coefficients[k] * mean[k];
  }
  return fit;
}

std::vector<LogisticFit> FitRealVsFakeBatch(
    const FeatureMatrix& real, std::span<const FeatureMatrix> fakes,
    const TrainingOptions& options) {
  using RowMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using ConstRowMap = Eigen::Map<const RowMatrix>;
  const std::size_t nr = real.rows;
  const std::size_t d = real.cols;
  const std::size_t k_models = fakes.size();
  if (nr == 0) throw ContractError("cannot train on an empty real set");
  if (options.steps < 0 || !(options.learning_rate > 0.0) ||
      !(options.l2 >= 0.0)) {
    throw ContractError("invalid training options");
  }
  for (const FeatureMatrix& f : fakes) {
    if (f.rows == 0) throw ContractError("cannot train on an empty fake set");
    if (f.cols != d) throw ShapeError("fake features have the wrong width");
  }
  if (k_models == 0) return {};

  const ConstRowMap r_mat(real.data.data(), nr, d);
  std::vector<ConstRowMap> f_mat;
  f_mat.reserve(k_models);
  for (const FeatureMatrix& f : fakes) f_mat.emplace_back(f.data.data(), f.rows, d);

  // Normalised class weights and per-model standardisation.
  Eigen::VectorXd w_real(k_models);
  Eigen::VectorXd w_fake(k_models);
  RowMatrix mean(k_models, d);
  RowMatrix inv_sd(k_models, d);
  const Eigen::RowVectorXd real_sum = r_mat.colwise().sum();
  for (std::size_t j = 0; j < k_models; ++j) {
    const double m = static_cast<double>(fakes[j].rows);
    const double n = static_cast<double>(nr);
    if (options.balance_classes) {
      w_real[j] = 0.5 / n;
      w_fake[j] = 0.5 / m;
    } else {
      w_real[j] = w_fake[j] = 1.0 / (n + m);
    }
    mean.row(j) = w_real[j] * real_sum + w_fake[j] * f_mat[j].colwise().sum();
    const Eigen::RowVectorXd mu = mean.row(j);
    const Eigen::RowVectorXd var =
        w_real[j] * (r_mat.rowwise() - mu).array().square().colwise().sum() +
        w_fake[j] *
            (f_mat[j].rowwise() - mu).array().square().colwise().sum();
    for (std::size_t k = 0; k < d; ++k) {
      const double sd = std::sqrt(var[k]);
      inv_sd(j, k) = sd > 1e-12 ? 1.0 / sd : 0.0;
    }
  }

  auto fake_loss = [](const Eigen::Ref<const Eigen::VectorXd>& col,
                      double w) { return w * SoftplusArray(col.array()).sum(); };

  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(d, k_models);
  Eigen::VectorXd bias = Eigen::VectorXd::Zero(k_models);
  Eigen::MatrixXd real_logits = Eigen::MatrixXd::Zero(nr, k_models);
  std::vector<Eigen::VectorXd> fake_logits(k_models);
  Eigen::VectorXd loss(k_models);
  Eigen::VectorXd lr = Eigen::VectorXd::Constant(k_models,
                                                 options.learning_rate);
  std::vector<bool> active(k_models, true);
  const Eigen::RowVectorXd initial_real_terms =
      (SoftplusArray(real_logits.array()) - real_logits.array())
          .matrix()
          .colwise()
          .sum();
  for (std::size_t j = 0; j < k_models; ++j) {
    fake_logits[j] = Eigen::VectorXd::Zero(fakes[j].rows);
    loss[j] = w_real[j] * initial_real_terms[j] +
              fake_loss(fake_logits[j], w_fake[j]);
  }

  Eigen::MatrixXd residual(nr, k_models);
  Eigen::MatrixXd grad(d, k_models);
  Eigen::VectorXd grad_bias(k_models);
  for (int step = 0; step < options.steps; ++step) {
    std::vector<std::size_t> pending;
    for (std::size_t j = 0; j < k_models; ++j) {
      if (active[j]) pending.push_back(j);
    }
    if (pending.empty()) break;

    residual = (SigmoidArray(real_logits.array()) - 1.0).matrix() *
               w_real.asDiagonal();
    for (std::size_t j = 0; j < k_models; ++j) {
      if (!active[j]) residual.col(j).setZero();
    }
    grad.noalias() = r_mat.transpose() * residual;
    for (std::size_t j : pending) {
      const Eigen::VectorXd fake_res =
          w_fake[j] * SigmoidArray(fake_logits[j].array()).matrix();
      grad.col(j) += f_mat[j].transpose() * fake_res;
      const double total_res = residual.col(j).sum() + fake_res.sum();
      grad.col(j) = (grad.col(j) - mean.row(j).transpose() * total_res)
                        .cwiseProduct(inv_sd.row(j).transpose());
      grad.col(j) += options.l2 * theta.col(j);
      grad_bias[j] = total_res;
    }

    std::vector<std::size_t> moving;
    for (std::size_t j : pending) {
      const double norm = std::sqrt(grad.col(j).squaredNorm() +
                                    grad_bias[j] * grad_bias[j]);
      if (!std::isfinite(norm)) {
        throw TrainingError("model " + std::to_string(j) +
                            ": gradient became non-finite at step " +
                            std::to_string(step));
      }
      if (norm < options.gradient_tolerance) {
        active[j] = false;
      } else {
        moving.push_back(j);
      }
    }

    for (int halvings = 0; halvings < 40 && !moving.empty(); ++halvings) {
      const Eigen::Index p = static_cast<Eigen::Index>(moving.size());
      Eigen::MatrixXd next_theta(d, p);
      Eigen::MatrixXd next_beta(d, p);
      Eigen::VectorXd next_bias(p);
      Eigen::VectorXd next_offset(p);
      for (Eigen::Index c = 0; c < p; ++c) {
        const std::size_t j = moving[c];
        next_theta.col(c) = theta.col(j) - lr[j] * grad.col(j);
        next_bias[c] = bias[j] - lr[j] * grad_bias[j];
        next_beta.col(c) =
            next_theta.col(c).cwiseProduct(inv_sd.row(j).transpose());
        next_offset[c] = next_bias[c] - mean.row(j).dot(next_beta.col(c));
      }
      Eigen::MatrixXd next_real = r_mat * next_beta;
      next_real.rowwise() += next_offset.transpose();
      // Real rows carry label 1: loss terms softplus(z) - z.
      const Eigen::RowVectorXd real_terms =
          (SoftplusArray(next_real.array()) - next_real.array())
              .matrix()
              .colwise()
              .sum();
      std::vector<std::size_t> retry;
      for (Eigen::Index c = 0; c < p; ++c) {
        const std::size_t j = moving[c];
        Eigen::VectorXd next_fake = f_mat[j] * next_beta.col(c);
        next_fake.array() += next_offset[c];
        double next_loss =
            w_real[j] * real_terms[c] + fake_loss(next_fake, w_fake[j]);
        if (options.l2 > 0.0) {
          next_loss += 0.5 * options.l2 * next_theta.col(c).squaredNorm();
        }
        if (!std::isfinite(next_loss)) {
          throw TrainingError("model " + std::to_string(j) +
                              ": training loss became non-finite at step " +
                              std::to_string(step));
        }
        if (next_loss <= loss[j]) {
          theta.col(j) = next_theta.col(c);
          bias[j] = next_bias[c];
          real_logits.col(j) = next_real.col(c);
          fake_logits[j] = std::move(next_fake);
          loss[j] = next_loss;
        } else {
          lr[j] *= 0.5;
          retry.push_back(j);
        }
      }
      moving.swap(retry);
    }
    for (std::size_t j : moving) active[j] = false;  // no descent direction
  }

  std::vector<LogisticFit> fits(k_models);
  for (std::size_t j = 0; j < k_models; ++j) {
    fits[j].coefficients.resize(d);
    fits[j].intercept = bias[j];
    for (std::size_t k = 0; k < d; ++k) {
      fits[j].coefficients[k] = theta(k, j) * inv_sd(j, k);
      fits[j].intercept -= fits[j].coefficients[k] * mean(j, k);
    }
  }
  return fits;
}

DiscriminatorModel TrainDiscriminator(std::span<const Point2> real,
                                      std::span<const Point2> fake,
                                      const FeatureMap& feature_map,
                                      const TrainingOptions& options,
                                      std::uint64_t seed,
                                      TrainingTrace* trace) {
  if (real.empty() || fake.empty()) {
    throw ContractError("discriminator training needs real and fake samples");
  }
  Rng rng(seed);
  const auto real_rows = Subsample(real.size(), options.max_real_samples, rng);
  const auto fake_rows = Subsample(fake.size(), options.max_fake_samples, rng);
  std::vector<Point2> r;
  r.reserve(real_rows.size());
  for (std::size_t i : real_rows) r.push_back(real[i]);
  std::vector<Point2> f;
  f.reserve(fake_rows.size());
  for (std::size_t i : fake_rows) f.push_back(fake[i]);
  return FitRealVsFake(feature_map, ComputeFeatures(feature_map, r),
                       ComputeFeatures(feature_map, f), options, trace);
}

std::string TrainingSetName(TrainingSet set) {
  return set == TrainingSet::kGenerator ? "generator" : "cumulative";
}

TrainingSet ParseTrainingSet(const std::string& name) {
  if (name == "generator") return TrainingSet::kGenerator;
  if (name == "cumulative") return TrainingSet::kCumulative;
  throw ContractError("unknown training set '" + name + "'");
}

std::vector<DiscriminatorModel> TrainDiscriminatorSequence(
    std::span<const Point2> real, const Pool& pool,
    const FeatureMap& feature_map, const TrainingOptions& options,
    TrainingSet training_set, std::uint64_t seed) {
  if (real.empty() || pool.size() == 0) {
    throw ContractError("discriminator training needs real and pool samples");
  }
  Rng rng(seed);
  const auto real_rows = Subsample(real.size(), options.max_real_samples, rng);
  std::vector<Point2> real_sub;
  real_sub.reserve(real_rows.size());
  for (std::size_t i : real_rows) real_sub.push_back(real[i]);
  const FeatureMatrix real_features = ComputeFeatures(feature_map, real_sub);
  const FeatureMatrix pool_features = ComputeFeatures(feature_map, pool.points);

  int n_generators = 0;
  for (const PoolId& id : pool.ids) {
    n_generators = std::max(n_generators, id.generator + 1);
  }
  std::vector<FeatureMatrix> fakes;
  fakes.reserve(n_generators);
  std::vector<std::size_t> candidates;
  for (int g = 0; g < n_generators; ++g) {
    if (training_set == TrainingSet::kGenerator) candidates.clear();
    for (std::size_t b = 0; b < pool.size(); ++b) {
      if (pool.ids[b].generator == g) candidates.push_back(b);
    }
    if (candidates.empty()) {
      throw ContractError("generator " + std::to_string(g) +
                          " has no pool samples");
    }
    const auto keep =
        Subsample(candidates.size(), options.max_fake_samples, rng);
    std::vector<std::size_t> rows;
    rows.reserve(keep.size());
    for (std::size_t k : keep) rows.push_back(candidates[k]);
    fakes.push_back(SelectRows(pool_features, rows));
  }
  std::vector<LogisticFit> fits =
      FitRealVsFakeBatch(real_features, fakes, options);
  std::vector<DiscriminatorModel> models(fits.size());
  for (std::size_t j = 0; j < fits.size(); ++j) {
    models[j].feature_map = feature_map;
    models[j].coefficients = std::move(fits[j].coefficients);
    models[j].intercept = fits[j].intercept;
  }
  return models;
}

ScoreMatrix BuildScoreMatrix(std::span<const Point2> real, const Pool& pool,
                             std::span<const DiscriminatorModel> discs) {
  if (real.empty() || pool.size() == 0 || discs.empty()) {
    throw ContractError("score matrix needs real data, a pool and models");
  }
  std::vector<double> means(discs.size());
  std::vector<double> scores(discs.size() * pool.size());
  const FeatureMap* cached_map = nullptr;
  FeatureMatrix real_f;
  FeatureMatrix pool_f;
  for (std::size_t j = 0; j < discs.size(); ++j) {
    const DiscriminatorModel& model = discs[j];
    model.Validate();
    if (cached_map == nullptr || !(*cached_map == model.feature_map)) {
      real_f = ComputeFeatures(model.feature_map, real);
      pool_f = ComputeFeatures(model.feature_map, pool.points);
      cached_map = &model.feature_map;
    }
    using RowMap = Eigen::Map<const Eigen::Matrix<
        double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    const Eigen::Map<const Eigen::VectorXd> coef(
        model.coefficients.data(),
        static_cast<Eigen::Index>(model.coefficients.size()));
    const Eigen::VectorXd real_logits =
        RowMap(real_f.data.data(), real_f.rows, real_f.cols) * coef;
    const Eigen::VectorXd pool_logits =
        RowMap(pool_f.data.data(), pool_f.rows, pool_f.cols) * coef;
    double total = 0.0;
    for (double z : real_logits) total += Sigmoid(z + model.intercept);
    means[j] = total / static_cast<double>(real_f.rows);
    for (std::size_t b = 0; b < pool.size(); ++b) {
      scores[j * pool.size() + b] = Sigmoid(pool_logits[b] + model.intercept);
    }
  }
  return ScoreMatrix::FromFlat(static_cast<int>(real.size()), std::move(means),
                               std::move(scores), pool.size(), pool.ids);
}

}  // namespace pgb::toy
