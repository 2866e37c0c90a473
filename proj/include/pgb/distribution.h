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

#ifndef PGB_DISTRIBUTION_H_
#define PGB_DISTRIBUTION_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pgb {

// Tolerance on |sum(weights) - 1| accepted for a probability vector.
inline constexpr double kSimplexTolerance = 1e-9;

namespace internal {
// Throws ContractError unless `weights` is non-empty, finite, non-negative and
// sums to one within kSimplexTolerance. `what` names the vector in messages.
void ValidateSimplex(std::span<const double> weights, const char* what);
// Divides by the (compensated) sum; throws ContractError on a zero total.
std::vector<double> NormalizeWeights(std::vector<double> weights,
                                     const char* what);
}  // namespace internal

// A probability vector over a finite index set. The tag keeps distributions
// over different index sets (pool elements vs. discriminators) apart.
template <typename Tag>
class Distribution {
 public:
  static Distribution Create(std::vector<double> weights) {
    internal::ValidateSimplex(weights, Tag::kName);
    return Distribution(std::move(weights));
  }

  // Scales non-negative weights to sum to one.
  static Distribution Normalized(std::vector<double> weights) {
    return Create(internal::NormalizeWeights(std::move(weights), Tag::kName));
  }

  static Distribution Uniform(std::size_t size) {
    return Create(std::vector<double>(size, 1.0 / static_cast<double>(size)));
  }

  static Distribution PointMass(std::size_t size, std::size_t index) {
    std::vector<double> w(size, 0.0);
    w.at(index) = 1.0;
    return Create(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

struct SyntheticTag {
  static constexpr const char* kName = "synthetic distribution";
};
struct MixtureTag {
  static constexpr const char* kName = "mixture discriminator";
};

// The synthetic-data player's strategy over the pool B.
using SyntheticDistribution = Distribution<SyntheticTag>;
// The distinguisher's strategy over the stored discriminators.
using MixtureDiscriminator = Distribution<MixtureTag>;

}  // namespace pgb

#endif  // PGB_DISTRIBUTION_H_
