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

#ifndef PGB_SCORE_MATRIX_H_
#define PGB_SCORE_MATRIX_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pgb {

// Scores are clamped into [kScoreFloor, kScoreCeiling] on ingestion so that
// D / (1 - D) and log-space weights stay finite.
inline constexpr double kScoreFloor = 1e-6;
inline constexpr double kScoreCeiling = 1.0 - 1e-6;

double ClipScore(double score);

// Provenance of a pool element: which generator produced it and its index
// among that generator's samples.
struct PoolId {
  int generator = 0;
  int sample = 0;

  friend bool operator==(const PoolId&, const PoolId&) = default;
};

std::string FormatPoolId(const PoolId& id);  // "g:i"
PoolId ParsePoolId(const std::string& text);  // throws ContractError

// Read-only view of the N x |B| discriminator outputs on the pool, without the
// real-data means. Consumers that must not touch private statistics (rejection
// sampling) take this instead of a ScoreMatrix.
class ScoreGrid {
 public:
  ScoreGrid(std::span<const double> data, std::size_t rows, std::size_t cols)
      : data_(data), rows_(rows), cols_(cols) {}

  std::size_t num_discriminators() const { return rows_; }
  std::size_t pool_size() const { return cols_; }
  double at(std::size_t j, std::size_t b) const { return data_[j * cols_ + b]; }
  std::span<const double> row(std::size_t j) const {
    return data_.subspan(j * cols_, cols_);
  }

 private:
  std::span<const double> data_;
  std::size_t rows_;
  std::size_t cols_;
};

// All payoff information of the post-training zero-sum game: the mean output
// m_j of each discriminator on the private data and the output of each
// discriminator on every pooled synthetic sample. Immutable once built.
class ScoreMatrix {
 public:
  // `rows[j][b]` is D_j(b). Throws ShapeError on ragged or mismatched inputs
  // and ContractError on values outside [0, 1]. An empty `pool_ids` means
  // every sample is attributed to generator 0 in order.
  static ScoreMatrix Create(int n_real, std::vector<double> real_means,
                            const std::vector<std::vector<double>>& rows,
                            std::vector<PoolId> pool_ids = {});

  // Same, from a row-major N x |B| buffer.
  static ScoreMatrix FromFlat(int n_real, std::vector<double> real_means,
                              std::vector<double> scores,
                              std::size_t pool_size,
                              std::vector<PoolId> pool_ids = {});

  int n_real() const { return n_real_; }
  std::size_t num_discriminators() const { return real_means_.size(); }
  std::size_t pool_size() const { return pool_size_; }

  double real_mean(std::size_t j) const { return real_means_[j]; }
  std::span<const double> real_means() const { return real_means_; }
  double score(std::size_t j, std::size_t b) const {
    return scores_[j * pool_size_ + b];
  }
  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(scores_).subspan(j * pool_size_,
                                                    pool_size_);
  }
  ScoreGrid grid() const {
    return ScoreGrid(scores_, real_means_.size(), pool_size_);
  }
  const std::vector<PoolId>& pool_ids() const { return pool_ids_; }

  // Index of the first row that is identically 1/2 with real mean 1/2.
  std::ptrdiff_t FindHalfDiscriminator() const;

 private:
  ScoreMatrix() = default;

  int n_real_ = 0;
  std::size_t pool_size_ = 0;
  std::vector<double> real_means_;
  std::vector<double> scores_;
  std::vector<PoolId> pool_ids_;
};

}  // namespace pgb

#endif  // PGB_SCORE_MATRIX_H_
