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

#include "pgb/score_matrix.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pgb/errors.h"

namespace pgb {
namespace {

void CheckProbability(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ContractError(std::string(what) + " value " + std::to_string(v) +
                        " outside [0, 1]");
  }
}

}  // namespace

double ClipScore(double score) {
  return std::clamp(score, kScoreFloor, kScoreCeiling);
}

std::string FormatPoolId(const PoolId& id) {
  return std::to_string(id.generator) + ":" + std::to_string(id.sample);
}

PoolId ParsePoolId(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ContractError("malformed pool id '" + text + "'");
  }
  try {
    std::size_t used_g = 0;
    std::size_t used_i = 0;
    const std::string g = text.substr(0, colon);
    const std::string i = text.substr(colon + 1);
    PoolId id{std::stoi(g, &used_g), std::stoi(i, &used_i)};
    if (used_g != g.size() || used_i != i.size() || id.generator < 0 ||
        id.sample < 0) {
      throw ContractError("malformed pool id '" + text + "'");
    }
    return id;
  } catch (const std::logic_error&) {
    throw ContractError("malformed pool id '" + text + "'");
  }
}

ScoreMatrix ScoreMatrix::Create(int n_real, std::vector<double> real_means,
                                const std::vector<std::vector<double>>& rows,
                                std::vector<PoolId> pool_ids) {
  if (rows.empty()) throw ShapeError("score matrix needs at least one row");
  const std::size_t pool_size = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * pool_size);
  for (const auto& r : rows) {
    if (r.size() != pool_size) {
      throw ShapeError("score rows have unequal lengths");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FromFlat(n_real, std::move(real_means), std::move(flat), pool_size,
                  std::move(pool_ids));
}

ScoreMatrix ScoreMatrix::FromFlat(int n_real, std::vector<double> real_means,
                                  std::vector<double> scores,
                                  std::size_t pool_size,
                                  std::vector<PoolId> pool_ids) {
  if (n_real < 1) throw ContractError("n_real must be at least 1");
  if (real_means.empty()) {
    throw ShapeError("score matrix needs at least one discriminator");
  }
  if (pool_size == 0) throw ShapeError("score matrix needs a non-empty pool");
  if (scores.size() != real_means.size() * pool_size) {
    throw ShapeError("score buffer size does not match N x |B|");
  }
  if (pool_ids.empty()) {
    pool_ids.resize(pool_size);
    for (std::size_t b = 0; b < pool_size; ++b) {
      pool_ids[b] = PoolId{0, static_cast<int>(b)};
    }
  }
  if (pool_ids.size() != pool_size) {
    throw ShapeError("pool_ids must have exactly |B| entries");
  }
  for (double m : real_means) CheckProbability(m, "real mean");
  for (double& s : scores) {
    CheckProbability(s, "score");
    s = ClipScore(s);
  }
  ScoreMatrix sm;
  sm.n_real_ = n_real;
  sm.pool_size_ = pool_size;
  sm.real_means_ = std::move(real_means);
  sm.scores_ = std::move(scores);
  sm.pool_ids_ = std::move(pool_ids);
  return sm;
}

std::ptrdiff_t ScoreMatrix::FindHalfDiscriminator() const {
  for (std::size_t j = 0; j < num_discriminators(); ++j) {
    if (real_means_[j] != 0.5) continue;
    const auto r = row(j);
    if (std::all_of(r.begin(), r.end(), [](double s) { return s == 0.5; })) {
      return static_cast<std::ptrdiff_t>(j);
    }
  }
  return -1;
}

}  // namespace pgb
