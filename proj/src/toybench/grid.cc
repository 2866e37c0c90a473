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

#include "pgb/toybench/grid.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb::toy {

void GridMixtureSpec::Validate() const {
  if (modes_per_side < 1) throw ContractError("modes_per_side must be >= 1");
  if (!(grid_spacing > 0.0)) throw ContractError("grid_spacing must be > 0");
  if (!(variance > 0.0)) throw ContractError("variance must be > 0");
  if (samples_per_mode < 1) {
    throw ContractError("samples_per_mode must be >= 1");
  }
}

Point2 GridMixtureSpec::Centroid(int mode) const {
  const double offset = 0.5 * static_cast<double>(modes_per_side - 1);
  const int row = mode / modes_per_side;
  const int col = mode % modes_per_side;
  return Point2{(static_cast<double>(row) - offset) * grid_spacing,
                (static_cast<double>(col) - offset) * grid_spacing};
}

Dataset GenGridMixture(const GridMixtureSpec& spec, std::uint64_t seed) {
  spec.Validate();
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(spec.variance));
  Dataset out;
  const std::size_t total =
      static_cast<std::size_t>(spec.num_modes()) * spec.samples_per_mode;
  out.points.reserve(total);
  out.modes.reserve(total);
  for (int k = 0; k < spec.num_modes(); ++k) {
    const Point2 c = spec.Centroid(k);
    for (int i = 0; i < spec.samples_per_mode; ++i) {
      const double dx = noise(rng);
      const double dy = noise(rng);
      out.points.push_back(Point2{c.x1 + dx, c.x2 + dy});
      out.modes.push_back(k);
    }
  }
  return out;
}

void GeneratorPoolSpec::Validate(int num_modes) const {
  if (n_generators < 1) throw ContractError("n_generators must be >= 1");
  if (samples_per_generator < 1) {
    throw ContractError("samples_per_generator must be >= 1");
  }
  if (!(jitter_std >= 0.0)) throw ContractError("jitter_std must be >= 0");
  if (covered_modes.size() != static_cast<std::size_t>(n_generators)) {
    throw ShapeError("covered_modes needs one entry per generator");
  }
  for (std::size_t g = 0; g < covered_modes.size(); ++g) {
    if (covered_modes[g].empty()) {
      throw ContractError("generator " + std::to_string(g) +
                          " covers no modes");
    }
    for (int m : covered_modes[g]) {
      if (m < 0 || m >= num_modes) {
        throw ContractError("generator " + std::to_string(g) +
                            " covers out-of-range mode " + std::to_string(m));
      }
    }
  }
}

std::vector<std::size_t> Pool::IndicesOfGenerator(int g) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < ids.size(); ++b) {
    if (ids[b].generator == g) out.push_back(b);
  }
  return out;
}

Pool MakeCollapsedPools(const GeneratorPoolSpec& spec,
                        const GridMixtureSpec& grid, std::uint64_t seed) {
  grid.Validate();
  spec.Validate(grid.num_modes());
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(grid.variance));
  std::normal_distribution<double> jitter(0.0, spec.jitter_std);
  Pool pool;
  const std::size_t total =
      static_cast<std::size_t>(spec.n_generators) * spec.samples_per_generator;
  pool.points.reserve(total);
  pool.modes.reserve(total);
  pool.ids.reserve(total);
  for (int g = 0; g < spec.n_generators; ++g) {
    std::vector<int> modes = spec.covered_modes[g];
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    const int k = static_cast<int>(modes.size());
    const int base = spec.samples_per_generator / k;
    const int extra = spec.samples_per_generator % k;
    int sample = 0;
    for (int idx = 0; idx < k; ++idx) {
      const Point2 c = grid.Centroid(modes[idx]);
      const int count = base + (idx < extra ? 1 : 0);
      for (int i = 0; i < count; ++i) {
        double dx = noise(rng);
        double dy = noise(rng);
        if (spec.jitter_std > 0.0) {
          dx += jitter(rng);
          dy += jitter(rng);
        }
        pool.points.push_back(Point2{c.x1 + dx, c.x2 + dy});
        pool.modes.push_back(modes[idx]);
        pool.ids.push_back(PoolId{g, sample++});
      }
    }
  }
  return pool;
}

GeneratorPoolSpec MakeModeCollapseSpec(const ModeCollapseSpec& spec,
                                       const GridMixtureSpec& grid,
                                       std::uint64_t seed) {
  grid.Validate();
  const int num_modes = grid.num_modes();
  if (spec.n_generators < 1) throw ContractError("n_generators must be >= 1");
  if (spec.modes_missed < 0 || spec.modes_missed >= num_modes) {
    throw ContractError("modes_missed must lie in [0, number of modes)");
  }
  Rng rng(seed);
  std::vector<int> all(num_modes);
  std::iota(all.begin(), all.end(), 0);

  auto pick_missing = [&](const std::vector<int>& candidates) {
    std::vector<int> shuffled = candidates;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.resize(std::min<std::size_t>(shuffled.size(), spec.modes_missed));
    return shuffled;
  };
  auto complement = [&](const std::vector<int>& missing) {
    std::vector<int> covered;
    for (int m : all) {
      if (std::find(missing.begin(), missing.end(), m) == missing.end()) {
        covered.push_back(m);
      }
    }
    return covered;
  };

  GeneratorPoolSpec out;
  out.n_generators = spec.n_generators;
  out.samples_per_generator = spec.samples_per_generator;
  out.jitter_std = spec.jitter_std;
  out.covered_modes.resize(spec.n_generators);

  const std::vector<int> last_missing = pick_missing(all);
  out.covered_modes.back() = complement(last_missing);
  for (int g = 0; g + 1 < spec.n_generators; ++g) {
    // The first generator avoids the last one's gap when the grid allows it.
    const bool disjoint = g == 0 && 2 * spec.modes_missed <= num_modes;
    const std::vector<int> missing =
        pick_missing(disjoint ? complement(last_missing) : all);
    out.covered_modes[g] = complement(missing);
  }
  return out;
}

}  // namespace pgb::toy
