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

#ifndef PGB_CLI_SVG_H_
#define PGB_CLI_SVG_H_

#include <span>
#include <string>
#include <vector>

#include "pgb/toybench/grid.h"

namespace pgb::cli {

// Real points in grey under a method's points in colour. Weighted samples
// set each point's opacity from its weight relative to the heaviest one.
// At most `max_points` of each set are drawn (evenly strided).
std::string ScatterSvg(const std::string& title,
                       std::span<const toy::Point2> real,
                       std::span<const toy::Point2> sample,
                       std::span<const double> weights,
                       std::size_t max_points = 5000);

struct BarSeries {
  std::string name;            // legend entry
  std::vector<double> values;  // one per category
};

// Grouped bars: one group per category, one bar per series.
std::string BarChartSvg(const std::string& title,
                        const std::vector<std::string>& categories,
                        const std::vector<BarSeries>& series);

}  // namespace pgb::cli

#endif  // PGB_CLI_SVG_H_
