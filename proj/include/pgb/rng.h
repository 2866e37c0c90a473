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

#ifndef PGB_RNG_H_
#define PGB_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace pgb {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// 64-bit FNV-1a hash of a byte string.
std::uint64_t Fnv1a64(std::string_view bytes);

// Child seed for a named stage: splitmix64(master ^ fnv1a64(label)).
// Every stage of an experiment derives its stream this way from one master
// seed, so adding a stage never perturbs the streams of the others.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view label);

}  // namespace pgb

#endif  // PGB_RNG_H_
