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

#ifndef PGB_GAME_H_
#define PGB_GAME_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "pgb/distribution.h"
#include "pgb/score_matrix.h"

namespace pgb {

// U(b, D_j) = m_j + (1 - D_j(b)): the distinguisher's accuracy when the real
// side is scored by D_j and pool element b is presented as fake. In [0, 2].
// Throws RangeError on out-of-range indices.
double PayoffPure(const ScoreMatrix& sm, std::size_t b, std::size_t j);

// Bilinear extension U(phi, psi). Throws ShapeError on dimension mismatch.
double PayoffMixed(const ScoreMatrix& sm, const SyntheticDistribution& phi,
                   const MixtureDiscriminator& psi);

// U(phi, D_j) for every j, summed over the pool in index order.
std::vector<double> PayoffAgainstEachDiscriminator(
    const ScoreMatrix& sm, const SyntheticDistribution& phi);

// U(b, psi) for every pool element b.
std::vector<double> PayoffPerSample(const ScoreMatrix& sm,
                                    const MixtureDiscriminator& psi);

// How far a strategy pair is from equilibrium on each side:
//   distinguisher = max_j U(phi, D_j) - U(phi, psi)
//   synthetic     = U(phi, psi) - min_b U(b, psi)
// The pair is a max()-approximate equilibrium.
struct EquilibriumGaps {
  double distinguisher = 0.0;
  double synthetic = 0.0;
  double max() const {
    return distinguisher > synthetic ? distinguisher : synthetic;
  }
};

EquilibriumGaps ComputeEquilibriumGaps(const ScoreMatrix& sm,
                                       const SyntheticDistribution& phi_bar,
                                       const MixtureDiscriminator& d_bar);

// Size limits for the exact solver; it is a test-scale reference.
inline constexpr std::size_t kOracleMaxDiscriminators = 16;
inline constexpr std::size_t kOracleMaxPool = 256;

struct ExactGameSolution {
  double value;
  SyntheticDistribution phi;
  MixtureDiscriminator psi;
};

// Exact minimax solution by linear programming. Throws CapacityError above
// kOracleMaxDiscriminators x kOracleMaxPool.
ExactGameSolution SolveGameExactly(const ScoreMatrix& sm);

// The game value V = min_phi max_j U(phi, D_j) = max_psi min_b U(b, psi).
double GameValueOracle(const ScoreMatrix& sm);

struct CoverageCheckParams {
  double lipschitz_bound = 0.0;  // L
  double coverage_radius = 0.0;  // gamma
  bool includes_half_discriminator = false;
};

// Interval [1, 1 + L * gamma] that must contain V when the discriminator set
// holds the constant-1/2 scorer, every scorer is L-Lipschitz, and every real
// point has a pool element within gamma. At test scale the exact value is
// computed and compared against the interval (tolerance kCoverageSlack).
struct CoverageCertificate {
  double lower = 1.0;
  double upper = 1.0;
  std::optional<double> game_value;
  std::optional<bool> holds;
};

inline constexpr double kCoverageSlack = 1e-6;

CoverageCertificate CheckCoverage(const ScoreMatrix& sm,
                                  const CoverageCheckParams& params);

}  // namespace pgb

#endif  // PGB_GAME_H_
