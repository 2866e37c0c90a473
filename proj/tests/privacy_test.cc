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


#include "pgb/privacy.h"

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "pgb/errors.h"
#include "pgb/rng.h"

namespace pgb {
namespace {

using HighPrecision = boost::multiprecision::cpp_dec_float_50;

double ReferenceComposition(double eps0, int rounds, double delta) {
  const HighPrecision e(eps0);
  const HighPrecision t(rounds);
  const HighPrecision d(delta);
  return static_cast<double>(sqrt(2 * log(1 / d) * t) * e +
                             t * e * (exp(e) - 1));
}

TEST(CompositionTest, MatchesHighPrecisionReference) {
  for (double eps0 : {1e-4, 3e-3, 0.05, 0.4, 1.0}) {
    for (int rounds : {1, 7, 500, 10000}) {
      for (double delta : {1e-9, 1e-5, 0.01}) {
        const double ref = ReferenceComposition(eps0, rounds, delta);
        EXPECT_NEAR(AdvancedCompositionEpsilon(eps0, rounds, delta) / ref, 1.0,
                    1e-13);
      }
    }
  }
}

TEST(CompositionTest, MonotoneInEachArgument) {
  EXPECT_LT(AdvancedCompositionEpsilon(0.01, 100, 1e-5),
            AdvancedCompositionEpsilon(0.02, 100, 1e-5));
  EXPECT_LT(AdvancedCompositionEpsilon(0.01, 100, 1e-5),
            AdvancedCompositionEpsilon(0.01, 101, 1e-5));
  EXPECT_LT(AdvancedCompositionEpsilon(0.01, 100, 1e-3),
            AdvancedCompositionEpsilon(0.01, 100, 1e-5));
}

TEST(CompositionTest, StagesAdd) {
  const double eps0 = CalibrateRounds(0.1, 1e-5, 1000);
  const PrivacyAccount acct{eps0, 1000, 1e-5, 0.9, 1e-5};
  const PrivacyTotals totals = ComposeStages(acct);
  EXPECT_NEAR(totals.eps, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(totals.delta, 2e-5);
  const AccountingReport r = MakeAccountingReport(acct);
  EXPECT_NEAR(r.eps2_boost, 0.1, 1e-9);
  EXPECT_DOUBLE_EQ(r.eps_total, totals.eps);
  EXPECT_EQ(r.rounds, 1000);
}

TEST(CompositionTest, ValidatesArguments) {
  EXPECT_THROW(AdvancedCompositionEpsilon(-1.0, 10, 1e-5), ContractError);
  EXPECT_THROW(AdvancedCompositionEpsilon(0.1, 0, 1e-5), ContractError);
  EXPECT_THROW(AdvancedCompositionEpsilon(0.1, 10, 0.0), ContractError);
  EXPECT_THROW(AdvancedCompositionEpsilon(0.1, 10, 1.0), ContractError);
  EXPECT_THROW((PrivacyAccount{0.0, 10, 1e-5, 0, 0}.Validate()), ContractError);
  EXPECT_THROW((PrivacyAccount{0.1, 10, 0.0, 0, 0}.Validate()), ContractError);
  EXPECT_THROW((PrivacyAccount{0.1, 10, 1e-5, -1, 0}.Validate()),
               ContractError);
}

TEST(CalibrationTest, RoundTrip) {
  for (double target : {0.01, 0.1, 1.0, 5.0}) {
    for (int rounds : {1, 100, 5000}) {
      const double eps0 = CalibrateRounds(target, 1e-5, rounds);
      EXPECT_NEAR(AdvancedCompositionEpsilon(eps0, rounds, 1e-5), target, 1e-9);
      EXPECT_LE(AdvancedCompositionEpsilon(eps0, rounds, 1e-5), target);
    }
  }
}

TEST(CalibrationTest, UnreachableTargetThrows) {
  EXPECT_THROW(CalibrateRounds(1e6, 1e-5, 1), CalibrationError);
  EXPECT_THROW(CalibrateRounds(0.0, 1e-5, 1), ContractError);
  EXPECT_THROW(CalibrateRounds(0.1, 0.0, 1), ContractError);
}

TEST(ExpMechTest, ProbabilitiesMatchClosedForm) {
  const QualityScores q{{0.2, 0.5, 0.9}, 0.01};
  const auto p = ExpMechProbabilities(q, 0.1);
  std::vector<double> w;
  double z = 0.0;
  for (double v : q.values) {
    w.push_back(std::exp(0.1 * v / 0.02));
    z += w.back();
  }
  for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(p[j], w[j] / z, 1e-15);
}

TEST(ExpMechTest, StableForHugeExponents) {
  const QualityScores q{{1000.0, 999.0}, 1e-6};
  const auto p = ExpMechProbabilities(q, 1.0);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
}

TEST(ExpMechTest, EqualScoresAreUniform) {
  const auto p = ExpMechProbabilities({{0.4, 0.4, 0.4, 0.4}, 0.1}, 2.0);
  for (double v : p) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(ExpMechTest, SelectionIsDeterministicGivenSeed) {
  const QualityScores q{{0.1, 0.2, 0.3, 0.4}, 0.05};
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(ExpMechSelect(q, 0.3, a), ExpMechSelect(q, 0.3, b));
  }
}

TEST(ExpMechTest, PrivacyRatioBound) {
  // Neighbouring score vectors differ by at most the sensitivity.
  const double eps = 0.7;
  const QualityScores q{{0.3, 0.6, 0.1}, 0.1};
  QualityScores q2 = q;
  q2.values = {0.4, 0.5, 0.2};
  const auto p = ExpMechProbabilities(q, eps);
  const auto p2 = ExpMechProbabilities(q2, eps);
  for (std::size_t j = 0; j < p.size(); ++j) {
    EXPECT_LE(std::abs(std::log(p[j] / p2[j])), eps + 1e-12);
  }
}

TEST(ExpMechTest, Contracts) {
  Rng rng(1);
  EXPECT_THROW(ExpMechProbabilities({{}, 1.0}, 1.0), ContractError);
  EXPECT_THROW(ExpMechProbabilities({{1.0}, 0.0}, 1.0), ContractError);
  EXPECT_THROW(ExpMechProbabilities({{1.0}, 1.0}, 0.0), ContractError);
  EXPECT_THROW(ExpMechSelect({{NAN}, 1.0}, 1.0, rng), ContractError);
}

}  // namespace
}  // namespace pgb
