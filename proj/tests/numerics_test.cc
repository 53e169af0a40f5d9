/* Copyright 2026 The motivelog Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "motivelog/numerics.h"

#include <cmath>
#include <random>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace motivelog::numerics {
namespace {

using ::testing::ElementsAre;

TEST(PairwiseSumTest, MatchesExactSumOfSmallIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(PairwiseSum(v), 500500.0);
  EXPECT_EQ(PairwiseSum({}), 0.0);
}

TEST(PairwiseSumTest, AccurateOnIllConditionedInput) {
  std::vector<double> v(1 << 20, 0.1);
  EXPECT_NEAR(PairwiseSum(v), 0.1 * (1 << 20), 1e-6);
}

TEST(IncompleteGammaTest, MatchesBoostOracle) {
  for (double a : {0.5, 1.0, 2.5, 5.0, 17.0, 60.0, 250.0}) {
    for (double x : {0.0, 1e-3, 0.3, 1.0, 4.0, 9.5, 30.0, 80.0, 300.0}) {
      const double q = boost::math::gamma_q(a, x);
      const double p = boost::math::gamma_p(a, x);
      EXPECT_NEAR(RegularizedGammaQ(a, x), q, 1e-12) << "a=" << a << " x=" << x;
      EXPECT_NEAR(RegularizedGammaP(a, x), p, 1e-12) << "a=" << a << " x=" << x;
    }
  }
}

TEST(ChiSquareSurvivalTest, MatchesBoostOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(0.0, 60.0);
  for (int i = 0; i < 500; ++i) {
    const double df = 1 + static_cast<int>(rng() % 20);
    const double x = xs(rng);
    ASSERT_NEAR(ChiSquareSurvival(x, df), boost::math::gamma_q(df / 2, x / 2), 1e-10);
  }
  EXPECT_NEAR(ChiSquareSurvival(3.841458820694124, 1), 0.05, 1e-12);
}

TEST(NormalTest, MatchesBoostOracle) {
  for (double z = -8.0; z <= 8.0; z += 0.37) {
    const double upper = 0.5 * boost::math::erfc(z / std::sqrt(2.0));
    EXPECT_NEAR(NormalSurvival(z), upper, 1e-15);
    EXPECT_NEAR(NormalTwoSided(z), 2 * 0.5 * boost::math::erfc(std::fabs(z) / std::sqrt(2.0)),
                1e-15);
  }
  EXPECT_NEAR(NormalTwoSided(1.959963984540054), 0.05, 1e-14);
}

TEST(MidRanksTest, TiesShareAverage) {
  const std::vector<double> v = {3, 1, 3, 2, 3};
  EXPECT_THAT(MidRanks(v), ElementsAre(4, 1, 4, 2, 4));
  EXPECT_EQ(TieSum(v), 24.0);
}

TEST(MidRanksTest, MatchesCountingOracle) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> v(1 + rng() % 30);
    for (auto& x : v) x = static_cast<double>(rng() % 6);
    const std::vector<double> ranks = MidRanks(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double y : v) {
        less += y < v[i];
        equal += y == v[i];
      }
      ASSERT_DOUBLE_EQ(ranks[i], less + (equal + 1) / 2);
    }
  }
}

}  // namespace
}  // namespace motivelog::numerics
