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

#include "motivelog/agreement.h"

#include <cmath>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace motivelog {
namespace {

using ::testing::ElementsAre;

TEST(CohenKappaTest, TwoByTwo) {
  const KappaResult k = CohenKappa(CountMatrix::FromRows({{20, 5}, {10, 15}}));
  EXPECT_NEAR(k.po, 0.7, 1e-12);
  EXPECT_NEAR(k.pe, 0.5, 1e-12);
  EXPECT_NEAR(k.kappa, 0.4, 1e-9);
  EXPECT_EQ(k.n, 50u);
  EXPECT_NEAR(k.se, std::sqrt(0.7 * 0.3 / (50 * 0.25)), 1e-12);
}

TEST(CohenKappaTest, PerfectDiagonal) {
  const KappaResult k = CohenKappa(CountMatrix::FromRows({{3, 0, 0}, {0, 4, 0}, {0, 0, 5}}));
  EXPECT_EQ(k.kappa, 1.0);
  EXPECT_EQ(k.ci_low, 1.0);
  EXPECT_EQ(k.ci_high, 1.0);
}

TEST(CohenKappaTest, FromAgreement) {
  const KappaResult k = KappaFromAgreement(0.8973, 0.3941, 438);
  EXPECT_NEAR(k.kappa, (0.8973 - 0.3941) / (1 - 0.3941), 1e-15);
  EXPECT_NEAR(k.kappa, 0.83, 0.005);
  EXPECT_NEAR(k.ci_low, 0.78, 0.005);
  EXPECT_NEAR(k.ci_high, 0.88, 0.005);
}

TEST(CohenKappaTest, Errors) {
  try {
    CohenKappa(CountMatrix::FromRows({{5, 0}, {0, 0}}));
    FAIL();
  } catch (const AgreementError& e) {
    EXPECT_EQ(e.code(), AgreementError::Code::kDegenerateMarginals);
  }
  try {
    CohenKappa(CountMatrix::FromRows({{1, 0}, {0, 0}}));
    FAIL();
  } catch (const AgreementError& e) {
    EXPECT_EQ(e.code(), AgreementError::Code::kTooFewItems);
  }
  EXPECT_THROW(CountMatrix::FromRows({{1, 2}, {3}}), Error);
}

TEST(CohenKappaTest, SymmetricUnderTranspose) {
  const CountMatrix m = CountMatrix::FromRows({{7, 2, 1}, {3, 9, 0}, {1, 4, 6}});
  EXPECT_NEAR(CohenKappa(m).kappa, CohenKappa(m.transposed()).kappa, 1e-15);
}

TEST(PerCategoryKappaTest, TwoCategoriesEqualOverall) {
  const CountMatrix m = CountMatrix::FromRows({{20, 5}, {10, 15}});
  const auto per = PerCategoryKappa(m);
  ASSERT_EQ(per.size(), 2u);
  ASSERT_TRUE(per[0].result.has_value());
  EXPECT_NEAR(per[0].result->kappa, 0.4, 1e-12);
  EXPECT_NEAR(per[1].result->kappa, 0.4, 1e-12);
}

TEST(PerCategoryKappaTest, UnusedCategoryIsSkipped) {
  const CountMatrix m = CountMatrix::FromRows({{5, 1, 0}, {2, 6, 0}, {0, 0, 0}});
  const auto per = PerCategoryKappa(m);
  EXPECT_FALSE(per[2].result.has_value());
  EXPECT_FALSE(per[2].note.empty());
}

TEST(ConfusionMatrixTest, CommonPromptsOnly) {
  RaterCodes a{{"p1", Motive::kMessaging}, {"p2", Motive::kSearch}, {"p3", Motive::kOther}};
  RaterCodes b{{"p1", Motive::kMessaging}, {"p2", Motive::kDataInput}, {"p4", Motive::kOther}};
  const CountMatrix m = ConfusionMatrix(a, b);
  EXPECT_EQ(m.size(), 7u);
  EXPECT_EQ(m.total(), 2u);
  EXPECT_EQ(m.at(CodedMotiveIndex(Motive::kMessaging), CodedMotiveIndex(Motive::kMessaging)), 1u);
  EXPECT_EQ(m.at(CodedMotiveIndex(Motive::kSearch), CodedMotiveIndex(Motive::kDataInput)), 1u);
  try {
    ConfusionMatrix({{"x", Motive::kOther}}, {{"y", Motive::kOther}});
    FAIL();
  } catch (const AgreementError& e) {
    EXPECT_EQ(e.code(), AgreementError::Code::kNoCommonItems);
  }
}

TEST(DisagreementsTest, OrderedByFrequency) {
  RaterCodes a{{"x", Motive::kMessaging}, {"y", Motive::kSearch}, {"z", Motive::kOther}};
  RaterCodes b{{"x", Motive::kPosting}, {"y", Motive::kDataInput}, {"z", Motive::kOther}};
  EXPECT_THAT(Disagreements(a, b, {{"y", 9}, {"x", 2}}),
              ElementsAre(Disagreement{"y", Motive::kSearch, Motive::kDataInput},
                          Disagreement{"x", Motive::kMessaging, Motive::kPosting}));
}

}  // namespace
}  // namespace motivelog
