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

#ifndef MOTIVELOG_NUMERICS_H_
#define MOTIVELOG_NUMERICS_H_

#include <span>
#include <vector>

namespace motivelog::numerics {

// Pairwise (cascade) summation. The result depends only on the order of
// `values`, not on how work is partitioned.
double PairwiseSum(std::span<const double> values);

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x) for a > 0,
// x >= 0: power series below x = a + 1, Lentz continued fraction above.
double RegularizedGammaP(double a, double x);
double RegularizedGammaQ(double a, double x);

// Survival function of the chi-square distribution.
double ChiSquareSurvival(double x, double df);

// Upper tail 1 - Phi(z) and the two-sided tail 2 * (1 - Phi(|z|)).
double NormalSurvival(double z);
double NormalTwoSided(double z);

// Midranks (1-based) of `values`; tied values share their average rank.
std::vector<double> MidRanks(std::span<const double> values);

// Sum over tie groups of (t^3 - t).
double TieSum(std::span<const double> values);

}  // namespace motivelog::numerics

#endif  // MOTIVELOG_NUMERICS_H_
