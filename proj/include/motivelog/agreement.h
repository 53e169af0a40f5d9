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

#ifndef MOTIVELOG_AGREEMENT_H_
#define MOTIVELOG_AGREEMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motivelog/core_model.h"

namespace motivelog {

class AgreementError : public Error {
 public:
  enum class Code { kNoCommonItems, kDegenerateMarginals, kTooFewItems };
  AgreementError(Code code, const std::string& what)
      : Error(Kind::kValidation, what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Square matrix of counts; rows are rater A, columns rater B.
class CountMatrix {
 public:
  explicit CountMatrix(std::size_t size = 0)
      : size_(size), counts_(size * size, 0) {}
  // Throws ValidationError unless `rows` is square.
  static CountMatrix FromRows(
      const std::vector<std::vector<std::uint64_t>>& rows);

  std::size_t size() const { return size_; }
  std::uint64_t& at(std::size_t row, std::size_t col) {
    return counts_[row * size_ + col];
  }
  std::uint64_t at(std::size_t row, std::size_t col) const {
    return counts_[row * size_ + col];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t row) const;
  std::uint64_t col_sum(std::size_t col) const;
  CountMatrix transposed() const;

  bool operator==(const CountMatrix&) const = default;

 private:
  std::size_t size_;
  std::vector<std::uint64_t> counts_;
};

struct KappaResult {
  double kappa = 0.0;
  double po = 0.0;
  double pe = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n = 0;
};

// Cohen's kappa from observed and chance agreement, with the asymptotic
// standard error sqrt(po (1 - po) / (n (1 - pe)^2)) and a 1.96-sigma
// interval clamped to [-1, 1].
KappaResult KappaFromAgreement(double po, double pe, std::uint64_t n);

// Throws AgreementError for fewer than two items or pe == 1.
KappaResult CohenKappa(const CountMatrix& matrix);

struct CategoryKappa {
  std::size_t category = 0;
  std::optional<KappaResult> result;  // absent when skipped
  std::string note;
};

// One-vs-rest kappa for every category of `matrix`.
std::vector<CategoryKappa> PerCategoryKappa(const CountMatrix& matrix);

// Normalized prompt -> coded motive, for one rater.
using RaterCodes = std::map<std::string, Motive>;

// 7x7 matrix indexed by position in kCodedMotives over the prompts both
// raters coded. Throws AgreementError(kNoCommonItems) when there are none.
CountMatrix ConfusionMatrix(const RaterCodes& a, const RaterCodes& b);

std::size_t CodedMotiveIndex(Motive m);

struct Disagreement {
  std::string prompt;
  Motive motive_a;
  Motive motive_b;

  bool operator==(const Disagreement&) const = default;
};

// Common prompts coded differently, most frequent first (ties by prompt).
// Prompts missing from `frequencies` count as zero.
std::vector<Disagreement> Disagreements(
    const RaterCodes& a, const RaterCodes& b,
    const std::map<std::string, std::uint64_t>& frequencies = {});

}  // namespace motivelog

#endif  // MOTIVELOG_AGREEMENT_H_
