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

#include <algorithm>
#include <cmath>

namespace motivelog {

CountMatrix CountMatrix::FromRows(
    const std::vector<std::vector<std::uint64_t>>& rows) {
  CountMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ValidationError("confusion matrix must be square");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::uint64_t CountMatrix::total() const {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::uint64_t CountMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < size_; ++i) t += at(i, i);
  return t;
}

std::uint64_t CountMatrix::row_sum(std::size_t row) const {
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < size_; ++j) t += at(row, j);
  return t;
}

std::uint64_t CountMatrix::col_sum(std::size_t col) const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < size_; ++i) t += at(i, col);
  return t;
}

CountMatrix CountMatrix::transposed() const {
  CountMatrix t(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

KappaResult KappaFromAgreement(double po, double pe, std::uint64_t n) {
  if (n == 0) {
    throw AgreementError(AgreementError::Code::kTooFewItems,
                         "kappa needs at least one item");
  }
  if (pe >= 1.0) {
    throw AgreementError(AgreementError::Code::kDegenerateMarginals,
                         "chance agreement is 1; kappa undefined");
  }
  KappaResult r;
  r.po = po;
  r.pe = pe;
  r.n = n;
  r.kappa = (po - pe) / (1.0 - pe);
  r.se = std::sqrt(po * (1.0 - po) /
                   (static_cast<double>(n) * (1.0 - pe) * (1.0 - pe)));
  r.ci_low = std::clamp(r.kappa - 1.96 * r.se, -1.0, 1.0);
  r.ci_high = std::clamp(r.kappa + 1.96 * r.se, -1.0, 1.0);
  return r;
}

KappaResult CohenKappa(const CountMatrix& matrix) {
  const std::uint64_t total = matrix.total();
  if (total < 2) {
    throw AgreementError(AgreementError::Code::kTooFewItems,
                         "kappa needs at least two coded items");
  }
  const double n = static_cast<double>(total);
  const double po = static_cast<double>(matrix.trace()) / n;
  double pe = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    pe += static_cast<double>(matrix.row_sum(i)) *
          static_cast<double>(matrix.col_sum(i));
  }
  pe /= n * n;
  // Both raters used one identical category for every item.
  bool degenerate = false;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix.row_sum(i) == total && matrix.col_sum(i) == total) {
      degenerate = true;
    }
  }
  if (degenerate) {
    throw AgreementError(AgreementError::Code::kDegenerateMarginals,
                         "both raters used a single identical category");
  }
  return KappaFromAgreement(po, pe, total);
}

std::vector<CategoryKappa> PerCategoryKappa(const CountMatrix& matrix) {
  std::vector<CategoryKappa> out;
  const std::uint64_t total = matrix.total();
  for (std::size_t c = 0; c < matrix.size(); ++c) {
    CategoryKappa ck;
    ck.category = c;
    const std::uint64_t both = matrix.at(c, c);
    const std::uint64_t a_only = matrix.row_sum(c) - both;
    const std::uint64_t b_only = matrix.col_sum(c) - both;
    if (matrix.row_sum(c) == 0 && matrix.col_sum(c) == 0) {
      ck.note = "category used by neither rater";
      out.push_back(std::move(ck));
      continue;
    }
    const std::uint64_t neither = total - both - a_only - b_only;
    const CountMatrix binary = CountMatrix::FromRows({{both, a_only},
                                                      {b_only, neither}});
    try {
      ck.result = CohenKappa(binary);
    } catch (const AgreementError& e) {
      ck.note = e.what();
    }
    out.push_back(std::move(ck));
  }
  return out;
}

std::size_t CodedMotiveIndex(Motive m) {
  for (std::size_t i = 0; i < kCodedMotives.size(); ++i) {
    if (kCodedMotives[i] == m) return i;
  }
  throw ValidationError("rater code must be one of the seven coded motives, "
                        "got " +
                        std::string(MotiveName(m)));
}

CountMatrix ConfusionMatrix(const RaterCodes& a, const RaterCodes& b) {
  CountMatrix m(kCodedMotives.size());
  bool any = false;
  for (const auto& [prompt, motive_a] : a) {
    auto it = b.find(prompt);
    if (it == b.end()) continue;
    ++m.at(CodedMotiveIndex(motive_a), CodedMotiveIndex(it->second));
    any = true;
  }
  if (!any) {
    throw AgreementError(AgreementError::Code::kNoCommonItems,
                         "raters share no coded prompts");
  }
  return m;
}

std::vector<Disagreement> Disagreements(
    const RaterCodes& a, const RaterCodes& b,
    const std::map<std::string, std::uint64_t>& frequencies) {
  std::vector<std::pair<std::uint64_t, Disagreement>> found;
  for (const auto& [prompt, motive_a] : a) {
    auto it = b.find(prompt);
    if (it == b.end() || it->second == motive_a) continue;
    auto f = frequencies.find(prompt);
    found.push_back({f == frequencies.end() ? 0 : f->second,
                     Disagreement{prompt, motive_a, it->second}});
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Disagreement> out;
  out.reserve(found.size());
  for (auto& [count, d] : found) out.push_back(std::move(d));
  return out;
}

}  // namespace motivelog
