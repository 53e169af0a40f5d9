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

#include "motivelog/analytics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

#include "motivelog/numerics.h"

namespace motivelog {
namespace {

void CheckGroups(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) {
    throw StatsError(StatsError::Code::kTooFewGroups,
                     "rank test needs at least two groups");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) {
      throw StatsError(StatsError::Code::kEmptyGroup,
                       "rank test group " + std::to_string(i) + " is empty");
    }
  }
}

struct PooledRanks {
  std::vector<double> mean_rank;  // per group
  double n = 0.0;
  double tie_sum = 0.0;
};

PooledRanks Rank(std::span<const std::vector<double>> groups) {
  std::vector<double> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const std::vector<double> ranks = numerics::MidRanks(pooled);
  PooledRanks out;
  out.n = static_cast<double>(pooled.size());
  out.tie_sum = numerics::TieSum(pooled);
  std::size_t offset = 0;
  for (const auto& g : groups) {
    // Ranks are multiples of 1/2, so this sum is exact.
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += ranks[offset + i];
    out.mean_rank.push_back(sum / static_cast<double>(g.size()));
    offset += g.size();
  }
  return out;
}

template <typename ValueFn>
GroupedStats GroupValues(std::span<const TextInputRecord> records, GroupBy by,
                         ValueFn value, std::vector<std::string> notes) {
  std::map<std::string, std::vector<double>> by_label;
  std::map<Motive, std::string> motive_labels;
  std::uint64_t ungrouped = 0;
  for (const auto& r : records) {
    const std::optional<double> v = value(r);
    if (!v) continue;
    std::optional<std::string> label = GroupLabel(r, by);
    if (!label) {
      ++ungrouped;
      continue;
    }
    if (by == GroupBy::kMotive) motive_labels.emplace(r.motive, *label);
    by_label[*label].push_back(*v);
  }
  if (ungrouped > 0) {
    notes.push_back(std::to_string(ungrouped) +
                    " records without an app category skipped");
  }
  GroupedStats out;
  out.notes = std::move(notes);
  if (by == GroupBy::kMotive) {
    for (const auto& [motive, label] : motive_labels) {
      out.groups.push_back(Summarize(label, by_label[label]));
    }
  } else {
    for (const auto& [label, values] : by_label) {
      out.groups.push_back(Summarize(label, values));
    }
  }
  return out;
}

std::vector<const TextInputRecord*> Select(
    std::span<const TextInputRecord> records, const Selection& selection,
    GroupBy by) {
  std::vector<const TextInputRecord*> out;
  for (const auto& r : records) {
    const std::optional<std::string> label = GroupLabel(r, by);
    if (label && std::find(selection.values.begin(), selection.values.end(),
                           *label) != selection.values.end()) {
      out.push_back(&r);
    }
  }
  return out;
}

ComparisonSide Describe(const std::vector<const TextInputRecord*>& selected,
                        const std::string& label) {
  std::vector<double> rates;
  std::vector<double> words;
  for (const TextInputRecord* r : selected) {
    words.push_back(static_cast<double>(r->total_words));
    if (r->total_words > 0) {
      rates.push_back(static_cast<double>(r->matched_words) /
                      static_cast<double>(r->total_words));
    }
  }
  return {Summarize(label, rates), Summarize(label, words)};
}

}  // namespace

GroupStats Summarize(std::string label, std::span<const double> values) {
  GroupStats s;
  s.label = std::move(label);
  s.n = values.size();
  if (values.empty()) return s;
  // Sorting first makes the result independent of input order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  s.mean = numerics::PairwiseSum(sorted) / n;
  if (sorted.size() > 1) {
    std::vector<double> sq(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double d = sorted[i] - s.mean;
      sq[i] = d * d;
    }
    s.sd = std::sqrt(numerics::PairwiseSum(sq) / (n - 1.0));
  }
  return s;
}

std::optional<std::string> GroupLabel(const TextInputRecord& r, GroupBy by) {
  if (by == GroupBy::kMotive) return std::string(MotiveName(r.motive));
  return r.app_category;
}

GroupedStats WordsPerInputStats(std::span<const TextInputRecord> records,
                                GroupBy by) {
  return GroupValues(
      records, by,
      [](const TextInputRecord& r) -> std::optional<double> {
        return static_cast<double>(r.total_words);
      },
      {});
}

GroupedStats MatchingRateStats(std::span<const TextInputRecord> records,
                               GroupBy by) {
  std::uint64_t zero = 0;
  for (const auto& r : records) zero += r.total_words == 0 ? 1 : 0;
  std::vector<std::string> notes;
  if (zero > 0) {
    notes.push_back(std::to_string(zero) +
                    " zero-word records excluded from matching rates");
  }
  return GroupValues(
      records, by,
      [](const TextInputRecord& r) -> std::optional<double> {
        if (r.total_words == 0) return std::nullopt;
        return static_cast<double>(r.matched_words) /
               static_cast<double>(r.total_words);
      },
      std::move(notes));
}

KruskalWallisResult KruskalWallis(
    std::span<const std::vector<double>> groups) {
  CheckGroups(groups);
  const PooledRanks ranks = Rank(groups);
  KruskalWallisResult out;
  out.df = static_cast<int>(groups.size()) - 1;
  const double n = ranks.n;
  const double correction = 1.0 - ranks.tie_sum / (n * n * n - n);
  if (correction <= 0.0) return out;  // every value identical
  const double grand = (n + 1.0) / 2.0;
  std::vector<double> terms;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double d = ranks.mean_rank[i] - grand;
    terms.push_back(static_cast<double>(groups[i].size()) * d * d);
  }
  out.h = std::max(0.0, 12.0 / (n * (n + 1.0)) *
                            numerics::PairwiseSum(terms) / correction);
  out.p = numerics::ChiSquareSurvival(out.h, out.df);
  return out;
}

std::vector<DunnComparison> DunnPosthoc(
    std::span<const std::vector<double>> groups) {
  CheckGroups(groups);
  const PooledRanks ranks = Rank(groups);
  const double n = ranks.n;
  const double variance =
      n * (n + 1.0) / 12.0 - ranks.tie_sum / (12.0 * (n - 1.0));
  const std::size_t k = groups.size();
  const double comparisons = static_cast<double>(k * (k - 1) / 2);
  std::vector<DunnComparison> out;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      DunnComparison c;
      c.a = a;
      c.b = b;
      const double scale =
          variance * (1.0 / static_cast<double>(groups[a].size()) +
                      1.0 / static_cast<double>(groups[b].size()));
      if (scale > 0.0) {
        c.z = (ranks.mean_rank[a] - ranks.mean_rank[b]) / std::sqrt(scale);
        c.p_raw = numerics::NormalTwoSided(c.z);
      }
      c.p_adjusted = std::min(1.0, c.p_raw * comparisons);
      out.push_back(c);
    }
  }
  return out;
}

KwDunnResult WordsPerInputTest(std::span<const TextInputRecord> records,
                               std::span<const Motive> motives,
                               std::vector<std::string>* notes) {
  std::map<Motive, std::vector<double>> values;
  for (const auto& r : records) {
    values[r.motive].push_back(static_cast<double>(r.total_words));
  }
  KwDunnResult out;
  std::vector<std::vector<double>> groups;
  for (Motive m : motives) {
    auto it = values.find(m);
    if (it == values.end()) {
      if (notes) {
        notes->push_back("motive " + std::string(MotiveName(m)) +
                         " has no records; skipped in rank test");
      }
      continue;
    }
    out.labels.emplace_back(MotiveName(m));
    groups.push_back(std::move(it->second));
  }
  out.kw = KruskalWallis(groups);
  out.pairwise = DunnPosthoc(groups);
  return out;
}

LongTailReport LongTail(std::span<const TextInputRecord> records,
                        std::size_t k) {
  std::uint64_t prompted = 0;
  for (const auto& r : records) prompted += r.has_prompt() ? 1 : 0;
  const std::vector<PromptFrequency> freqs = PromptFrequencies(records);
  return LongTail(freqs, prompted, k);
}

LongTailReport LongTail(std::span<const PromptFrequency> frequencies,
                        std::uint64_t prompted, std::size_t k) {
  if (k == 0) throw ValidationError("long-tail k must be at least 1");
  std::vector<PromptFrequency> sorted(frequencies.begin(), frequencies.end());
  const std::size_t take = std::min(k, sorted.size());
  std::partial_sort(sorted.begin(), sorted.begin() + take, sorted.end(),
                    [](const PromptFrequency& a, const PromptFrequency& b) {
                      return a.count != b.count ? a.count > b.count
                                                : a.prompt < b.prompt;
                    });
  LongTailReport out;
  out.top.assign(sorted.begin(), sorted.begin() + take);
  for (const auto& pf : out.top) out.covered += pf.count;
  out.prompted = prompted;
  out.share = prompted == 0 ? 0.0
                            : static_cast<double>(out.covered) /
                                  static_cast<double>(prompted);
  return out;
}

ComparisonTable MotiveVsAppCategory(
    std::span<const TextInputRecord> records,
    std::span<const std::pair<Selection, Selection>> pairs) {
  ComparisonTable out;
  for (const auto& [motive_sel, app_sel] : pairs) {
    const auto by_motive = Select(records, motive_sel, GroupBy::kMotive);
    const auto by_app = Select(records, app_sel, GroupBy::kAppCategory);
    if (by_motive.empty() || by_app.empty()) {
      out.flagged.push_back(motive_sel.label + " vs " + app_sel.label +
                            ": empty selection (" +
                            (by_motive.empty() ? motive_sel.label
                                               : app_sel.label) +
                            ")");
      continue;
    }
    out.rows.push_back({motive_sel.label, app_sel.label,
                        Describe(by_motive, motive_sel.label),
                        Describe(by_app, app_sel.label)});
  }
  return out;
}

std::vector<std::pair<Selection, Selection>> DefaultComparisonPairs() {
  return {
      {{"Messaging", {"Messaging"}}, {"Communication", {"Communication"}}},
      {{"Posting", {"Posting"}}, {"Social Media", {"Social Media"}}},
      {{"Commenting", {"Commenting"}}, {"Social Media", {"Social Media"}}},
      {{"Search", {"Search"}}, {"System", {"System"}}},
  };
}

}  // namespace motivelog
