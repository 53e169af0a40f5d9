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

#ifndef MOTIVELOG_ANALYTICS_H_
#define MOTIVELOG_ANALYTICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motivelog/core_model.h"
#include "motivelog/motive_classifier.h"

namespace motivelog {

class StatsError : public Error {
 public:
  enum class Code { kTooFewGroups, kEmptyGroup };
  StatsError(Code code, const std::string& what)
      : Error(Kind::kValidation, what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

enum class GroupBy { kMotive, kAppCategory };

struct GroupStats {
  std::string label;
  std::uint64_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n - 1); 0 for a single observation
};

struct GroupedStats {
  std::vector<GroupStats> groups;
  std::vector<std::string> notes;  // audit trail for skipped data
};

// Mean and sample standard deviation using pairwise summation.
GroupStats Summarize(std::string label, std::span<const double> values);

// Group label of a record; nothing when it has no app category.
std::optional<std::string> GroupLabel(const TextInputRecord& r, GroupBy by);

// total_words per group. Motive groups follow the enumeration order, app
// categories sort by name.
GroupedStats WordsPerInputStats(std::span<const TextInputRecord> records,
                                GroupBy by);

// Per-record matched_words / total_words, averaged per group. Records with
// zero words are excluded and counted in the notes.
GroupedStats MatchingRateStats(std::span<const TextInputRecord> records,
                               GroupBy by);

struct KruskalWallisResult {
  double h = 0.0;
  int df = 0;
  double p = 1.0;
};

// Kruskal-Wallis H with midranks and tie correction; p from the chi-square
// survival function. Throws StatsError for < 2 groups or an empty group.
KruskalWallisResult KruskalWallis(
    std::span<const std::vector<double>> groups);

struct DunnComparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double z = 0.0;
  double p_raw = 1.0;
  double p_adjusted = 1.0;  // Bonferroni over k(k-1)/2 comparisons
};

std::vector<DunnComparison> DunnPosthoc(
    std::span<const std::vector<double>> groups);

struct KwDunnResult {
  std::vector<std::string> labels;
  KruskalWallisResult kw;
  std::vector<DunnComparison> pairwise;
};

// Kruskal-Wallis + Dunn on total_words across the given motives; motives
// with no records are skipped with a note.
KwDunnResult WordsPerInputTest(std::span<const TextInputRecord> records,
                               std::span<const Motive> motives,
                               std::vector<std::string>* notes = nullptr);

struct LongTailReport {
  std::vector<PromptFrequency> top;
  std::uint64_t covered = 0;   // records carrying a top-k prompt
  std::uint64_t prompted = 0;  // records carrying any prompt
  double share = 0.0;
};

// Top-k prompts by frequency (ties lexicographic) and their share of
// prompted records. Redacted records count as prompted but are never ranked.
LongTailReport LongTail(std::span<const TextInputRecord> records,
                        std::size_t k);
LongTailReport LongTail(std::span<const PromptFrequency> frequencies,
                        std::uint64_t prompted, std::size_t k);

struct Selection {
  std::string label;
  std::vector<std::string> values;  // motive names or app category names
};

struct ComparisonSide {
  GroupStats matching_rate;
  GroupStats words;
};

struct ComparisonRow {
  std::string motive_label;
  std::string app_label;
  ComparisonSide motive_side;
  ComparisonSide app_side;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> flagged;  // pairs with an empty selection
};

// Side-by-side matching rate and words per input for record selections by
// motive and by app category.
ComparisonTable MotiveVsAppCategory(
    std::span<const TextInputRecord> records,
    std::span<const std::pair<Selection, Selection>> pairs);

// The selection pairs compared in the field study: Messaging vs
// Communication, Posting and Commenting vs Social Media, Search vs System.
std::vector<std::pair<Selection, Selection>> DefaultComparisonPairs();

}  // namespace motivelog

#endif  // MOTIVELOG_ANALYTICS_H_
