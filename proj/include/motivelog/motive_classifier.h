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

#ifndef MOTIVELOG_MOTIVE_CLASSIFIER_H_
#define MOTIVELOG_MOTIVE_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motivelog/core_model.h"

namespace motivelog {

struct RedactedPrompt {
  std::string prompt_hash;  // sha256 of the normalized prompt
  std::uint64_t participants = 0;
  std::uint64_t records = 0;

  bool operator==(const RedactedPrompt&) const = default;
};

struct RedactionReport {
  std::vector<RedactedPrompt> redacted;  // ordered by prompt_hash
  std::uint64_t redacted_records = 0;
};

// Replaces every prompt seen with fewer than two distinct participants by
// kRedactedPrompt, in place. Records already redacted are left alone.
RedactionReport PrefilterSingleParticipant(
    std::vector<TextInputRecord>& records);

// Absent -> NoPrompt; REDACTED -> Unlabeled; exact mapping hit; first keyword
// rule; otherwise Unlabeled.
Motive Classify(const std::optional<std::string>& prompt,
                const MotiveMapping& mapping, const KeywordRuleSet& rules);

void ClassifyRecords(std::span<TextInputRecord> records,
                     const MotiveMapping& mapping,
                     const KeywordRuleSet& rules);

struct PromptFrequency {
  std::string prompt;
  std::uint64_t count = 0;

  bool operator==(const PromptFrequency&) const = default;
};

// Distinct prompts of non-redacted records, most frequent first, ties by
// prompt text.
std::vector<PromptFrequency> PromptFrequencies(
    std::span<const TextInputRecord> records);

struct AutoCodeResult {
  MotiveMapping mapping;                 // AutoKeyword entries
  std::vector<PromptFrequency> residual;  // unmatched, above the cutoff
  std::uint64_t below_cutoff = 0;         // unmatched prompts not queued
  // Matched prompts that contain stems of more than one motive; the first
  // rule decided them.
  std::vector<std::string> multi_motive;
};

// Keyword-stem coding of distinct prompts. An unmatched prompt is queued for
// manual coding when count / total_texts > cutoff_fraction.
AutoCodeResult AutoCodeCorpus(std::span<const PromptFrequency> prompts,
                              const KeywordRuleSet& rules,
                              std::uint64_t total_texts,
                              double cutoff_fraction = 0.0);

struct CoverageReport {
  std::uint64_t records = 0;
  std::uint64_t prompted = 0;
  std::uint64_t labeled = 0;
  double prompt_rate = 0.0;         // prompted / records
  double label_of_prompted = 0.0;   // labeled / prompted
  double label_overall = 0.0;       // labeled / records
  std::map<Motive, std::uint64_t> labeled_counts;
  std::map<Motive, double> labeled_shares;  // among labeled records
};

CoverageReport Coverage(std::span<const TextInputRecord> records);

}  // namespace motivelog

#endif  // MOTIVELOG_MOTIVE_CLASSIFIER_H_
