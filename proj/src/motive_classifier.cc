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

#include "motivelog/motive_classifier.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "motivelog/hashing.h"

namespace motivelog {

RedactionReport PrefilterSingleParticipant(
    std::vector<TextInputRecord>& records) {
  struct Usage {
    std::set<std::string_view> participants;
    std::uint64_t records = 0;
  };
  std::unordered_map<std::string, Usage> usage;
  for (const auto& r : records) {
    if (!r.has_prompt() || r.is_redacted()) continue;
    Usage& u = usage[*r.prompt_text];
    if (u.participants.size() < 2) u.participants.insert(r.participant_id);
    ++u.records;
  }
  RedactionReport report;
  for (const auto& [prompt, u] : usage) {
    if (u.participants.size() >= 2) continue;
    report.redacted.push_back({Sha256Hex(prompt), 1, u.records});
    report.redacted_records += u.records;
  }
  std::sort(report.redacted.begin(), report.redacted.end(),
            [](const RedactedPrompt& a, const RedactedPrompt& b) {
              return a.prompt_hash < b.prompt_hash;
            });
  for (auto& r : records) {
    if (!r.has_prompt() || r.is_redacted()) continue;
    if (usage.at(*r.prompt_text).participants.size() < 2) {
      r.prompt_text = std::string(kRedactedPrompt);
      r.motive = Motive::kUnlabeled;
    }
  }
  return report;
}

Motive Classify(const std::optional<std::string>& prompt,
                const MotiveMapping& mapping, const KeywordRuleSet& rules) {
  if (!prompt) return Motive::kNoPrompt;
  if (*prompt == kRedactedPrompt) return Motive::kUnlabeled;
  if (const MappingEntry* entry = mapping.Find(*prompt)) return entry->motive;
  if (const KeywordRule* rule = rules.FirstMatch(*prompt)) return rule->motive;
  return Motive::kUnlabeled;
}

void ClassifyRecords(std::span<TextInputRecord> records,
                     const MotiveMapping& mapping,
                     const KeywordRuleSet& rules) {
  for (auto& r : records) r.motive = Classify(r.prompt_text, mapping, rules);
}

std::vector<PromptFrequency> PromptFrequencies(
    std::span<const TextInputRecord> records) {
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& r : records) {
    if (r.has_prompt() && !r.is_redacted()) ++counts[*r.prompt_text];
  }
  std::vector<PromptFrequency> out;
  out.reserve(counts.size());
  for (const auto& [p, c] : counts) out.push_back({std::string(p), c});
  std::sort(out.begin(), out.end(),
            [](const PromptFrequency& a, const PromptFrequency& b) {
              return a.count != b.count ? a.count > b.count
                                        : a.prompt < b.prompt;
            });
  return out;
}

AutoCodeResult AutoCodeCorpus(std::span<const PromptFrequency> prompts,
                              const KeywordRuleSet& rules,
                              std::uint64_t total_texts,
                              double cutoff_fraction) {
  AutoCodeResult out;
  for (const auto& pf : prompts) {
    const std::string normalized = NormalizePrompt(pf.prompt);
    if (normalized.empty()) continue;
    if (const KeywordRule* rule = rules.FirstMatch(normalized)) {
      out.mapping.Set(normalized, MappingEntry{rule->motive,
                                               Provenance::kAutoKeyword,
                                               std::nullopt, std::nullopt});
      for (const auto& other : rules.rules()) {
        if (other.motive != rule->motive &&
            normalized.find(other.stem) != std::string::npos) {
          out.multi_motive.push_back(normalized);
          break;
        }
      }
      continue;
    }
    const double share =
        total_texts == 0 ? 0.0
                         : static_cast<double>(pf.count) /
                               static_cast<double>(total_texts);
    if (share > cutoff_fraction) {
      out.residual.push_back({normalized, pf.count});
    } else {
      ++out.below_cutoff;
    }
  }
  std::sort(out.residual.begin(), out.residual.end(),
            [](const PromptFrequency& a, const PromptFrequency& b) {
              return a.count != b.count ? a.count > b.count
                                        : a.prompt < b.prompt;
            });
  std::sort(out.multi_motive.begin(), out.multi_motive.end());
  return out;
}

CoverageReport Coverage(std::span<const TextInputRecord> records) {
  CoverageReport c;
  c.records = records.size();
  for (const auto& r : records) {
    if (r.has_prompt()) ++c.prompted;
    if (IsCodedMotive(r.motive)) {
      ++c.labeled;
      ++c.labeled_counts[r.motive];
    }
  }
  auto ratio = [](std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  c.prompt_rate = ratio(c.prompted, c.records);
  c.label_of_prompted = ratio(c.labeled, c.prompted);
  c.label_overall = ratio(c.labeled, c.records);
  for (const auto& [m, n] : c.labeled_counts) {
    c.labeled_shares[m] = ratio(n, c.labeled);
  }
  return c;
}

}  // namespace motivelog
