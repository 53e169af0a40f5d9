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

#include "motivelog/core_model.h"

#include <algorithm>
#include <utility>

#include "motivelog/text_util.h"

namespace motivelog {
namespace {

constexpr std::array<std::string_view, 9> kMotiveNames = {
    "Messaging", "Posting",   "Commenting", "Search",  "DataInput",
    "Other",     "Ambiguous", "Unlabeled",  "NoPrompt"};

void SortUnique(std::vector<CategoryId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

void MergeInto(std::vector<CategoryId>& into,
               const std::vector<CategoryId>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

std::string_view MotiveName(Motive motive) {
  return kMotiveNames[static_cast<std::size_t>(motive)];
}

std::optional<Motive> ParseMotive(std::string_view name) {
  for (Motive m : kAllMotives) {
    if (MotiveName(m) == name) return m;
  }
  return std::nullopt;
}

void Validate(const FieldSnapshotEvent& event) {
  if (event.ts < 0) throw ValidationError("event timestamp is negative");
  if (event.participant_id.empty())
    throw ValidationError("event participant id is empty");
  if (event.app_id.empty()) throw ValidationError("event app id is empty");
  if (event.field_id.empty()) throw ValidationError("event field id is empty");
}

std::string_view WordEventKindName(WordEventKind kind) {
  switch (kind) {
    case WordEventKind::kAdded:
      return "added";
    case WordEventKind::kChanged:
      return "changed";
    case WordEventKind::kRemoved:
      return "removed";
  }
  return "added";
}

std::optional<WordEventKind> ParseWordEventKind(std::string_view name) {
  if (name == "added") return WordEventKind::kAdded;
  if (name == "changed") return WordEventKind::kChanged;
  if (name == "removed") return WordEventKind::kRemoved;
  return std::nullopt;
}

CategorySet::CategorySet(std::vector<CategoryId> ids) : ids_(std::move(ids)) {
  SortUnique(ids_);
}

bool CategorySet::test(CategoryId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void CategorySet::merge(const std::vector<CategoryId>& sorted_ids) {
  if (sorted_ids.empty()) return;
  std::vector<CategoryId> merged;
  merged.reserve(ids_.size() + sorted_ids.size());
  std::set_union(ids_.begin(), ids_.end(), sorted_ids.begin(),
                 sorted_ids.end(), std::back_inserter(merged));
  ids_ = std::move(merged);
}

std::vector<bool> CategorySet::dense(std::size_t size) const {
  std::vector<bool> out(size, false);
  for (CategoryId id : ids_) {
    if (id < size) out[id] = true;
  }
  return out;
}

void Dictionary::AddCategory(CategoryId id, std::string name) {
  if (!categories_.emplace(id, std::move(name)).second) {
    throw ValidationError("duplicate dictionary category id " +
                          std::to_string(id));
  }
}

void Dictionary::AddEntry(std::string_view pattern, bool is_stem,
                          std::vector<CategoryId> categories) {
  std::string folded = text::FoldCase(pattern);
  if (folded.empty()) throw ValidationError("empty dictionary pattern");
  for (CategoryId id : categories) {
    if (!categories_.contains(id)) {
      throw ValidationError("dictionary entry '" + folded +
                            "' references unknown category " +
                            std::to_string(id));
    }
  }
  SortUnique(categories);
  auto& index = is_stem ? stems_ : literals_;
  auto& slot = index[folded];
  MergeInto(slot, categories);
  SortUnique(slot);
  if (is_stem) max_stem_bytes_ = std::max(max_stem_bytes_, folded.size());
  entries_.push_back(Entry{std::move(folded), is_stem, std::move(categories)});
}

std::vector<CategoryId> Dictionary::Match(std::string_view folded_token) const {
  std::vector<CategoryId> out;
  if (auto it = literals_.find(std::string(folded_token));
      it != literals_.end()) {
    MergeInto(out, it->second);
  }
  if (!stems_.empty()) {
    // Every code-point-aligned prefix (including the whole token) is a
    // candidate stem.
    std::size_t pos = 0;
    std::string prefix;
    while (pos < folded_token.size() && pos < max_stem_bytes_) {
      text::NextCodePoint(folded_token, pos);
      prefix.assign(folded_token.substr(0, pos));
      if (auto it = stems_.find(prefix); it != stems_.end()) {
        MergeInto(out, it->second);
      }
    }
  }
  SortUnique(out);
  return out;
}

CategoryId Dictionary::max_category_id() const {
  return categories_.empty() ? 0 : categories_.rbegin()->first;
}

void Whitelist::Add(std::string_view word) {
  std::string folded = text::FoldCase(word);
  if (folded.empty()) return;
  words_.emplace(std::move(folded), true);
}

bool Whitelist::Contains(std::string_view folded_token) const {
  return words_.contains(std::string(folded_token));
}

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kAutoKeyword ? "AutoKeyword" : "ManualCoded";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  if (name == "AutoKeyword") return Provenance::kAutoKeyword;
  if (name == "ManualCoded") return Provenance::kManualCoded;
  return std::nullopt;
}

void MotiveMapping::Set(std::string_view prompt, MappingEntry entry) {
  if (!IsCodedMotive(entry.motive)) {
    throw ValidationError("mapping motive must be one of the seven coded "
                          "motives, got " +
                          std::string(MotiveName(entry.motive)));
  }
  std::string key = NormalizePrompt(prompt);
  if (key.empty()) throw ValidationError("mapping prompt is empty");
  entries_[std::move(key)] = std::move(entry);
}

const MappingEntry* MotiveMapping::Find(
    std::string_view normalized_prompt) const {
  auto it = entries_.find(std::string(normalized_prompt));
  return it == entries_.end() ? nullptr : &it->second;
}

KeywordRuleSet::KeywordRuleSet(std::vector<KeywordRule> rules) {
  for (auto& rule : rules) {
    rule.stem = text::FoldCase(rule.stem);
    if (rule.stem.empty()) throw ValidationError("keyword stem is empty");
    if (!IsCodedMotive(rule.motive)) {
      throw ValidationError("keyword rule motive must be a coded motive");
    }
  }
  rules_ = std::move(rules);
}

KeywordRuleSet KeywordRuleSet::Default() {
  return KeywordRuleSet({{"such", Motive::kSearch},
                         {"search", Motive::kSearch},
                         {"komment", Motive::kCommenting},
                         {"comment", Motive::kCommenting},
                         {"nachricht", Motive::kMessaging},
                         {"message", Motive::kMessaging}});
}

const KeywordRule* KeywordRuleSet::FirstMatch(
    std::string_view normalized_prompt) const {
  for (const auto& rule : rules_) {
    if (normalized_prompt.find(rule.stem) != std::string_view::npos) {
      return &rule;
    }
  }
  return nullptr;
}

std::string NormalizePrompt(std::string_view raw) {
  const std::string folded = text::FoldCase(raw);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < folded.size()) {
    const std::size_t start = pos;
    const std::int32_t cp = text::NextCodePoint(folded, pos);
    if (text::IsWhiteSpaceCodePoint(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(folded, start, pos - start);
  }
  return out;
}

}  // namespace motivelog
