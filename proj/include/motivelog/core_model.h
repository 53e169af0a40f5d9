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

#ifndef MOTIVELOG_CORE_MODEL_H_
#define MOTIVELOG_CORE_MODEL_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace motivelog {

using Timestamp = std::int64_t;  // epoch milliseconds
using CategoryId = std::uint32_t;

// Failure classes map onto CLI exit codes: validation -> 1, I/O -> 2.
class Error : public std::runtime_error {
 public:
  enum class Kind { kValidation, kIo };
  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error ValidationError(const std::string& what) {
  return Error(Error::Kind::kValidation, what);
}
inline Error IoError(const std::string& what) {
  return Error(Error::Kind::kIo, what);
}

// The seven coded motives plus the two uncovered states.
enum class Motive : std::uint8_t {
  kMessaging,
  kPosting,
  kCommenting,
  kSearch,
  kDataInput,
  kOther,
  kAmbiguous,
  kUnlabeled,  // prompt present, no mapping entry or rule hit
  kNoPrompt,   // no prompt available
};

inline constexpr std::array<Motive, 9> kAllMotives = {
    Motive::kMessaging, Motive::kPosting,   Motive::kCommenting,
    Motive::kSearch,    Motive::kDataInput, Motive::kOther,
    Motive::kAmbiguous, Motive::kUnlabeled, Motive::kNoPrompt};

inline constexpr std::array<Motive, 7> kCodedMotives = {
    Motive::kMessaging, Motive::kPosting,   Motive::kCommenting,
    Motive::kSearch,    Motive::kDataInput, Motive::kOther,
    Motive::kAmbiguous};

std::string_view MotiveName(Motive motive);
std::optional<Motive> ParseMotive(std::string_view name);

// True for the seven motives a mapping or rater may assign.
constexpr bool IsCodedMotive(Motive m) {
  return m != Motive::kUnlabeled && m != Motive::kNoPrompt;
}

// Prompt text replaced by the single-participant prefilter. Normalized
// prompts are case-folded, so an upper-case sentinel cannot collide.
inline constexpr std::string_view kRedactedPrompt = "REDACTED";

struct FieldSnapshotEvent {
  Timestamp ts = 0;
  std::string participant_id;
  std::string app_id;
  std::string field_id;
  std::optional<std::string> prompt;
  std::string content;

  bool operator==(const FieldSnapshotEvent&) const = default;
};

// Throws ValidationError if ts < 0 or an identifier is empty.
void Validate(const FieldSnapshotEvent& event);

enum class WordEventKind : std::uint8_t { kAdded, kChanged, kRemoved };

std::string_view WordEventKindName(WordEventKind kind);
std::optional<WordEventKind> ParseWordEventKind(std::string_view name);

// Privacy-abstracted word event. The raw token is never carried unless it is
// on the whitelist.
struct WordEvent {
  Timestamp ts = 0;
  std::string participant_id;
  std::string app_id;
  std::string session_id;
  WordEventKind kind = WordEventKind::kAdded;
  std::vector<CategoryId> category_ids;  // sorted, unique
  std::optional<std::string> whitelist_token;

  bool operator==(const WordEvent&) const = default;
};

// Sparse many-hot vector: the sorted set of category ids that are true.
class CategorySet {
 public:
  CategorySet() = default;
  explicit CategorySet(std::vector<CategoryId> ids);

  bool test(CategoryId id) const;
  void merge(const std::vector<CategoryId>& sorted_ids);
  const std::vector<CategoryId>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }

  // Dense boolean view with `size` slots; ids >= size are dropped.
  std::vector<bool> dense(std::size_t size) const;

  bool operator==(const CategorySet&) const = default;

 private:
  std::vector<CategoryId> ids_;
};

struct TextInputRecord {
  std::string session_id;
  std::string participant_id;
  std::string app_id;
  std::optional<std::string> app_category;
  std::optional<std::string> prompt_text;  // normalized, or kRedactedPrompt
  Motive motive = Motive::kNoPrompt;
  std::uint64_t words_added = 0;
  std::uint64_t words_changed = 0;
  std::uint64_t words_removed = 0;
  std::uint64_t total_words = 0;
  std::uint64_t matched_words = 0;
  CategorySet many_hot;
  Timestamp start_ts = 0;
  Timestamp end_ts = 0;

  bool has_prompt() const { return prompt_text.has_value(); }
  bool is_redacted() const {
    return prompt_text.has_value() && *prompt_text == kRedactedPrompt;
  }

  bool operator==(const TextInputRecord&) const = default;
};

// Closed-vocabulary dictionary: literal words and stem prefixes mapped to
// category ids. Patterns are stored case-folded.
class Dictionary {
 public:
  struct Entry {
    std::string pattern;  // without the trailing wildcard
    bool is_stem = false;
    std::vector<CategoryId> categories;  // sorted, unique
  };

  Dictionary() = default;

  // Throws ValidationError on an empty pattern, a duplicate category id or a
  // reference to an unknown category.
  void AddCategory(CategoryId id, std::string name);
  void AddEntry(std::string_view pattern, bool is_stem,
                std::vector<CategoryId> categories);

  // Union of the categories of every matching entry; `folded_token` must
  // already be case-folded.
  std::vector<CategoryId> Match(std::string_view folded_token) const;

  const std::map<CategoryId, std::string>& categories() const {
    return categories_;
  }
  const std::vector<Entry>& entries() const { return entries_; }
  CategoryId max_category_id() const;

 private:
  std::map<CategoryId, std::string> categories_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<CategoryId>> literals_;
  std::unordered_map<std::string, std::vector<CategoryId>> stems_;
  std::size_t max_stem_bytes_ = 0;
};

class Whitelist {
 public:
  Whitelist() = default;
  // Words are case-folded on insertion; duplicates collapse.
  void Add(std::string_view word);
  bool Contains(std::string_view folded_token) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, bool> words_;
};

enum class Provenance : std::uint8_t { kAutoKeyword, kManualCoded };
std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

struct MappingEntry {
  Motive motive = Motive::kOther;
  Provenance provenance = Provenance::kManualCoded;
  std::optional<std::string> coder;
  std::optional<int> round;

  bool operator==(const MappingEntry&) const = default;
};

// Normalized prompt text -> coded motive.
class MotiveMapping {
 public:
  // Normalizes `prompt`; rejects Unlabeled/NoPrompt and empty prompts.
  void Set(std::string_view prompt, MappingEntry entry);
  const MappingEntry* Find(std::string_view normalized_prompt) const;
  const std::map<std::string, MappingEntry>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, MappingEntry> entries_;
};

struct KeywordRule {
  std::string stem;  // case-folded, non-empty
  Motive motive;
};

class KeywordRuleSet {
 public:
  KeywordRuleSet() = default;
  explicit KeywordRuleSet(std::vector<KeywordRule> rules);

  // Search, Commenting, Messaging in German/English, in that order.
  static KeywordRuleSet Default();

  // First rule whose stem occurs in `normalized_prompt`.
  const KeywordRule* FirstMatch(std::string_view normalized_prompt) const;
  const std::vector<KeywordRule>& rules() const { return rules_; }

 private:
  std::vector<KeywordRule> rules_;
};

using AppCategoryMap = std::map<std::string, std::string>;

// Trims, collapses whitespace runs to one space and applies full Unicode
// case folding.
std::string NormalizePrompt(std::string_view raw);

}  // namespace motivelog

#endif  // MOTIVELOG_CORE_MODEL_H_
