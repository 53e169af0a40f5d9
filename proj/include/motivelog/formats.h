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

#ifndef MOTIVELOG_FORMATS_H_
#define MOTIVELOG_FORMATS_H_

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "motivelog/agreement.h"
#include "motivelog/core_model.h"
#include "motivelog/motive_classifier.h"
#include "motivelog/sessionizer.h"

namespace motivelog::formats {

// Appends `s` as a JSON string literal (quoted, escaped).
void AppendJsonString(std::string& out, std::string_view s);

// --- JSON Lines --------------------------------------------------------------
// Serializers return one line without the trailing newline. Key order is
// fixed so that equal values serialize to equal bytes.

std::string ToJsonLine(const FieldSnapshotEvent& e);
std::string ToJsonLine(const WordEvent& e);
std::string ToJsonLine(const SessionInfo& s);
std::string ToJsonLine(const TextInputRecord& r);

FieldSnapshotEvent ParseEvent(std::string_view line);
WordEvent ParseWordEvent(std::string_view line);
SessionInfo ParseSessionInfo(std::string_view line);
TextInputRecord ParseRecord(std::string_view line);

// Calls `fn` for each non-blank line; parse failures are rethrown as
// ValidationError carrying the line number.
void ForEachLine(std::istream& in,
                 const std::function<void(std::string_view line)>& fn,
                 std::string_view source = "input");

template <typename T>
std::vector<T> ReadAll(std::istream& in, T (*parse)(std::string_view),
                       std::string_view source = "input") {
  std::vector<T> out;
  ForEachLine(in, [&](std::string_view line) { out.push_back(parse(line)); },
              source);
  return out;
}

// --- Dictionary / whitelist ------------------------------------------------
// '%' line, "id<TAB>name" category lines, '%' line, then
// "pattern<TAB>id id ..." entries. A trailing '*' marks a stem.
Dictionary ParseDictionary(std::istream& in);
std::string SerializeDictionary(const Dictionary& dict);

// One word per line; '#' starts a comment line.
Whitelist ParseWhitelist(std::istream& in);

// --- TSV files ----------------------------------------------------------------
// prompt<TAB>motive<TAB>provenance<TAB>coder<TAB>round; '#' comments.
MotiveMapping ParseMapping(std::istream& in);
std::string SerializeMapping(const MotiveMapping& mapping);

// Rater code files share the mapping schema.
RaterCodes ParseRaterCodes(std::istream& in);

// app_id<TAB>category
AppCategoryMap ParseAppCategories(std::istream& in);
std::string SerializeAppCategories(const AppCategoryMap& map);

// stem<TAB>motive, evaluated in file order.
KeywordRuleSet ParseRules(std::istream& in);

// prompt<TAB>count
std::vector<PromptFrequency> ParseResidual(std::istream& in);
std::string SerializeResidual(const std::vector<PromptFrequency>& residual);

// Splits on tabs, keeping empty fields.
std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace motivelog::formats

#endif  // MOTIVELOG_FORMATS_H_
