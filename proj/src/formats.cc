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

#include "motivelog/formats.h"

#include <charconv>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "motivelog/text_util.h"

namespace motivelog::formats {
namespace {

using nlohmann::json;

void AppendKey(std::string& out, std::string_view key, bool first = false) {
  if (!first) out.push_back(',');
  out.push_back('"');
  out.append(key);
  out.append("\":");
}

void AppendInt(std::string& out, std::int64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void AppendUint(std::string& out, std::uint64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void AppendIds(std::string& out, const std::vector<CategoryId>& ids) {
  out.push_back('[');
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out.push_back(',');
    AppendUint(out, ids[i]);
  }
  out.push_back(']');
}

json ParseObject(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON");
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  return j;
}

const json& Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string String(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_string()) {
    throw ValidationError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::optional<std::string> OptString(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ValidationError(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::int64_t Int(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string("field '") + key +
                          "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::uint64_t Uint(const json& j, const char* key) {
  const std::int64_t v = Int(j, key);
  if (v < 0) {
    throw ValidationError(std::string("field '") + key +
                          "' must be non-negative");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<CategoryId> Ids(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_array()) {
    throw ValidationError(std::string("field '") + key + "' must be an array");
  }
  std::vector<CategoryId> ids;
  for (const auto& x : v) {
    if (!x.is_number_unsigned()) {
      throw ValidationError(std::string("field '") + key +
                            "' must hold category ids");
    }
    ids.push_back(x.get<CategoryId>());
  }
  return ids;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T ParseNumber(std::string_view s, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("invalid " + std::string(what) + " '" +
                          std::string(s) + "'");
  }
  return value;
}

// Runs `fn` on each meaningful line of a TSV-ish file with '#' comments.
void ForEachTableLine(std::istream& in, std::string_view source,
                      const std::function<void(std::string_view)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line.front() == '#') continue;
    try {
      fn(line);
    } catch (const Error& e) {
      throw ValidationError(std::string(source) + " line " +
                            std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read failed for " + std::string(source));
}

Motive RequireMotive(std::string_view name) {
  auto m = ParseMotive(name);
  if (!m) throw ValidationError("unknown motive '" + std::string(name) + "'");
  return *m;
}

}  // namespace

void AppendJsonString(std::string& out, std::string_view s) {
  static constexpr char kHex[] = "0123456789abcdef";
  out.push_back('"');
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '"':
        out.append("\\\"");
        break;
      case '\\':
        out.append("\\\\");
        break;
      case '\n':
        out.append("\\n");
        break;
      case '\r':
        out.append("\\r");
        break;
      case '\t':
        out.append("\\t");
        break;
      default:
        if (c < 0x20) {
          out.append("\\u00");
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xf]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

std::string ToJsonLine(const FieldSnapshotEvent& e) {
  std::string out = "{";
  AppendKey(out, "ts", true);
  AppendInt(out, e.ts);
  AppendKey(out, "pid");
  AppendJsonString(out, e.participant_id);
  AppendKey(out, "app");
  AppendJsonString(out, e.app_id);
  AppendKey(out, "field");
  AppendJsonString(out, e.field_id);
  if (e.prompt) {
    AppendKey(out, "prompt");
    AppendJsonString(out, *e.prompt);
  }
  AppendKey(out, "content");
  AppendJsonString(out, e.content);
  out.push_back('}');
  return out;
}

std::string ToJsonLine(const WordEvent& e) {
  std::string out = "{";
  AppendKey(out, "ts", true);
  AppendInt(out, e.ts);
  AppendKey(out, "pid");
  AppendJsonString(out, e.participant_id);
  AppendKey(out, "app");
  AppendJsonString(out, e.app_id);
  AppendKey(out, "sid");
  AppendJsonString(out, e.session_id);
  AppendKey(out, "kind");
  AppendJsonString(out, WordEventKindName(e.kind));
  AppendKey(out, "cats");
  AppendIds(out, e.category_ids);
  if (e.whitelist_token) {
    AppendKey(out, "wl");
    AppendJsonString(out, *e.whitelist_token);
  }
  out.push_back('}');
  return out;
}

std::string ToJsonLine(const SessionInfo& s) {
  std::string out = "{";
  AppendKey(out, "sid", true);
  AppendJsonString(out, s.session_id);
  AppendKey(out, "pid");
  AppendJsonString(out, s.participant_id);
  AppendKey(out, "app");
  AppendJsonString(out, s.app_id);
  if (s.prompt) {
    AppendKey(out, "prompt");
    AppendJsonString(out, *s.prompt);
  }
  AppendKey(out, "start");
  AppendInt(out, s.start_ts);
  AppendKey(out, "end");
  AppendInt(out, s.end_ts);
  out.push_back('}');
  return out;
}

std::string ToJsonLine(const TextInputRecord& r) {
  std::string out = "{";
  AppendKey(out, "sid", true);
  AppendJsonString(out, r.session_id);
  AppendKey(out, "pid");
  AppendJsonString(out, r.participant_id);
  AppendKey(out, "app");
  AppendJsonString(out, r.app_id);
  if (r.app_category) {
    AppendKey(out, "appcat");
    AppendJsonString(out, *r.app_category);
  }
  if (r.prompt_text) {
    AppendKey(out, "prompt");
    AppendJsonString(out, *r.prompt_text);
  }
  AppendKey(out, "motive");
  AppendJsonString(out, MotiveName(r.motive));
  AppendKey(out, "added");
  AppendUint(out, r.words_added);
  AppendKey(out, "changed");
  AppendUint(out, r.words_changed);
  AppendKey(out, "removed");
  AppendUint(out, r.words_removed);
  AppendKey(out, "total");
  AppendUint(out, r.total_words);
  AppendKey(out, "matched");
  AppendUint(out, r.matched_words);
  AppendKey(out, "cats");
  AppendIds(out, r.many_hot.ids());
  AppendKey(out, "start");
  AppendInt(out, r.start_ts);
  AppendKey(out, "end");
  AppendInt(out, r.end_ts);
  out.push_back('}');
  return out;
}

FieldSnapshotEvent ParseEvent(std::string_view line) {
  const json j = ParseObject(line);
  FieldSnapshotEvent e;
  e.ts = Int(j, "ts");
  e.participant_id = String(j, "pid");
  e.app_id = String(j, "app");
  e.field_id = String(j, "field");
  e.prompt = OptString(j, "prompt");
  e.content = String(j, "content");
  Validate(e);
  return e;
}

WordEvent ParseWordEvent(std::string_view line) {
  const json j = ParseObject(line);
  WordEvent e;
  e.ts = Int(j, "ts");
  e.participant_id = String(j, "pid");
  e.app_id = String(j, "app");
  e.session_id = String(j, "sid");
  const std::string kind = String(j, "kind");
  auto k = ParseWordEventKind(kind);
  if (!k) throw ValidationError("unknown word event kind '" + kind + "'");
  e.kind = *k;
  e.category_ids = CategorySet(Ids(j, "cats")).ids();
  e.whitelist_token = OptString(j, "wl");
  return e;
}

SessionInfo ParseSessionInfo(std::string_view line) {
  const json j = ParseObject(line);
  SessionInfo s;
  s.session_id = String(j, "sid");
  s.participant_id = String(j, "pid");
  s.app_id = String(j, "app");
  s.prompt = OptString(j, "prompt");
  s.start_ts = Int(j, "start");
  s.end_ts = Int(j, "end");
  return s;
}

TextInputRecord ParseRecord(std::string_view line) {
  const json j = ParseObject(line);
  TextInputRecord r;
  r.session_id = String(j, "sid");
  r.participant_id = String(j, "pid");
  r.app_id = String(j, "app");
  r.app_category = OptString(j, "appcat");
  r.prompt_text = OptString(j, "prompt");
  const std::string motive = String(j, "motive");
  r.motive = RequireMotive(motive);
  r.words_added = Uint(j, "added");
  r.words_changed = Uint(j, "changed");
  r.words_removed = Uint(j, "removed");
  r.total_words = Uint(j, "total");
  r.matched_words = Uint(j, "matched");
  r.many_hot = CategorySet(Ids(j, "cats"));
  r.start_ts = Int(j, "start");
  r.end_ts = Int(j, "end");
  if (r.total_words != r.words_added + r.words_changed) {
    throw ValidationError("record total != added + changed");
  }
  if (r.matched_words > r.total_words || r.end_ts < r.start_ts) {
    throw ValidationError("record counts or timestamps inconsistent");
  }
  return r;
}

void ForEachLine(std::istream& in,
                 const std::function<void(std::string_view line)>& fn,
                 std::string_view source) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      fn(line);
    } catch (const json::exception& e) {
      throw ValidationError(std::string(source) + " line " +
                            std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      if (e.kind() == Error::Kind::kIo) throw;
      throw ValidationError(std::string(source) + " line " +
                            std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read failed for " + std::string(source));
}

Dictionary ParseDictionary(std::istream& in) {
  Dictionary dict;
  int section = 0;  // 0 before header, 1 categories, 2 entries
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view t = Trim(line);
    if (t.empty()) continue;
    try {
      if (t == "%") {
        if (section == 2) throw ValidationError("unexpected third '%'");
        ++section;
        continue;
      }
      if (section == 0) throw ValidationError("dictionary must start with '%'");
      const std::size_t tab = t.find('\t');
      if (tab == std::string_view::npos) {
        throw ValidationError("expected a tab-separated line");
      }
      const std::string_view head = Trim(t.substr(0, tab));
      const std::string_view rest = Trim(t.substr(tab + 1));
      if (section == 1) {
        dict.AddCategory(ParseNumber<CategoryId>(head, "category id"),
                         std::string(rest));
        continue;
      }
      std::vector<CategoryId> ids;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        const std::size_t end = rest.find_first_of(" \t", pos);
        const std::string_view tok = rest.substr(
            pos, end == std::string_view::npos ? std::string_view::npos
                                               : end - pos);
        if (!tok.empty()) ids.push_back(ParseNumber<CategoryId>(tok, "category id"));
        if (end == std::string_view::npos) break;
        pos = end + 1;
      }
      const bool stem = !head.empty() && head.back() == '*';
      dict.AddEntry(stem ? head.substr(0, head.size() - 1) : head, stem,
                    std::move(ids));
    } catch (const Error& e) {
      throw ValidationError("dictionary line " + std::to_string(number) +
                            ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read failed for dictionary");
  if (section < 2) throw ValidationError("dictionary header is not closed");
  return dict;
}

std::string SerializeDictionary(const Dictionary& dict) {
  std::ostringstream out;
  out << "%\n";
  for (const auto& [id, name] : dict.categories()) {
    out << id << '\t' << name << '\n';
  }
  out << "%\n";
  for (const auto& e : dict.entries()) {
    out << e.pattern << (e.is_stem ? "*" : "");
    for (std::size_t i = 0; i < e.categories.size(); ++i) {
      out << (i == 0 ? '\t' : ' ') << e.categories[i];
    }
    out << '\n';
  }
  return out.str();
}

Whitelist ParseWhitelist(std::istream& in) {
  Whitelist wl;
  ForEachTableLine(in, "whitelist",
                   [&](std::string_view line) { wl.Add(Trim(line)); });
  return wl;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

MotiveMapping ParseMapping(std::istream& in) {
  MotiveMapping mapping;
  ForEachTableLine(in, "mapping", [&](std::string_view line) {
    const auto f = SplitTabs(line);
    if (f.size() < 2 || f.size() > 5) {
      throw ValidationError("expected prompt, motive[, provenance, coder, "
                            "round]");
    }
    MappingEntry entry;
    entry.motive = RequireMotive(f[1]);
    if (f.size() > 2 && !f[2].empty()) {
      auto p = ParseProvenance(f[2]);
      if (!p) {
        throw ValidationError("unknown provenance '" + std::string(f[2]) +
                              "'");
      }
      entry.provenance = *p;
    }
    if (f.size() > 3 && !f[3].empty()) entry.coder = std::string(f[3]);
    if (f.size() > 4 && !f[4].empty()) {
      entry.round = ParseNumber<int>(f[4], "round");
    }
    mapping.Set(f[0], std::move(entry));
  });
  return mapping;
}

std::string SerializeMapping(const MotiveMapping& mapping) {
  std::string out = "# prompt\tmotive\tprovenance\tcoder\tround\n";
  for (const auto& [prompt, e] : mapping.entries()) {
    out += prompt;
    out += '\t';
    out += MotiveName(e.motive);
    out += '\t';
    out += ProvenanceName(e.provenance);
    out += '\t';
    if (e.coder) out += *e.coder;
    out += '\t';
    if (e.round) out += std::to_string(*e.round);
    out += '\n';
  }
  return out;
}

RaterCodes ParseRaterCodes(std::istream& in) {
  RaterCodes codes;
  const MotiveMapping mapping = ParseMapping(in);
  for (const auto& [prompt, entry] : mapping.entries()) {
    codes.emplace(prompt, entry.motive);
  }
  return codes;
}

AppCategoryMap ParseAppCategories(std::istream& in) {
  AppCategoryMap map;
  ForEachTableLine(in, "app categories", [&](std::string_view line) {
    const auto f = SplitTabs(line);
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ValidationError("expected app_id<TAB>category");
    }
    if (!map.emplace(std::string(f[0]), std::string(f[1])).second) {
      throw ValidationError("duplicate app id '" + std::string(f[0]) + "'");
    }
  });
  return map;
}

std::string SerializeAppCategories(const AppCategoryMap& map) {
  std::string out;
  for (const auto& [app, cat] : map) out += app + '\t' + cat + '\n';
  return out;
}

KeywordRuleSet ParseRules(std::istream& in) {
  std::vector<KeywordRule> rules;
  ForEachTableLine(in, "rules", [&](std::string_view line) {
    const auto f = SplitTabs(line);
    if (f.size() != 2) throw ValidationError("expected stem<TAB>motive");
    rules.push_back({std::string(f[0]), RequireMotive(f[1])});
  });
  return KeywordRuleSet(std::move(rules));
}

std::vector<PromptFrequency> ParseResidual(std::istream& in) {
  std::vector<PromptFrequency> out;
  ForEachTableLine(in, "residual", [&](std::string_view line) {
    const auto f = SplitTabs(line);
    if (f.size() != 2) throw ValidationError("expected prompt<TAB>count");
    out.push_back({NormalizePrompt(f[0]),
                   ParseNumber<std::uint64_t>(f[1], "count")});
  });
  return out;
}

std::string SerializeResidual(const std::vector<PromptFrequency>& residual) {
  std::string out = "# prompt\tcount\n";
  for (const auto& pf : residual) {
    out += pf.prompt + '\t' + std::to_string(pf.count) + '\n';
  }
  return out;
}

}  // namespace motivelog::formats
