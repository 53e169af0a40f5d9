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

#include "motivelog/edge_abstractor.h"

#include <algorithm>
#include <cstdint>

#include "motivelog/text_util.h"

namespace motivelog {
namespace {

struct PositionedDelta {
  WordEventKind kind;
  // Index into the new token list for Added/Changed, into the old list for
  // Removed.
  std::size_t index;
};

// Alignment over LCS. Common prefix and suffix are stripped before the
// quadratic table so that appends and single edits stay linear.
std::vector<PositionedDelta> Align(std::span<const std::string> a,
                                   std::span<const std::string> b) {
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  const std::size_t n = a.size() - prefix - suffix;
  const std::size_t m = b.size() - prefix - suffix;

  std::vector<PositionedDelta> out;
  auto flush_gap = [&](std::size_t old_begin, std::size_t old_end,
                       std::size_t new_begin, std::size_t new_end) {
    if (old_end - old_begin == 1 && new_end - new_begin == 1) {
      out.push_back({WordEventKind::kChanged, new_begin});
      return;
    }
    for (std::size_t i = old_begin; i < old_end; ++i) {
      out.push_back({WordEventKind::kRemoved, i});
    }
    for (std::size_t j = new_begin; j < new_end; ++j) {
      out.push_back({WordEventKind::kAdded, j});
    }
  };
  if (n == 0 || m == 0) {
    flush_gap(prefix, prefix + n, prefix, prefix + m);
    return out;
  }

  // lcs[i][j] = LCS length of a[prefix+i..] and b[prefix+j..]
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> lcs((n + 1) * width, 0);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i * width + j] =
          a[prefix + i] == b[prefix + j]
              ? lcs[(i + 1) * width + j + 1] + 1
              : std::max(lcs[(i + 1) * width + j], lcs[i * width + j + 1]);
    }
  }
  std::size_t i = 0, j = 0;
  std::size_t gap_i = 0, gap_j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[prefix + i] == b[prefix + j] &&
        lcs[i * width + j] == lcs[(i + 1) * width + j + 1] + 1) {
      flush_gap(prefix + gap_i, prefix + i, prefix + gap_j, prefix + j);
      ++i;
      ++j;
      gap_i = i;
      gap_j = j;
    } else if (j == m ||
               (i < n && lcs[(i + 1) * width + j] >= lcs[i * width + j + 1])) {
      ++i;
    } else {
      ++j;
    }
  }
  flush_gap(prefix + gap_i, prefix + n, prefix + gap_j, prefix + m);
  return out;
}

bool EndsInsideToken(std::string_view content) {
  if (content.empty()) return false;
  // Step back to the start of the last code point.
  std::size_t start = content.size() - 1;
  while (start > 0 && (static_cast<unsigned char>(content[start]) & 0xC0) == 0x80 &&
         content.size() - start < 4) {
    --start;
  }
  std::size_t pos = start;
  return text::IsTokenCodePoint(text::NextCodePoint(content, pos)) &&
         pos == content.size();
}

bool IsPrefixOf(std::string_view a, std::string_view b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view content) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  std::size_t token_start = std::string_view::npos;
  while (pos < content.size()) {
    const std::size_t start = pos;
    const std::int32_t cp = text::NextCodePoint(content, pos);
    if (text::IsTokenCodePoint(cp)) {
      if (token_start == std::string_view::npos) token_start = start;
    } else if (token_start != std::string_view::npos) {
      tokens.emplace_back(content.substr(token_start, start - token_start));
      token_start = std::string_view::npos;
    }
  }
  if (token_start != std::string_view::npos) {
    tokens.emplace_back(content.substr(token_start));
  }
  return tokens;
}

std::vector<WordDelta> DiffTokens(std::span<const std::string> old_tokens,
                                  std::span<const std::string> new_tokens) {
  std::vector<WordDelta> out;
  for (const auto& d : Align(old_tokens, new_tokens)) {
    const auto& source =
        d.kind == WordEventKind::kRemoved ? old_tokens : new_tokens;
    out.push_back({d.kind, source[d.index]});
  }
  return out;
}

AbstractedToken AbstractToken(std::string_view token, const Dictionary& dict,
                              const Whitelist& whitelist) {
  const std::string folded = text::FoldCase(token);
  AbstractedToken out;
  out.categories = dict.Match(folded);
  if (whitelist.Contains(folded)) out.whitelist_token = folded;
  return out;
}

EdgeAbstractor::EdgeAbstractor(const Dictionary& dict,
                               const Whitelist& whitelist,
                               SessionConfig config)
    : dict_(dict), whitelist_(whitelist), assigner_(config) {}

void EdgeAbstractor::Push(const FieldSnapshotEvent& event,
                          AbstractionSink& sink) {
  Validate(event);
  if (last_participant_ && *last_participant_ == event.participant_id) {
    if (event.ts < last_ts_) {
      throw ValidationError("unsorted input: timestamp regresses for "
                            "participant " +
                            event.participant_id);
    }
  } else {
    if (finished_participants_.contains(event.participant_id)) {
      throw ValidationError("unsorted input: participant " +
                            event.participant_id + " reappears");
    }
    if (last_participant_) finished_participants_.insert(*last_participant_);
    last_participant_ = event.participant_id;
  }
  last_ts_ = event.ts;

  const auto assignment = assigner_.Assign(event);
  if (assignment.starts_session) {
    if (session_) CloseSession(sink);
    OpenSession(event, *assignment.session_id);
  }
  session_->info.end_ts = event.ts;
  ApplySnapshot(event, sink);
}

void EdgeAbstractor::Finish(AbstractionSink& sink) {
  if (session_) CloseSession(sink);
  assigner_.Reset();
}

void EdgeAbstractor::OpenSession(const FieldSnapshotEvent& event,
                                 const std::string& sid) {
  session_.emplace();
  SessionInfo& info = session_->info;
  info.session_id = sid;
  info.participant_id = event.participant_id;
  info.app_id = event.app_id;
  info.start_ts = event.ts;
  info.end_ts = event.ts;
  if (event.prompt) {
    std::string normalized = NormalizePrompt(*event.prompt);
    if (!normalized.empty()) info.prompt = std::move(normalized);
  }
}

void EdgeAbstractor::CloseSession(AbstractionSink& sink) {
  Session& s = *session_;
  if (s.pending) {
    Emit(s.pending->kind, s.pending->token, s.info.end_ts, sink);
    s.pending.reset();
  }
  sink.OnSessionClosed(s.info);
  session_.reset();
}

void EdgeAbstractor::ApplySnapshot(const FieldSnapshotEvent& event,
                                   AbstractionSink& sink) {
  Session& s = *session_;
  std::vector<std::string> tokens = Tokenize(event.content);
  const bool open_tail = !tokens.empty() && EndsInsideToken(event.content);

  if (s.pending) {
    const bool keeps_base =
        tokens.size() == s.base.size() + 1 &&
        std::equal(s.base.begin(), s.base.end(), tokens.begin());
    if (keeps_base && (IsPrefixOf(s.pending->token, tokens.back()) ||
                       IsPrefixOf(tokens.back(), s.pending->token))) {
      // Still the same word being typed or backspaced.
      if (open_tail) {
        s.pending->token = std::move(tokens.back());
        s.pending->ts = event.ts;
      } else {
        Emit(s.pending->kind, tokens.back(), event.ts, sink);
        s.pending.reset();
        s.base = std::move(tokens);
      }
      return;
    }
    if (tokens == s.base) {
      // The unfinished word was deleted before it was ever emitted.
      s.pending.reset();
      return;
    }
    Emit(s.pending->kind, s.pending->token, s.pending->ts, sink);
    s.base.push_back(std::move(s.pending->token));
    s.pending.reset();
  }

  const auto deltas = Align(s.base, tokens);
  bool tail_pending = false;
  for (const auto& d : deltas) {
    if (d.kind == WordEventKind::kRemoved) {
      Emit(d.kind, s.base[d.index], event.ts, sink);
      continue;
    }
    if (open_tail && d.index + 1 == tokens.size()) {
      s.pending = Pending{tokens.back(), d.kind, event.ts};
      tail_pending = true;
      continue;
    }
    Emit(d.kind, tokens[d.index], event.ts, sink);
  }
  if (tail_pending) tokens.pop_back();
  s.base = std::move(tokens);
}

void EdgeAbstractor::Emit(WordEventKind kind, std::string_view token,
                          Timestamp ts, AbstractionSink& sink) {
  const Session& s = *session_;
  AbstractedToken abstracted = AbstractToken(token, dict_, whitelist_);
  WordEvent e;
  e.ts = ts;
  e.participant_id = s.info.participant_id;
  e.app_id = s.info.app_id;
  e.session_id = s.info.session_id;
  e.kind = kind;
  e.category_ids = std::move(abstracted.categories);
  e.whitelist_token = std::move(abstracted.whitelist_token);
  sink.OnWordEvent(e);
}

namespace {

class CollectingSink : public AbstractionSink {
 public:
  explicit CollectingSink(AbstractionResult& out) : out_(out) {}
  void OnWordEvent(const WordEvent& event) override {
    out_.word_events.push_back(event);
  }
  void OnSessionClosed(const SessionInfo& info) override {
    out_.sessions.push_back(info);
  }

 private:
  AbstractionResult& out_;
};

}  // namespace

AbstractionResult ProcessStream(std::span<const FieldSnapshotEvent> events,
                                const Dictionary& dict,
                                const Whitelist& whitelist,
                                SessionConfig config) {
  AbstractionResult out;
  CollectingSink sink(out);
  EdgeAbstractor abstractor(dict, whitelist, config);
  for (const auto& e : events) abstractor.Push(e, sink);
  abstractor.Finish(sink);
  return out;
}

}  // namespace motivelog
