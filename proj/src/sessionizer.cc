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

#include "motivelog/sessionizer.h"

#include <algorithm>
#include <unordered_map>

#include "motivelog/hashing.h"

namespace motivelog {

std::string MakeSessionId(std::string_view participant_id, Timestamp first_ts,
                          std::string_view field_id) {
  Fnv1a64 h;
  h.UpdateField(participant_id);
  h.UpdateField(std::to_string(first_ts));
  h.UpdateField(field_id);
  return "s" + ToHex64(h.digest());
}

SessionAssigner::Assignment SessionAssigner::Assign(
    const FieldSnapshotEvent& event) {
  const bool same_key = current_ && current_->participant_id ==
                                        event.participant_id &&
                        current_->app_id == event.app_id &&
                        current_->field_id == event.field_id;
  const bool within_gap =
      same_key && event.ts - current_->last_ts <= config_.gap_timeout.count();
  if (within_gap) {
    current_->last_ts = event.ts;
    return {&current_->session_id, false};
  }
  current_ = Open{event.participant_id, event.app_id, event.field_id, event.ts,
                  MakeSessionId(event.participant_id, event.ts,
                                event.field_id)};
  return {&current_->session_id, true};
}

std::vector<std::string> AssignSessions(
    std::span<const FieldSnapshotEvent> events, SessionConfig config) {
  SessionAssigner assigner(config);
  std::vector<std::string> ids;
  ids.reserve(events.size());
  for (const auto& e : events) ids.push_back(*assigner.Assign(e).session_id);
  return ids;
}

void RecordBuilder::Add(const WordEvent& event) {
  if (!pending_) {
    pending_.emplace();
    pending_->session_id = event.session_id;
    pending_->participant_id = event.participant_id;
    pending_->app_id = event.app_id;
  } else if (pending_->session_id != event.session_id) {
    throw ValidationError("word event for session " + event.session_id +
                          " arrived while session " + pending_->session_id +
                          " was open");
  }
  TextInputRecord& r = *pending_;
  switch (event.kind) {
    case WordEventKind::kAdded:
      ++r.words_added;
      break;
    case WordEventKind::kChanged:
      ++r.words_changed;
      break;
    case WordEventKind::kRemoved:
      ++r.words_removed;
      return;  // removed words do not count towards the input
  }
  if (!event.category_ids.empty()) {
    ++r.matched_words;
    r.many_hot.merge(event.category_ids);
  }
}

std::optional<TextInputRecord> RecordBuilder::Close(const SessionInfo& info) {
  ++audit_.sessions;
  if (!pending_) {
    ++audit_.empty_sessions;
    return std::nullopt;
  }
  if (pending_->session_id != info.session_id) {
    throw ValidationError("session " + info.session_id +
                          " closed while word events of " +
                          pending_->session_id + " were pending");
  }
  TextInputRecord r = std::move(*pending_);
  pending_.reset();
  r.total_words = r.words_added + r.words_changed;
  if (r.total_words == 0) {
    ++audit_.zero_word_sessions;
    return std::nullopt;
  }
  r.participant_id = info.participant_id;
  r.app_id = info.app_id;
  r.prompt_text = info.prompt;
  r.motive = info.prompt ? Motive::kUnlabeled : Motive::kNoPrompt;
  r.start_ts = info.start_ts;
  r.end_ts = std::max(info.end_ts, info.start_ts);
  if (app_categories_ != nullptr) {
    if (auto it = app_categories_->find(r.app_id);
        it != app_categories_->end()) {
      r.app_category = it->second;
    }
  }
  return r;
}

BuiltRecords BuildRecords(std::span<const WordEvent> word_events,
                          std::span<const SessionInfo> sessions,
                          const AppCategoryMap& app_categories) {
  BuiltRecords out;
  RecordBuilder builder(&app_categories);
  std::size_t next = 0;
  for (const auto& info : sessions) {
    while (next < word_events.size() &&
           word_events[next].session_id == info.session_id) {
      builder.Add(word_events[next++]);
    }
    if (auto record = builder.Close(info)) {
      out.records.push_back(std::move(*record));
    }
  }
  if (next != word_events.size()) {
    throw ValidationError("word event for unknown or out-of-order session " +
                          word_events[next].session_id);
  }
  out.audit = builder.audit();
  return out;
}

}  // namespace motivelog
