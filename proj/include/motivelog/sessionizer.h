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

#ifndef MOTIVELOG_SESSIONIZER_H_
#define MOTIVELOG_SESSIONIZER_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motivelog/core_model.h"

namespace motivelog {

struct SessionConfig {
  // A gap strictly greater than this starts a new session.
  std::chrono::milliseconds gap_timeout{30'000};
};

// "s" followed by 16 hex digits derived from the session's opening key.
std::string MakeSessionId(std::string_view participant_id,
                          Timestamp first_ts, std::string_view field_id);

// Streaming session boundary detection over events sorted by
// (participant_id, ts). A session is one field activation of one
// participant, split further by idle gaps.
class SessionAssigner {
 public:
  struct Assignment {
    const std::string* session_id;  // valid until the next Assign()
    bool starts_session;
  };

  explicit SessionAssigner(SessionConfig config = {}) : config_(config) {}

  Assignment Assign(const FieldSnapshotEvent& event);
  void Reset() { current_.reset(); }

 private:
  struct Open {
    std::string participant_id;
    std::string app_id;
    std::string field_id;
    Timestamp last_ts;
    std::string session_id;
  };

  SessionConfig config_;
  std::optional<Open> current_;
};

// Session id for every event, in input order.
std::vector<std::string> AssignSessions(
    std::span<const FieldSnapshotEvent> events, SessionConfig config = {});

// Per-session metadata produced alongside the word events. The prompt is
// that of the session's first snapshot, normalized; it is absent when the
// snapshot had none or it normalized to empty.
struct SessionInfo {
  std::string session_id;
  std::string participant_id;
  std::string app_id;
  std::optional<std::string> prompt;
  Timestamp start_ts = 0;
  Timestamp end_ts = 0;

  bool operator==(const SessionInfo&) const = default;
};

struct RecordAudit {
  std::uint64_t sessions = 0;
  std::uint64_t empty_sessions = 0;  // no word events at all
  std::uint64_t zero_word_sessions = 0;  // only Removed events
};

// Aggregates the word events of one session at a time into a
// TextInputRecord. Word events of a session must arrive before its Close().
class RecordBuilder {
 public:
  explicit RecordBuilder(const AppCategoryMap* app_categories = nullptr)
      : app_categories_(app_categories) {}

  // Throws ValidationError if the event belongs to a different session than
  // the one currently accumulating.
  void Add(const WordEvent& event);

  // Finishes `info.session_id`. Returns nothing for sessions whose
  // total_words is zero; those are tallied in audit().
  std::optional<TextInputRecord> Close(const SessionInfo& info);

  const RecordAudit& audit() const { return audit_; }

 private:
  const AppCategoryMap* app_categories_;
  std::optional<TextInputRecord> pending_;
  RecordAudit audit_;
};

struct BuiltRecords {
  std::vector<TextInputRecord> records;
  RecordAudit audit;
};

// Batch form of RecordBuilder. `sessions` lists every session in emission
// order; word events are grouped by session in the same order.
BuiltRecords BuildRecords(std::span<const WordEvent> word_events,
                          std::span<const SessionInfo> sessions,
                          const AppCategoryMap& app_categories);

}  // namespace motivelog

#endif  // MOTIVELOG_SESSIONIZER_H_
