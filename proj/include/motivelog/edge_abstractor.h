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

#ifndef MOTIVELOG_EDGE_ABSTRACTOR_H_
#define MOTIVELOG_EDGE_ABSTRACTOR_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motivelog/core_model.h"
#include "motivelog/sessionizer.h"

namespace motivelog {

// Maximal runs of letters, marks, digits and apostrophes.
std::vector<std::string> Tokenize(std::string_view content);

struct WordDelta {
  WordEventKind kind;
  std::string token;

  bool operator==(const WordDelta&) const = default;
};

// Token-level diff over a longest-common-subsequence alignment. A gap holding
// exactly one removed and one added token collapses into one Changed delta.
std::vector<WordDelta> DiffTokens(std::span<const std::string> old_tokens,
                                  std::span<const std::string> new_tokens);

struct AbstractedToken {
  std::vector<CategoryId> categories;
  std::optional<std::string> whitelist_token;

  bool operator==(const AbstractedToken&) const = default;
};

AbstractedToken AbstractToken(std::string_view token, const Dictionary& dict,
                              const Whitelist& whitelist);

class AbstractionSink {
 public:
  virtual ~AbstractionSink() = default;
  virtual void OnWordEvent(const WordEvent& event) = 0;
  virtual void OnSessionClosed(const SessionInfo& info) = 0;
};

// Streaming snapshot -> word event transform. Raw text does not leave this
// class; only category ids and whitelisted tokens do.
//
// The trailing token of a snapshot whose content ends inside a word is held
// back until a separator follows it, a later snapshot replaces it, or the
// session ends.
class EdgeAbstractor {
 public:
  EdgeAbstractor(const Dictionary& dict, const Whitelist& whitelist,
                 SessionConfig config = {});

  // Events must be sorted by (participant_id, ts); throws ValidationError
  // ("unsorted input") otherwise.
  void Push(const FieldSnapshotEvent& event, AbstractionSink& sink);
  void Finish(AbstractionSink& sink);

 private:
  struct Pending {
    std::string token;
    WordEventKind kind;
    Timestamp ts;
  };
  struct Session {
    SessionInfo info;
    std::vector<std::string> base;  // finalized tokens
    std::optional<Pending> pending;
  };

  void OpenSession(const FieldSnapshotEvent& event, const std::string& sid);
  void CloseSession(AbstractionSink& sink);
  void ApplySnapshot(const FieldSnapshotEvent& event, AbstractionSink& sink);
  void Emit(WordEventKind kind, std::string_view token, Timestamp ts,
            AbstractionSink& sink);

  const Dictionary& dict_;
  const Whitelist& whitelist_;
  SessionAssigner assigner_;
  std::optional<Session> session_;
  std::optional<std::string> last_participant_;
  Timestamp last_ts_ = 0;
  std::set<std::string> finished_participants_;
};

struct AbstractionResult {
  std::vector<WordEvent> word_events;
  std::vector<SessionInfo> sessions;
};

AbstractionResult ProcessStream(std::span<const FieldSnapshotEvent> events,
                                const Dictionary& dict,
                                const Whitelist& whitelist,
                                SessionConfig config = {});

}  // namespace motivelog

#endif  // MOTIVELOG_EDGE_ABSTRACTOR_H_
