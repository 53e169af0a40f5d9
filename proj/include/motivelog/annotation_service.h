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

#ifndef MOTIVELOG_ANNOTATION_SERVICE_H_
#define MOTIVELOG_ANNOTATION_SERVICE_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "motivelog/agreement.h"
#include "motivelog/core_model.h"
#include "motivelog/motive_classifier.h"

namespace httplib {
class Server;
}

namespace motivelog {

struct ServiceConfig {
  std::string store_path;  // append-only log; "<path>.snapshot.tsv" beside it
  std::vector<PromptFrequency> residual;  // coding queue, any order
  MotiveMapping base_mapping;             // e.g. the autocode output
  std::size_t round_size = 50;            // first round = calibration round
  std::size_t snapshot_every = 25;        // log entries between snapshots
  std::optional<std::string> static_dir;  // console bundle
};

// Rater and resolver ids: 1-32 characters of [A-Za-z0-9_-].
bool IsValidRaterId(std::string_view id);

// The manual coding workflow behind the REST interface. Every handler is
// callable in process; Mount() binds them to an HTTP server.
class AnnotationService {
 public:
  struct Response {
    int status = 200;
    std::string body;  // JSON
    std::string content_type = "application/json";
  };

  // Replays the log at config.store_path; throws IoError if the store cannot
  // be opened for appending.
  explicit AnnotationService(ServiceConfig config);
  ~AnnotationService();

  Response NextPrompt(std::string_view rater) const;
  Response PostCode(std::string_view json_body, bool amend);
  Response Agreement(std::string_view a, std::string_view b) const;
  Response ListDisagreements(std::string_view a, std::string_view b) const;
  Response Resolve(std::string_view json_body);
  Response ExportMapping(bool raw_tsv) const;
  Response ExportRaterCodes(std::string_view rater) const;

  // Latest code per prompt of one rater.
  RaterCodes CodesOf(std::string_view rater) const;
  MotiveMapping FinalMapping() const;
  void WriteSnapshot() const;

  void Mount(httplib::Server& server);

 private:
  struct Code {
    Motive motive;
    int round;
    int version;
    std::int64_t ts;
  };
  struct Resolution {
    Motive motive;
    std::string resolver;
    std::int64_t ts;
  };
  // Immutable once published; readers take a reference-counted copy.
  struct State {
    std::map<std::string, std::map<std::string, Code>> codes;  // rater->prompt
    std::map<std::string, Resolution> resolutions;
    std::uint64_t log_entries = 0;
  };

  std::shared_ptr<const State> Snapshot() const;
  void Publish(std::shared_ptr<const State> state);
  void Append(const std::string& line);
  void ApplyLogLine(State& state, std::string_view line) const;
  int RoundOf(const std::string& prompt) const;

  ServiceConfig config_;
  std::vector<PromptFrequency> queue_;  // frequency descending
  std::map<std::string, std::size_t> queue_index_;
  std::mutex write_mu_;
  std::shared_ptr<const State> state_;
  std::FILE* log_ = nullptr;
};

}  // namespace motivelog

#endif  // MOTIVELOG_ANNOTATION_SERVICE_H_
