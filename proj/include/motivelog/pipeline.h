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

#ifndef MOTIVELOG_PIPELINE_H_
#define MOTIVELOG_PIPELINE_H_

#include <span>
#include <string>
#include <vector>

#include "motivelog/analytics.h"
#include "motivelog/core_model.h"
#include "motivelog/edge_abstractor.h"
#include "motivelog/motive_classifier.h"
#include "motivelog/sessionizer.h"

namespace motivelog {

struct PipelineAssets {
  Dictionary dictionary;
  Whitelist whitelist;
  MotiveMapping mapping;
  KeywordRuleSet rules = KeywordRuleSet::Default();
  AppCategoryMap app_categories;
};

struct PipelineResult {
  std::vector<TextInputRecord> records;  // prefiltered and classified
  RecordAudit audit;
  RedactionReport redaction;
  std::uint64_t word_events = 0;
};

// abstract -> sessions -> prefilter -> classify, in process. Events are
// pushed one at a time so that only records are held in memory.
class Pipeline : private AbstractionSink {
 public:
  Pipeline(const PipelineAssets& assets, SessionConfig config = {});

  void Push(const FieldSnapshotEvent& event);
  PipelineResult Finish();

 private:
  void OnWordEvent(const WordEvent& event) override;
  void OnSessionClosed(const SessionInfo& info) override;

  const PipelineAssets& assets_;
  EdgeAbstractor abstractor_;
  RecordBuilder builder_;
  PipelineResult result_;
};

PipelineResult RunPipeline(std::span<const FieldSnapshotEvent> events,
                           const PipelineAssets& assets,
                           SessionConfig config = {});

// Motives entering the words-per-input rank test.
std::vector<Motive> RankTestMotives();

// Machine-readable statistics report (stats.json) and the plot-ready table
// with one row per group (stats.tsv).
std::string StatsReportJson(std::span<const TextInputRecord> records);
std::string StatsReportTsv(std::span<const TextInputRecord> records);

std::string ComparisonJson(const ComparisonTable& table);
std::string ComparisonTsv(const ComparisonTable& table);
std::string LongTailJson(const LongTailReport& report);

}  // namespace motivelog

#endif  // MOTIVELOG_PIPELINE_H_
