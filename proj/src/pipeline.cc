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

#include "motivelog/pipeline.h"

#include "json.hpp"

namespace motivelog {
namespace {

using nlohmann::ordered_json;

ordered_json ToJson(const GroupStats& g) {
  return {{"label", g.label}, {"n", g.n}, {"mean", g.mean}, {"sd", g.sd}};
}

ordered_json ToJson(const GroupedStats& s) {
  ordered_json groups = ordered_json::array();
  for (const auto& g : s.groups) groups.push_back(ToJson(g));
  return groups;
}

ordered_json NotesJson(const std::vector<std::string>& notes) {
  ordered_json out = ordered_json::array();
  for (const auto& n : notes) out.push_back(n);
  return out;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Pipeline::Pipeline(const PipelineAssets& assets, SessionConfig config)
    : assets_(assets),
      abstractor_(assets.dictionary, assets.whitelist, config),
      builder_(&assets.app_categories) {}

void Pipeline::Push(const FieldSnapshotEvent& event) {
  abstractor_.Push(event, *this);
}

void Pipeline::OnWordEvent(const WordEvent& event) {
  ++result_.word_events;
  builder_.Add(event);
}

void Pipeline::OnSessionClosed(const SessionInfo& info) {
  if (auto record = builder_.Close(info)) {
    result_.records.push_back(std::move(*record));
  }
}

PipelineResult Pipeline::Finish() {
  abstractor_.Finish(*this);
  result_.audit = builder_.audit();
  result_.redaction = PrefilterSingleParticipant(result_.records);
  ClassifyRecords(result_.records, assets_.mapping, assets_.rules);
  return std::move(result_);
}

PipelineResult RunPipeline(std::span<const FieldSnapshotEvent> events,
                           const PipelineAssets& assets,
                           SessionConfig config) {
  Pipeline pipeline(assets, config);
  for (const auto& e : events) pipeline.Push(e);
  return pipeline.Finish();
}

std::vector<Motive> RankTestMotives() {
  return {Motive::kMessaging, Motive::kPosting,   Motive::kCommenting,
          Motive::kSearch,    Motive::kDataInput, Motive::kOther};
}

std::string StatsReportJson(std::span<const TextInputRecord> records) {
  ordered_json j;
  const CoverageReport cov = Coverage(records);
  ordered_json shares = ordered_json::object();
  ordered_json counts = ordered_json::object();
  for (Motive m : kCodedMotives) {
    const std::string name(MotiveName(m));
    auto c = cov.labeled_counts.find(m);
    counts[name] = c == cov.labeled_counts.end() ? 0 : c->second;
    auto s = cov.labeled_shares.find(m);
    shares[name] = s == cov.labeled_shares.end() ? 0.0 : s->second;
  }
  j["records"] = cov.records;
  j["coverage"] = {{"prompted", cov.prompted},
                   {"labeled", cov.labeled},
                   {"prompt_rate", cov.prompt_rate},
                   {"label_of_prompted", cov.label_of_prompted},
                   {"label_overall", cov.label_overall},
                   {"labeled_counts", counts},
                   {"labeled_shares", shares}};
  std::vector<std::string> notes;
  for (GroupBy by : {GroupBy::kMotive, GroupBy::kAppCategory}) {
    const char* key = by == GroupBy::kMotive ? "by_motive" : "by_app_category";
    GroupedStats words = WordsPerInputStats(records, by);
    GroupedStats rate = MatchingRateStats(records, by);
    j["words_per_input"][key] = ToJson(words);
    j["matching_rate"][key] = ToJson(rate);
    notes.insert(notes.end(), words.notes.begin(), words.notes.end());
    notes.insert(notes.end(), rate.notes.begin(), rate.notes.end());
  }
  const std::vector<Motive> motives = RankTestMotives();
  try {
    const KwDunnResult test = WordsPerInputTest(records, motives, &notes);
    ordered_json dunn = ordered_json::array();
    for (const auto& d : test.pairwise) {
      dunn.push_back({{"a", test.labels[d.a]},
                      {"b", test.labels[d.b]},
                      {"z", d.z},
                      {"p_raw", d.p_raw},
                      {"p_adjusted", d.p_adjusted}});
    }
    j["kruskal_wallis"] = {{"groups", test.labels},
                           {"h", test.kw.h},
                           {"df", test.kw.df},
                           {"p", test.kw.p},
                           {"dunn", dunn}};
  } catch (const StatsError& e) {
    j["kruskal_wallis"] = nullptr;
    notes.push_back(std::string("rank test skipped: ") + e.what());
  }
  j["notes"] = NotesJson(notes);
  return j.dump(2) + "\n";
}

std::string StatsReportTsv(std::span<const TextInputRecord> records) {
  std::string out =
      "grouping\tgroup\tn\twords_mean\twords_sd\tmatching_rate_mean\t"
      "matching_rate_sd\n";
  for (GroupBy by : {GroupBy::kMotive, GroupBy::kAppCategory}) {
    const GroupedStats words = WordsPerInputStats(records, by);
    const GroupedStats rate = MatchingRateStats(records, by);
    for (const auto& w : words.groups) {
      const GroupStats* r = nullptr;
      for (const auto& g : rate.groups) {
        if (g.label == w.label) r = &g;
      }
      out += by == GroupBy::kMotive ? "motive" : "app_category";
      out += '\t' + w.label + '\t' + std::to_string(w.n) + '\t' +
             Fixed(w.mean) + '\t' + Fixed(w.sd) + '\t' +
             (r ? Fixed(r->mean) : "") + '\t' + (r ? Fixed(r->sd) : "") +
             '\n';
    }
  }
  return out;
}

std::string ComparisonJson(const ComparisonTable& table) {
  ordered_json rows = ordered_json::array();
  auto side = [](const ComparisonSide& s) {
    return ordered_json{{"matching_rate", ToJson(s.matching_rate)},
                        {"words", ToJson(s.words)}};
  };
  for (const auto& r : table.rows) {
    rows.push_back({{"motive", r.motive_label},
                    {"app_category", r.app_label},
                    {"motive_side", side(r.motive_side)},
                    {"app_side", side(r.app_side)}});
  }
  ordered_json j{{"rows", rows}, {"flagged", NotesJson(table.flagged)}};
  return j.dump(2) + "\n";
}

std::string ComparisonTsv(const ComparisonTable& table) {
  std::string out =
      "selection\tside\tn\tmatching_rate_mean\tmatching_rate_sd\t"
      "words_mean\twords_sd\n";
  auto row = [&](const std::string& label, const char* side,
                 const ComparisonSide& s) {
    out += label + '\t' + side + '\t' + std::to_string(s.words.n) + '\t' +
           Fixed(s.matching_rate.mean) + '\t' + Fixed(s.matching_rate.sd) +
           '\t' + Fixed(s.words.mean) + '\t' + Fixed(s.words.sd) + '\n';
  };
  for (const auto& r : table.rows) {
    row(r.motive_label, "motive", r.motive_side);
    row(r.app_label, "app_category", r.app_side);
  }
  return out;
}

std::string LongTailJson(const LongTailReport& report) {
  ordered_json top = ordered_json::array();
  for (const auto& f : report.top) {
    top.push_back({{"prompt", f.prompt}, {"count", f.count}});
  }
  ordered_json j{{"top", top},
                 {"covered", report.covered},
                 {"prompted", report.prompted},
                 {"share", report.share}};
  return j.dump(2) + "\n";
}

}  // namespace motivelog
