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

#ifndef MOTIVELOG_CORPUSGEN_H_
#define MOTIVELOG_CORPUSGEN_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "motivelog/core_model.h"

namespace motivelog::corpusgen {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

struct CorpusSpec {
  std::uint64_t seed = 42;
  int participants = 624;
  int days = 30;
  MeanSd inputs_per_day{23.40, 28.23};
  std::map<Motive, double> motive_mix = {
      {Motive::kMessaging, 0.440}, {Motive::kSearch, 0.338},
      {Motive::kDataInput, 0.122}, {Motive::kAmbiguous, 0.049},
      {Motive::kCommenting, 0.032}, {Motive::kPosting, 0.010},
      {Motive::kOther, 0.009}};
  double prompt_availability = 0.595;
  double mapped_prompt_rate = 0.884;
  std::map<Motive, MeanSd> words_per_input = {
      {Motive::kMessaging, {12.43, 18.80}},
      {Motive::kPosting, {12.84, 19.00}},
      {Motive::kCommenting, {12.65, 20.28}},
      {Motive::kSearch, {2.30, 6.80}},
      {Motive::kDataInput, {2.73, 9.29}},
      {Motive::kOther, {5.32, 9.42}},
      {Motive::kAmbiguous, {4.00, 10.00}}};
  std::map<Motive, double> match_probability = {
      {Motive::kMessaging, 0.5064}, {Motive::kPosting, 0.3882},
      {Motive::kCommenting, 0.4178}, {Motive::kSearch, 0.1302},
      {Motive::kDataInput, 0.30},   {Motive::kOther, 0.35},
      {Motive::kAmbiguous, 0.20}};
  int prompt_vocabulary_size = 400;  // coded prompts across all motives
  double prompt_zipf_exponent = 1.0;
  int uncoded_vocabulary_size = 1000;
  double single_participant_prompt_rate = 0.25;
  double change_rate = 1.31 / 9.44;   // counted ops that edit the last word
  double remove_rate = 1.50 / 9.44;   // uncounted removals per counted op
  double partial_snapshot_rate = 0.5;  // words observed mid-typing
  std::uint64_t asset_seed = 7;        // lexicon, dictionary and apps
};

// Throws ValidationError naming the offending field.
void ValidateSpec(const CorpusSpec& spec);

// Reads overrides from a JSON object; unknown keys are rejected.
CorpusSpec SpecFromJson(std::string_view json_text);
std::string SpecToJson(const CorpusSpec& spec);

enum class PromptKind { kNone, kMapped, kUncoded, kParticipantUnique };
std::string_view PromptKindName(PromptKind kind);

struct TruthRow {
  std::string session_id;
  std::string participant_id;
  std::string app_id;
  Motive motive = Motive::kMessaging;
  PromptKind prompt_kind = PromptKind::kNone;
  std::optional<std::string> prompt;  // raw text as shown in the field
  std::uint64_t words_added = 0;
  std::uint64_t words_changed = 0;
  std::uint64_t words_removed = 0;
  std::uint64_t total_words = 0;
  std::uint64_t matched_words = 0;
};

std::string TruthHeader();
std::string ToTsvLine(const TruthRow& row);

// Dictionary, whitelist, prompt mapping and app categories the corpus is
// generated against. Depends only on asset_seed and vocabulary sizes.
struct CorpusAssets {
  Dictionary dictionary;
  Whitelist whitelist;
  std::vector<std::string> whitelist_words;
  MotiveMapping mapping;
  AppCategoryMap app_categories;
};

CorpusAssets BuildAssets(const CorpusSpec& spec);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform();  // [0, 1) with 53 random bits
  bool Bernoulli(double p) { return Uniform() < p; }
  std::uint64_t Below(std::uint64_t n);  // uniform in [0, n)
  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Integer distribution on {min, min+1, ...} proportional to a normal density
// whose location is solved so that the mean equals `target.mean`.
class DiscreteTruncatedNormal {
 public:
  DiscreteTruncatedNormal(int min, MeanSd target);
  int Sample(Rng& rng) const;
  double mean() const { return mean_; }
  double sd() const { return sd_; }
  double location() const { return location_; }

 private:
  int min_;
  double location_ = 0.0;
  double mean_ = 0.0;
  double sd_ = 0.0;
  std::vector<double> cdf_;
};

// Zipf over ranks 0..size-1 with P(rank r) proportional to 1 / (r+1)^s.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t size, double exponent);
  std::size_t Sample(Rng& rng) const;
  std::size_t size() const { return cdf_.size(); }
  double Probability(std::size_t rank) const;

 private:
  std::vector<double> cdf_;
};

struct CorpusSinks {
  std::function<void(const FieldSnapshotEvent&)> on_event;
  std::function<void(const TruthRow&)> on_truth;  // optional
};

struct GenerationSummary {
  std::uint64_t events = 0;
  std::uint64_t sessions = 0;
};

// Streams events ordered by (participant, ts). Deterministic in the spec.
GenerationSummary Generate(const CorpusSpec& spec, const CorpusAssets& assets,
                           const CorpusSinks& sinks);

struct Corpus {
  std::vector<FieldSnapshotEvent> events;
  std::vector<TruthRow> truth;
};

Corpus GenerateCorpus(const CorpusSpec& spec, const CorpusAssets& assets);

}  // namespace motivelog::corpusgen

#endif  // MOTIVELOG_CORPUSGEN_H_
