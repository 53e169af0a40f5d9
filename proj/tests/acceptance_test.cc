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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "motivelog/agreement.h"
#include "motivelog/analytics.h"
#include "motivelog/cli.h"
#include "motivelog/corpusgen.h"
#include "motivelog/edge_abstractor.h"
#include "motivelog/formats.h"
#include "motivelog/hashing.h"
#include "motivelog/motive_classifier.h"
#include "motivelog/pipeline.h"
#include "motivelog/text_util.h"
#include "testing/temp_dir.h"

namespace motivelog {
namespace {

using corpusgen::BuildAssets;
using corpusgen::CorpusAssets;
using corpusgen::CorpusSpec;
using corpusgen::Generate;
using corpusgen::Rng;
using corpusgen::ZipfSampler;
using nlohmann::json;
using text::FoldCase;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------- P1

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class UnicodeText {
 public:
  explicit UnicodeText(std::uint64_t seed) : rng_(seed) {}

  std::string Word(const std::vector<std::string>& known) {
    const int kind = Pick(10);
    if (kind < 2) return known[Pick(known.size())];
    if (kind == 2) {
      std::string w = known[Pick(known.size())];
      std::transform(w.begin(), w.end(), w.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      return w;
    }
    static const std::pair<char32_t, char32_t> kRanges[] = {
        {0x61, 0x7A},     {0x41, 0x5A},     {0x30, 0x39},     {0xC0, 0x24F},
        {0x391, 0x3C9},   {0x410, 0x44F},   {0x5D0, 0x5EA},   {0x627, 0x64A},
        {0x905, 0x939},   {0x3041, 0x3096}, {0x4E00, 0x9FFF}, {0xAC00, 0xD7A3},
        {0x1F600, 0x1F64F}, {0x300, 0x36F}, {0x1D400, 0x1D7FF}, {0x21, 0x2F}};
    std::string w;
    const int len = 1 + Pick(9);
    for (int i = 0; i < len; ++i) {
      const auto& [lo, hi] = kRanges[Pick(std::size(kRanges))];
      AppendUtf8(w, lo + static_cast<char32_t>(Pick(hi - lo + 1)));
    }
    return w;
  }

  std::string Separator() {
    static const char32_t kSeps[] = {0x20, 0x20, 0x20, 0x0A, 0x09, 0xA0,
                                     0x3000, 0x2009, 0x200D, 0x2E, 0x2C, 0x21};
    std::string s;
    AppendUtf8(s, kSeps[Pick(std::size(kSeps))]);
    return s;
  }

  std::uint64_t Pick(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

std::size_t CodePointLength(std::string_view utf8) {
  return static_cast<std::size_t>(std::count_if(
      utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool ValidMetadata(const json& line, const std::set<std::string>& participants,
                   const std::set<std::string>& apps) {
  static const std::regex kSid("s[0-9a-f]{16}");
  static const std::set<std::string> kKeys = {"ts", "pid", "app", "sid", "kind", "cats", "wl"};
  static const std::set<std::string> kKinds = {"added", "changed", "removed"};
  for (const auto& [key, value] : line.items()) {
    if (!kKeys.contains(key)) return false;
  }
  if (!line.at("ts").is_number_integer()) return false;
  if (!participants.contains(line.at("pid").get<std::string>())) return false;
  if (!apps.contains(line.at("app").get<std::string>())) return false;
  if (!std::regex_match(line.at("sid").get<std::string>(), kSid)) return false;
  if (!kKinds.contains(line.at("kind").get<std::string>())) return false;
  for (const auto& c : line.at("cats")) {
    if (!c.is_number_unsigned()) return false;
  }
  return true;
}

Outcome P1PrivacyFuzz() {
  const auto start = Clock::now();
  const std::vector<std::string> whitelisted = {"ok", "ja", "nein", "hallo", "yes",
                                                "café", "straße", "lol", "😀", "zürich"};
  const std::vector<std::string> vocabulary = {"ok", "ja", "hallo", "happy", "happiness",
                                               "sad", "sadly", "work", "meeting", "café",
                                               "straße", "secret", "password", "anna"};
  Whitelist whitelist;
  for (const auto& w : whitelisted) whitelist.Add(w);
  Dictionary dict;
  dict.AddCategory(1, "posemo");
  dict.AddCategory(2, "negemo");
  dict.AddCategory(3, "work");
  dict.AddEntry("happ", true, {1});
  dict.AddEntry("sad", true, {2});
  dict.AddEntry("work", false, {3});
  dict.AddEntry("meeting", false, {3});

  UnicodeText text(20240601);
  std::vector<FieldSnapshotEvent> events;
  std::set<std::string> participants, apps;
  constexpr int kParticipants = 100;
  constexpr int kSessionsEach = 100;
  for (int p = 0; p < kParticipants; ++p) {
    const std::string pid = "p" + std::to_string(p);
    participants.insert(pid);
    Timestamp t = 1'000'000;
    for (int s = 0; s < kSessionsEach; ++s) {
      const std::string app = "app" + std::to_string(text.Pick(7));
      apps.insert(app);
      t += 40'000 + text.Pick(100'000);
      std::vector<std::string> words;
      const int snapshots = 1 + static_cast<int>(text.Pick(6));
      for (int k = 0; k < snapshots; ++k) {
        const int op = static_cast<int>(text.Pick(6));
        if (op <= 2 || words.empty()) {
          words.push_back(text.Word(vocabulary));
        } else if (op == 3) {
          words.back() = text.Word(vocabulary);
        } else if (op == 4) {
          words.erase(words.begin() + text.Pick(words.size()));
        } else {
          words.back() += text.Word(vocabulary);
        }
        std::string content;
        for (const auto& w : words) content += w + text.Separator();
        if (text.Pick(2)) content += text.Word(vocabulary);
        FieldSnapshotEvent e;
        e.ts = t;
        e.participant_id = pid;
        e.app_id = app;
        e.field_id = "f" + std::to_string(s % 3);
        if (k == 0 && text.Pick(2)) e.prompt = text.Word(vocabulary);
        e.content = std::move(content);
        events.push_back(std::move(e));
        t += 1 + text.Pick(3000);
      }
    }
  }

  const AbstractionResult result = ProcessStream(events, dict, whitelist);
  std::uint64_t violations = 0, carried = 0;
  for (const auto& we : result.word_events) {
    const json line = json::parse(formats::ToJsonLine(we));
    if (!ValidMetadata(line, participants, apps)) {
      ++violations;
      continue;
    }
    if (line.contains("wl")) {
      const std::string token = line.at("wl").get<std::string>();
      ++carried;
      if (!whitelist.Contains(FoldCase(token)) && CodePointLength(token) >= 2) ++violations;
    }
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = violations == 0 && result.sessions.size() >= 10'000 && secs < 60.0 && carried > 0;
  o.detail = std::to_string(result.sessions.size()) + " sessions, " +
             std::to_string(result.word_events.size()) + " word events, " +
             std::to_string(carried) + " whitelisted tokens carried, " +
             std::to_string(violations) + " violations, " + Fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------- P2

Outcome P2ClassifierFidelity() {
  const CorpusAssets assets = BuildAssets(CorpusSpec{});
  const KeywordRuleSet rules = KeywordRuleSet::Default();
  const std::vector<std::pair<std::string, Motive>> table = {
      {"Type a message", Motive::kMessaging},
      {"Write a caption", Motive::kPosting},
      {"Tweet your reply", Motive::kCommenting},
      {"Search apps, web, and more...", Motive::kSearch},
      {"email address", Motive::kDataInput}};
  int correct = 0;
  std::string misses;
  for (const auto& [prompt, expected] : table) {
    const Motive got = Classify(NormalizePrompt(prompt), assets.mapping, rules);
    if (got == expected) {
      ++correct;
    } else {
      misses += " '" + prompt + "'->" + std::string(MotiveName(got));
    }
  }
  return {correct == 5, std::to_string(correct) + "/5 exact" + misses};
}

// ---------------------------------------------------------------- P3

Outcome P3KappaOracle() {
  const KappaResult two = CohenKappa(CountMatrix::FromRows({{20, 5}, {10, 15}}));
  // po = 35/50, pe = (25*30 + 25*20)/50^2.
  const double po = 35.0 / 50.0;
  const double pe = (25.0 * 30.0 + 25.0 * 20.0) / 2500.0;
  const double oracle = (po - pe) / (1.0 - pe);
  const KappaResult diag = CohenKappa(CountMatrix::FromRows({{12, 0, 0}, {0, 7, 0}, {0, 0, 30}}));
  const KappaResult ci = KappaFromAgreement(0.8973, 0.3941, 438);
  const auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
  const bool pass = std::abs(two.kappa - 0.4) <= 1e-9 && std::abs(two.kappa - oracle) <= 1e-12 &&
                    diag.kappa == 1.0 && round2(ci.kappa) == 0.83 && round2(ci.ci_low) == 0.78 &&
                    round2(ci.ci_high) == 0.88;
  return {pass, Fmt("kappa=%.12f, diagonal=%.3f, kappa_ci=%.4f [%.4f, ", two.kappa, diag.kappa,
                    ci.kappa, ci.ci_low) +
                    Fmt("%.4f]", ci.ci_high)};
}

// ---------------------------------------------------------------- P4

// Tie-corrected H computed directly from its definition.
double OracleH(const std::vector<std::vector<double>>& groups) {
  std::vector<double> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  const double n = static_cast<double>(all.size());
  const auto rank = [&](double v) {
    double less = 0, equal = 0;
    for (double x : all) {
      less += x < v;
      equal += x == v;
    }
    return less + (equal + 1.0) / 2.0;
  };
  double sum = 0;
  for (const auto& g : groups) {
    double r = 0;
    for (double v : g) r += rank(v);
    sum += r * r / static_cast<double>(g.size());
  }
  double h = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
  std::map<double, double> ties;
  for (double v : all) ties[v] += 1;
  double t = 0;
  for (const auto& [v, c] : ties) t += c * c * c - c;
  return h / (1.0 - t / (n * n * n - n));
}

Outcome P4RankTests() {
  const std::vector<std::vector<double>> simple = {{1, 2}, {3, 4}};
  const double h = KruskalWallis(simple).h;

  std::mt19937_64 rng(99);
  double worst_dunn = 0, worst_oracle = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::vector<std::vector<double>> groups(2);
    for (auto& g : groups) {
      const int n = 2 + static_cast<int>(rng() % 30);
      for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(rng() % 6));
    }
    const double hk = KruskalWallis(groups).h;
    const auto dunn = DunnPosthoc(groups);
    worst_dunn = std::max(worst_dunn, std::abs(dunn.at(0).z * dunn.at(0).z - hk));
    worst_oracle = std::max(worst_oracle, std::abs(OracleH(groups) - hk));
  }

  std::normal_distribution<double> normal;
  std::vector<double> p;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<std::vector<double>> groups(3);
    for (auto& g : groups) {
      for (int i = 0; i < 30; ++i) g.push_back(normal(rng));
    }
    p.push_back(KruskalWallis(groups).p);
  }
  std::sort(p.begin(), p.end());
  double ks = 0;
  const double n = static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ks = std::max({ks, (i + 1) / n - p[i], p[i] - i / n});
  }
  const bool pass = std::abs(h - 2.4) <= 1e-9 && worst_dunn <= 1e-9 && worst_oracle <= 1e-9 &&
                    ks < 0.05;
  return {pass, Fmt("H=%.12f, max|z^2-H|=%.2e, max|H-oracle|=%.2e, KS=%.4f", h, worst_dunn,
                    worst_oracle, ks)};
}

// ---------------------------------------------------------------- P5

Outcome P5SyntheticRecovery() {
  const auto start = Clock::now();
  const CorpusSpec spec;
  const CorpusAssets assets = BuildAssets(spec);
  PipelineAssets pa{assets.dictionary, assets.whitelist, assets.mapping,
                    KeywordRuleSet::Default(), assets.app_categories};
  Pipeline pipeline(pa);
  Generate(spec, assets, {[&](const FieldSnapshotEvent& e) { pipeline.Push(e); }, nullptr});
  const PipelineResult result = pipeline.Finish();
  const double secs = Seconds(start);

  const CoverageReport cov = Coverage(result.records);
  const std::map<Motive, double> shares = {
      {Motive::kMessaging, 0.440}, {Motive::kSearch, 0.338},     {Motive::kDataInput, 0.122},
      {Motive::kCommenting, 0.032}, {Motive::kPosting, 0.010},   {Motive::kAmbiguous, 0.049},
      {Motive::kOther, 0.009}};
  const std::map<std::string, double> words = {{"Search", 2.30},     {"Messaging", 12.43},
                                               {"Posting", 12.84},   {"Commenting", 12.65},
                                               {"DataInput", 2.73},  {"Other", 5.32}};
  bool pass = result.records.size() >= 100'000 && secs < 300.0;
  std::string detail = std::to_string(result.records.size()) + " inputs;";
  for (const auto& [m, target] : shares) {
    const auto it = cov.labeled_shares.find(m);
    const double got = it == cov.labeled_shares.end() ? 0.0 : it->second;
    pass = pass && std::abs(got - target) <= 0.01;
    detail += " " + std::string(MotiveName(m)) + Fmt("=%.2f%%", 100 * got);
  }
  detail += ";";
  const GroupedStats wpi = WordsPerInputStats(result.records, GroupBy::kMotive);
  for (const auto& [label, target] : words) {
    const auto it = std::find_if(wpi.groups.begin(), wpi.groups.end(),
                                 [&](const GroupStats& g) { return g.label == label; });
    const double got = it == wpi.groups.end() ? 0.0 : it->mean;
    pass = pass && std::abs(got - target) <= 0.05 * target;
    detail += " " + label + Fmt("=%.2f", got);
  }
  const GroupedStats mr = MatchingRateStats(result.records, GroupBy::kMotive);
  const auto msg = std::find_if(mr.groups.begin(), mr.groups.end(),
                                [](const GroupStats& g) { return g.label == "Messaging"; });
  const double matching = msg == mr.groups.end() ? 0.0 : msg->mean;
  pass = pass && std::abs(matching - 0.5064) <= 0.01 &&
         std::abs(cov.prompt_rate - 0.595) <= 0.01 &&
         std::abs(cov.label_of_prompted - 0.884) <= 0.01;
  detail += Fmt("; matching(Messaging)=%.2f%%, prompt availability=%.2f%%, label coverage=%.2f%%",
                100 * matching, 100 * cov.prompt_rate, 100 * cov.label_of_prompted) +
            Fmt(", %.1f s", secs);
  return {pass, detail};
}

// ---------------------------------------------------------------- P6

Outcome P6LongTail() {
  constexpr std::size_t kVocabulary = 10'000;
  constexpr std::size_t kDraws = 1'000'000;
  const ZipfSampler zipf(kVocabulary, 1.0);
  Rng rng(2024);
  std::vector<std::uint64_t> counts(kVocabulary, 0);
  for (std::size_t i = 0; i < kDraws; ++i) ++counts[zipf.Sample(rng)];
  std::vector<PromptFrequency> freq;
  for (std::size_t r = 0; r < kVocabulary; ++r) {
    if (counts[r]) freq.push_back({"prompt " + std::to_string(r), counts[r]});
  }
  std::sort(freq.begin(), freq.end(), [](const PromptFrequency& a, const PromptFrequency& b) {
    return a.count != b.count ? a.count > b.count : a.prompt < b.prompt;
  });
  const LongTailReport report = LongTail(freq, kDraws, 10);
  double h10 = 0, hv = 0;
  for (std::size_t k = 1; k <= kVocabulary; ++k) {
    hv += 1.0 / static_cast<double>(k);
    if (k == 10) h10 = hv;
  }
  const double analytic = h10 / hv;
  return {std::abs(report.share - analytic) <= 0.005,
          Fmt("top-10 share=%.4f%%, analytic=%.4f%%", 100 * report.share, 100 * analytic)};
}

// ---------------------------------------------------------------- P7

// Largest absolute difference between numeric leaves; infinity on any
// structural mismatch.
double MaxNumericDiff(const json& a, const json& b) {
  if (a.type() != b.type() && !(a.is_number() && b.is_number())) return INFINITY;
  if (a.is_number()) return std::abs(a.get<double>() - b.get<double>());
  if (a.is_object() || a.is_array()) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0;
    if (a.is_object()) {
      for (const auto& [key, value] : a.items()) {
        if (!b.contains(key)) return INFINITY;
        worst = std::max(worst, MaxNumericDiff(value, b.at(key)));
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, MaxNumericDiff(a[i], b[i]));
      }
    }
    return worst;
  }
  return a == b ? 0.0 : INFINITY;
}

int Cli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  const int status = RunCli(args, in, out, err);
  if (status != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return status;
}

Outcome P7Composability() {
  testing::TempDir dir;
  const auto d = [&](const char* name) { return dir / name; };
  bool ok = Cli({"gen", "--seed", "11", "--participants", "40", "--days", "7", "--out",
                 d("events.jsonl"), "--dict-out", d("d.dic"), "--whitelist-out", d("wl.txt"),
                 "--mapping-out", d("map.tsv"), "--appcats-out", d("apps.tsv")}) == 0;
  ok = ok && Cli({"abstract", "--dict", d("d.dic"), "--whitelist", d("wl.txt"), "--in",
                  d("events.jsonl"), "--out", d("words.jsonl"), "--prompts-out",
                  d("prompts.jsonl")}) == 0;
  ok = ok && Cli({"sessions", "--in", d("words.jsonl"), "--prompts", d("prompts.jsonl"),
                  "--appcats", d("apps.tsv"), "--out", d("s1.jsonl")}) == 0;
  ok = ok && Cli({"prefilter", "--in", d("s1.jsonl"), "--out", d("s2.jsonl")}) == 0;
  ok = ok && Cli({"classify", "--in", d("s2.jsonl"), "--mapping", d("map.tsv"), "--out",
                  d("sessions.jsonl")}) == 0;
  ok = ok && Cli({"stats", "--in", d("sessions.jsonl"), "--out", d("stats.json")}) == 0;
  if (!ok) return {false, "CLI chain failed"};

  PipelineAssets assets;
  std::ifstream dic(d("d.dic")), wl(d("wl.txt")), map(d("map.tsv")), apps(d("apps.tsv"));
  assets.dictionary = formats::ParseDictionary(dic);
  assets.whitelist = formats::ParseWhitelist(wl);
  assets.mapping = formats::ParseMapping(map);
  assets.app_categories = formats::ParseAppCategories(apps);
  std::ifstream ev(d("events.jsonl"));
  const auto events = formats::ReadAll(ev, &formats::ParseEvent);
  const PipelineResult result = RunPipeline(events, assets);
  std::string expected;
  for (const auto& r : result.records) expected += formats::ToJsonLine(r) + "\n";
  const std::string chained = testing::ReadFile(d("sessions.jsonl"));
  const bool identical = chained == expected;
  const double diff = MaxNumericDiff(json::parse(testing::ReadFile(d("stats.json"))),
                                     json::parse(StatsReportJson(result.records)));
  return {identical && diff <= 1e-12,
          std::to_string(result.records.size()) + " records, sessions.jsonl " +
              (identical ? "bit-identical" : "DIFFERS") + ", sha256 " +
              Sha256Hex(chained).substr(0, 12) + Fmt(", max stats diff=%.2e", diff)};
}

// ---------------------------------------------------------------- P8

Outcome P8Prefilter() {
  std::mt19937_64 rng(8);
  int mismatches = 0;
  std::uint64_t redacted_total = 0;
  for (int corpus = 0; corpus < 1000; ++corpus) {
    std::vector<TextInputRecord> records;
    const int n = 1 + static_cast<int>(rng() % 200);
    const int participants = 1 + static_cast<int>(rng() % 12);
    const int prompts = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      TextInputRecord r;
      r.session_id = "s" + std::to_string(i);
      r.participant_id = "p" + std::to_string(rng() % participants);
      r.app_id = "app";
      if (rng() % 5) {
        r.prompt_text = "prompt " + std::to_string(rng() % prompts);
        r.motive = Motive::kUnlabeled;
      }
      records.push_back(std::move(r));
    }
    std::set<std::string> expected;
    std::set<std::string> expected_records;
    for (const auto& a : records) {
      if (!a.prompt_text) continue;
      std::set<std::string> pids;
      for (const auto& b : records) {
        if (b.prompt_text == a.prompt_text) pids.insert(b.participant_id);
      }
      if (pids.size() == 1) {
        expected.insert(Sha256Hex(*a.prompt_text));
        expected_records.insert(a.session_id);
      }
    }
    const RedactionReport report = PrefilterSingleParticipant(records);
    std::set<std::string> got;
    for (const auto& r : report.redacted) got.insert(r.prompt_hash);
    std::set<std::string> got_records;
    for (const auto& r : records) {
      if (r.prompt_text == kRedactedPrompt) got_records.insert(r.session_id);
    }
    if (got != expected || got_records != expected_records ||
        report.redacted_records != expected_records.size()) {
      ++mismatches;
    }
    redacted_total += got.size();
  }
  return {mismatches == 0, "1000 corpora, " + std::to_string(redacted_total) +
                               " redacted prompts, " + std::to_string(mismatches) +
                               " mismatches"};
}

// ---------------------------------------------------------------- P9

Outcome P9Throughput() {
  CorpusSpec spec;
  spec.participants = 180;
  const CorpusAssets assets = BuildAssets(spec);
  std::vector<FieldSnapshotEvent> events;
  events.reserve(1'100'000);
  Generate(spec, assets, {[&](const FieldSnapshotEvent& e) {
                            if (events.size() < 1'000'000) events.push_back(e);
                          },
                          nullptr});
  if (events.size() < 1'000'000) return {false, "generator produced too few events"};
  PipelineAssets pa{assets.dictionary, assets.whitelist, assets.mapping,
                    KeywordRuleSet::Default(), assets.app_categories};
  const auto start = Clock::now();
  Pipeline pipeline(pa);
  for (const auto& e : events) pipeline.Push(e);
  const PipelineResult result = pipeline.Finish();
  const double secs = Seconds(start);
  return {secs < 30.0, std::to_string(events.size()) + " events -> " +
                           std::to_string(result.records.size()) + " records in " +
                           Fmt("%.2f s", secs)};
}

}  // namespace
}  // namespace motivelog

int main() {
  using motivelog::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"P1 privacy fuzz", motivelog::P1PrivacyFuzz},
      {"P2 classifier fidelity", motivelog::P2ClassifierFidelity},
      {"P3 kappa oracle", motivelog::P3KappaOracle},
      {"P4 rank-test oracles", motivelog::P4RankTests},
      {"P5 synthetic recovery", motivelog::P5SyntheticRecovery},
      {"P6 long tail", motivelog::P6LongTail},
      {"P7 pipeline composability", motivelog::P7Composability},
      {"P8 prefilter correctness", motivelog::P8Prefilter},
      {"P9 throughput", motivelog::P9Throughput}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
