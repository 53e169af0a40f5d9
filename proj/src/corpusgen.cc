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

#include "motivelog/corpusgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "motivelog/sessionizer.h"

namespace motivelog::corpusgen {
namespace {

constexpr Timestamp kEpochStart = 1'600'000'000'000;  // 2020-09-13
constexpr Timestamp kDayMs = 86'400'000;

constexpr std::string_view kMatchStart = "bdfgh";
constexpr std::string_view kOtherStart = "klmnprstvz";
constexpr std::string_view kConsonants = "bdfghklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

// Base prompts per motive, drawn from typical smartphone fields. Variants are
// derived by numbering when the vocabulary asks for more.
const std::map<Motive, std::vector<std::string>>& BasePrompts() {
  static const auto* prompts = new std::map<Motive, std::vector<std::string>>{
      {Motive::kMessaging,
       {"Type a message", "Enter your message here", "Nachricht schreiben",
        "Write a message", "Send a message", "Nachricht", "Message",
        "Neue Nachricht", "Text message", "iMessage"}},
      {Motive::kPosting,
       {"Write a caption", "What are you doing?", "What's on your mind?",
        "Share an update", "Was machst du gerade?", "Write a post"}},
      {Motive::kCommenting,
       {"Comment ...", "Tweet your reply", "Add a comment...",
        "Kommentieren", "Write a comment", "Kommentar schreiben"}},
      {Motive::kSearch,
       {"Search apps, web, and more...", "Search photos...", "Suchen",
        "Search", "Search contacts", "Search or type URL", "Suche",
        "Search settings", "Search Maps", "Im Web suchen"}},
      {Motive::kDataInput,
       {"email address", "Stop, address, ...", "Spanish translation",
        "Password", "Username", "Phone number", "First name", "Last name",
        "Postleitzahl", "Amount"}},
      {Motive::kOther,
       {"write a note...", "How do you feel right now?", "Title",
        "Notiz hinzufügen", "Describe your day"}},
      {Motive::kAmbiguous, {"0", "???", "...", "-", "x", "Text"}},
  };
  return *prompts;
}

const std::vector<std::string>& UncodedTemplates() {
  static const auto* templates = new std::vector<std::string>{
      "Enter value", "Tap to edit", "Your input", "Type here",
      "Eingabe", "Field", "Optional", "Hier tippen"};
  return *templates;
}

const std::vector<std::string>& Names() {
  static const auto* names = new std::vector<std::string>{
      "Anna Weber", "John Smith", "Lena Fischer", "Max Müller",
      "Sarah Koch", "Tom Becker", "Julia Wagner", "Paul Hoffmann"};
  return *names;
}

const std::map<std::string, std::vector<std::string>>& AppsByCategory() {
  static const auto* apps = new std::map<std::string, std::vector<std::string>>{
      {"Communication",
       {"com.whatsapp", "org.telegram.messenger", "com.facebook.orca",
        "com.google.android.gm", "com.samsung.android.messaging"}},
      {"Social Media",
       {"com.instagram.android", "com.facebook.katana",
        "com.twitter.android", "com.snapchat.android"}},
      {"System",
       {"com.google.android.googlequicksearchbox", "com.android.settings",
        "com.sec.android.app.launcher"}},
      {"Browser", {"com.android.chrome", "org.mozilla.firefox"}},
      {"Travel", {"de.db.navigator", "com.google.android.apps.maps"}},
      {"Education", {"com.duolingo"}},
      {"Productivity", {"com.google.android.keep", "com.microsoft.office.word"}},
      {"Research", {"de.research.esm"}},
  };
  return *apps;
}

const std::map<Motive, std::vector<std::pair<std::string, double>>>&
AppCategoryMix() {
  static const auto* mix =
      new std::map<Motive, std::vector<std::pair<std::string, double>>>{
          {Motive::kMessaging, {{"Communication", 0.92}, {"Social Media", 0.08}}},
          {Motive::kSearch,
           {{"System", 0.55}, {"Browser", 0.20}, {"Communication", 0.08},
            {"Social Media", 0.10}, {"Travel", 0.07}}},
          {Motive::kDataInput,
           {{"Communication", 0.10}, {"Travel", 0.30}, {"Education", 0.20},
            {"System", 0.20}, {"Browser", 0.20}}},
          {Motive::kCommenting, {{"Social Media", 0.90}, {"Browser", 0.10}}},
          {Motive::kPosting, {{"Social Media", 1.0}}},
          {Motive::kOther, {{"Productivity", 0.5}, {"Research", 0.5}}},
          {Motive::kAmbiguous,
           {{"Communication", 0.2}, {"Social Media", 0.2}, {"System", 0.2},
            {"Browser", 0.1}, {"Travel", 0.1}, {"Education", 0.1},
            {"Productivity", 0.1}}},
      };
  return *mix;
}

const std::vector<std::string>& CategoryNames() {
  static const auto* names = new std::vector<std::string>{
      "posemo", "negemo", "social", "family", "work",    "leisure",
      "home",   "money",  "relig",  "death",  "cogproc", "percept"};
  return *names;
}

char Pick(Rng& rng, std::string_view chars) {
  return chars[rng.Below(chars.size())];
}

std::string Syllables(Rng& rng, char start, int count) {
  std::string w(1, start);
  w.push_back(Pick(rng, kVowels));
  for (int i = 1; i < count; ++i) {
    w.push_back(Pick(rng, kConsonants));
    w.push_back(Pick(rng, kVowels));
  }
  if (rng.Bernoulli(0.3)) w.push_back(Pick(rng, kConsonants));
  return w;
}

// Replaces some ASCII letters by German specials so folding paths are used.
std::string Germanize(Rng& rng, std::string w) {
  if (!rng.Bernoulli(0.1)) return w;
  const std::size_t i = 1 + rng.Below(w.size() - 1);
  switch (w[i]) {
    case 'a':
      return w.substr(0, i) + "ä" + w.substr(i + 1);
    case 'o':
      return w.substr(0, i) + "ö" + w.substr(i + 1);
    case 'u':
      return w.substr(0, i) + "ü" + w.substr(i + 1);
    case 's':
      return w.substr(0, i) + "ß" + w.substr(i + 1);
    default:
      return w;
  }
}

std::string Capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
  return w;
}

struct Lexicon {
  std::vector<std::string> matching;
  std::vector<std::string> other;
};

struct Vocabulary {
  std::map<Motive, std::vector<std::string>> coded;
  std::vector<std::string> uncoded;
};

Vocabulary BuildVocabulary(const CorpusSpec& spec) {
  Vocabulary v;
  double mix_total = 0.0;
  for (const auto& [m, p] : spec.motive_mix) mix_total += p;
  for (Motive m : kCodedMotives) {
    const auto& base = BasePrompts().at(m);
    auto it = spec.motive_mix.find(m);
    const double share = it == spec.motive_mix.end() ? 0.0 : it->second / mix_total;
    const auto target = std::max<std::size_t>(
        base.size(),
        static_cast<std::size_t>(std::lround(spec.prompt_vocabulary_size * share)));
    std::vector<std::string> list = base;
    for (std::size_t k = 0; list.size() < target; ++k) {
      list.push_back(base[k % base.size()] + " " +
                     std::to_string(k / base.size() + 2));
    }
    v.coded[m] = std::move(list);
  }
  const auto& templates = UncodedTemplates();
  for (int k = 0; k < spec.uncoded_vocabulary_size; ++k) {
    v.uncoded.push_back(templates[k % templates.size()] + " " +
                        std::to_string(k / templates.size() + 1));
  }
  return v;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::Below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::Below(0)");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

DiscreteTruncatedNormal::DiscreteTruncatedNormal(int min, MeanSd target)
    : min_(min) {
  if (!(target.sd > 0.0) || !(target.mean >= min)) {
    throw ValidationError("truncated normal needs sd > 0 and mean >= min");
  }
  const int max = min + static_cast<int>(std::ceil(target.mean - min +
                                                   15.0 * target.sd + 30.0));
  const double var2 = 2.0 * target.sd * target.sd;
  auto moments = [&](double loc, std::vector<double>* pmf) {
    double top = -INFINITY;
    std::vector<double> logw;
    for (int k = min; k <= max; ++k) {
      logw.push_back(-(k - loc) * (k - loc) / var2);
      top = std::max(top, logw.back());
    }
    double z = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
      const double w = std::exp(logw[i] - top);
      const double k = static_cast<double>(min + static_cast<int>(i));
      logw[i] = w;
      z += w;
      m1 += w * k;
      m2 += w * k * k;
    }
    if (pmf) {
      for (double& w : logw) w /= z;
      *pmf = std::move(logw);
    }
    const double mean = m1 / z;
    return std::pair<double, double>(mean, std::sqrt(std::max(0.0, m2 / z - mean * mean)));
  };
  double lo = min - 60.0 * target.sd - 200.0;
  double hi = target.mean + 10.0 * target.sd;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (moments(mid, nullptr).first < target.mean) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  location_ = 0.5 * (lo + hi);
  std::vector<double> pmf;
  std::tie(mean_, sd_) = moments(location_, &pmf);
  cdf_.resize(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), cdf_.begin());
  cdf_.back() = 1.0;
}

int DiscreteTruncatedNormal::Sample(Rng& rng) const {
  const double u = rng.Uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return min_ + static_cast<int>(std::min<std::ptrdiff_t>(
                    it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

ZipfSampler::ZipfSampler(std::size_t size, double exponent) {
  if (size == 0) throw ValidationError("Zipf vocabulary is empty");
  cdf_.resize(size);
  double total = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf_[r] = total;
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::size_t ZipfSampler::Sample(Rng& rng) const {
  const double u = rng.Uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
}

double ZipfSampler::Probability(std::size_t rank) const {
  return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1];
}

std::string_view PromptKindName(PromptKind kind) {
  switch (kind) {
    case PromptKind::kNone:
      return "none";
    case PromptKind::kMapped:
      return "mapped";
    case PromptKind::kUncoded:
      return "uncoded";
    case PromptKind::kParticipantUnique:
      return "unique";
  }
  return "none";
}

std::string TruthHeader() {
  return "# sid\tpid\tapp\tmotive\tprompt_kind\tprompt\tadded\tchanged\t"
         "removed\ttotal\tmatched";
}

std::string ToTsvLine(const TruthRow& row) {
  std::string out = row.session_id;
  for (const std::string_view f :
       {std::string_view(row.participant_id), std::string_view(row.app_id),
        MotiveName(row.motive), PromptKindName(row.prompt_kind)}) {
    out += '\t';
    out += f;
  }
  out += '\t';
  if (row.prompt) out += *row.prompt;
  for (std::uint64_t v : {row.words_added, row.words_changed,
                          row.words_removed, row.total_words,
                          row.matched_words}) {
    out += '\t';
    out += std::to_string(v);
  }
  return out;
}

void ValidateSpec(const CorpusSpec& spec) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError("invalid corpus spec field '" + field + "': " + why);
  };
  auto prob = [&](const std::string& field, double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(field, "must be in [0, 1]");
  };
  if (spec.participants < 1) fail("participants", "must be >= 1");
  if (spec.days < 1) fail("days", "must be >= 1");
  if (spec.prompt_vocabulary_size < 1) fail("prompt_vocabulary_size", "must be >= 1");
  if (spec.uncoded_vocabulary_size < 1) fail("uncoded_vocabulary_size", "must be >= 1");
  if (!(spec.inputs_per_day.mean > 0.0) || !(spec.inputs_per_day.sd > 0.0)) {
    fail("inputs_per_day", "mean and sd must be positive");
  }
  if (!(spec.prompt_zipf_exponent >= 0.0)) fail("prompt_zipf_exponent", "must be >= 0");
  prob("prompt_availability", spec.prompt_availability);
  prob("mapped_prompt_rate", spec.mapped_prompt_rate);
  prob("single_participant_prompt_rate", spec.single_participant_prompt_rate);
  prob("change_rate", spec.change_rate);
  prob("remove_rate", spec.remove_rate);
  prob("partial_snapshot_rate", spec.partial_snapshot_rate);
  double total = 0.0;
  for (const auto& [m, p] : spec.motive_mix) {
    const std::string field = "motive_mix." + std::string(MotiveName(m));
    if (!IsCodedMotive(m)) fail(field, "not a coded motive");
    prob(field, p);
    total += p;
    if (p > 0.0) {
      auto w = spec.words_per_input.find(m);
      if (w == spec.words_per_input.end()) {
        fail("words_per_input." + std::string(MotiveName(m)), "missing");
      }
      if (!(w->second.mean >= 1.0) || !(w->second.sd > 0.0)) {
        fail("words_per_input." + std::string(MotiveName(m)),
             "mean must be >= 1 and sd > 0");
      }
      auto mp = spec.match_probability.find(m);
      if (mp == spec.match_probability.end()) {
        fail("match_probability." + std::string(MotiveName(m)), "missing");
      }
      prob("match_probability." + std::string(MotiveName(m)), mp->second);
    }
  }
  if (std::fabs(total - 1.0) > 1e-9) fail("motive_mix", "must sum to 1");
}

CorpusSpec SpecFromJson(std::string_view json_text) {
  using nlohmann::json;
  CorpusSpec spec;
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("corpus spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("corpus spec must be a JSON object");
  auto motive_key = [](const std::string& key) {
    auto m = ParseMotive(key);
    if (!m) throw ValidationError("invalid corpus spec motive '" + key + "'");
    return *m;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") spec.seed = value.get<std::uint64_t>();
      else if (key == "participants") spec.participants = value.get<int>();
      else if (key == "days") spec.days = value.get<int>();
      else if (key == "inputs_per_day")
        spec.inputs_per_day = {value.at("mean").get<double>(), value.at("sd").get<double>()};
      else if (key == "motive_mix") {
        spec.motive_mix.clear();
        for (const auto& [m, p] : value.items()) spec.motive_mix[motive_key(m)] = p.get<double>();
      } else if (key == "prompt_availability") spec.prompt_availability = value.get<double>();
      else if (key == "mapped_prompt_rate") spec.mapped_prompt_rate = value.get<double>();
      else if (key == "words_per_input") {
        for (const auto& [m, ms] : value.items())
          spec.words_per_input[motive_key(m)] = {ms.at("mean").get<double>(), ms.at("sd").get<double>()};
      } else if (key == "match_probability") {
        for (const auto& [m, p] : value.items()) spec.match_probability[motive_key(m)] = p.get<double>();
      } else if (key == "prompt_vocabulary_size") spec.prompt_vocabulary_size = value.get<int>();
      else if (key == "prompt_zipf_exponent") spec.prompt_zipf_exponent = value.get<double>();
      else if (key == "uncoded_vocabulary_size") spec.uncoded_vocabulary_size = value.get<int>();
      else if (key == "single_participant_prompt_rate") spec.single_participant_prompt_rate = value.get<double>();
      else if (key == "change_rate") spec.change_rate = value.get<double>();
      else if (key == "remove_rate") spec.remove_rate = value.get<double>();
      else if (key == "partial_snapshot_rate") spec.partial_snapshot_rate = value.get<double>();
      else if (key == "asset_seed") spec.asset_seed = value.get<std::uint64_t>();
      else throw ValidationError("unknown corpus spec field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid corpus spec value: ") + e.what());
  }
  ValidateSpec(spec);
  return spec;
}

std::string SpecToJson(const CorpusSpec& spec) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["seed"] = spec.seed;
  j["participants"] = spec.participants;
  j["days"] = spec.days;
  j["inputs_per_day"] = {{"mean", spec.inputs_per_day.mean}, {"sd", spec.inputs_per_day.sd}};
  for (const auto& [m, p] : spec.motive_mix) j["motive_mix"][std::string(MotiveName(m))] = p;
  j["prompt_availability"] = spec.prompt_availability;
  j["mapped_prompt_rate"] = spec.mapped_prompt_rate;
  for (const auto& [m, ms] : spec.words_per_input)
    j["words_per_input"][std::string(MotiveName(m))] = {{"mean", ms.mean}, {"sd", ms.sd}};
  for (const auto& [m, p] : spec.match_probability)
    j["match_probability"][std::string(MotiveName(m))] = p;
  j["prompt_vocabulary_size"] = spec.prompt_vocabulary_size;
  j["prompt_zipf_exponent"] = spec.prompt_zipf_exponent;
  j["uncoded_vocabulary_size"] = spec.uncoded_vocabulary_size;
  j["single_participant_prompt_rate"] = spec.single_participant_prompt_rate;
  j["change_rate"] = spec.change_rate;
  j["remove_rate"] = spec.remove_rate;
  j["partial_snapshot_rate"] = spec.partial_snapshot_rate;
  j["asset_seed"] = spec.asset_seed;
  return j.dump();
}

namespace {

Lexicon BuildLexicon(Rng& rng, Dictionary& dict) {
  Lexicon lex;
  const auto& names = CategoryNames();
  for (std::size_t i = 0; i < names.size(); ++i) {
    dict.AddCategory(static_cast<CategoryId>(i + 1), names[i]);
  }
  auto categories = [&] {
    std::vector<CategoryId> ids{static_cast<CategoryId>(1 + rng.Below(names.size()))};
    if (rng.Bernoulli(0.4)) ids.push_back(static_cast<CategoryId>(1 + rng.Below(names.size())));
    return ids;
  };
  std::set<std::string> seen;
  // Stem entries: every word built on a stem matches through the prefix.
  while (lex.matching.size() < 600) {
    std::string stem = Syllables(rng, Pick(rng, kMatchStart), 1);
    if (stem.size() < 3) stem.push_back(Pick(rng, kConsonants));
    if (!seen.insert(stem + "*").second) continue;
    dict.AddEntry(stem, true, categories());
    for (int k = 0; k < 5; ++k) {
      std::string suffix = Germanize(rng, Syllables(rng, Pick(rng, kConsonants), 1));
      std::string w = stem + suffix;
      if (seen.insert(w).second) lex.matching.push_back(w);
    }
  }
  while (lex.matching.size() < 1200) {
    std::string w = Germanize(
        rng, Syllables(rng, Pick(rng, kMatchStart), 1 + static_cast<int>(rng.Below(3))));
    if (!seen.insert(w).second) continue;
    dict.AddEntry(w, false, categories());
    lex.matching.push_back(w);
  }
  while (lex.other.size() < 1200) {
    std::string w = Germanize(
        rng, Syllables(rng, Pick(rng, kOtherStart), 1 + static_cast<int>(rng.Below(3))));
    if (seen.insert(w).second) lex.other.push_back(w);
  }
  return lex;
}

}  // namespace

CorpusAssets BuildAssets(const CorpusSpec& spec) {
  CorpusAssets assets;
  Rng rng(SplitMix64(spec.asset_seed));
  const Lexicon lex = BuildLexicon(rng, assets.dictionary);
  for (int i = 0; i < 150; ++i) {
    const auto& pool = i % 2 == 0 ? lex.matching : lex.other;
    assets.whitelist_words.push_back(pool[rng.Below(pool.size())]);
  }
  std::sort(assets.whitelist_words.begin(), assets.whitelist_words.end());
  assets.whitelist_words.erase(
      std::unique(assets.whitelist_words.begin(), assets.whitelist_words.end()),
      assets.whitelist_words.end());
  for (const auto& w : assets.whitelist_words) assets.whitelist.Add(w);

  const KeywordRuleSet rules = KeywordRuleSet::Default();
  const Vocabulary vocab = BuildVocabulary(spec);
  for (const auto& [motive, prompts] : vocab.coded) {
    for (const auto& p : prompts) {
      const std::string normalized = NormalizePrompt(p);
      const KeywordRule* rule = rules.FirstMatch(normalized);
      if (rule && rule->motive != motive) {
        throw std::logic_error("coded prompt '" + p + "' collides with a keyword rule");
      }
      MappingEntry e;
      e.motive = motive;
      if (rule) {
        e.provenance = Provenance::kAutoKeyword;
      } else {
        e.provenance = Provenance::kManualCoded;
        e.coder = "R1";
        e.round = 2;
      }
      assets.mapping.Set(normalized, e);
    }
  }
  for (const auto& p : vocab.uncoded) {
    if (rules.FirstMatch(NormalizePrompt(p)) || assets.mapping.Find(NormalizePrompt(p))) {
      throw std::logic_error("uncoded prompt '" + p + "' is classifiable");
    }
  }
  for (const auto& [category, apps] : AppsByCategory()) {
    for (const auto& app : apps) assets.app_categories[app] = category;
  }
  return assets;
}

namespace {

class ParticipantGenerator {
 public:
  ParticipantGenerator(const CorpusSpec& spec, const CorpusAssets& assets,
                       const Vocabulary& vocab, const Lexicon& lexicon,
                       const std::map<Motive, DiscreteTruncatedNormal>& lengths,
                       const DiscreteTruncatedNormal& per_day,
                       const std::map<Motive, ZipfSampler>& prompt_samplers,
                       const ZipfSampler& uncoded_sampler,
                       const ZipfSampler& word_sampler, int index)
      : spec_(spec),
        vocab_(vocab),
        lexicon_(lexicon),
        lengths_(lengths),
        per_day_(per_day),
        prompt_samplers_(prompt_samplers),
        uncoded_sampler_(uncoded_sampler),
        word_sampler_(word_sampler),
        rng_(SplitMix64(spec.seed ^ SplitMix64(static_cast<std::uint64_t>(index) + 1))),
        index_(index) {
    (void)assets;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%05d", index + 1);
    pid_ = buf;
    for (const auto& [m, p] : spec.motive_mix) {
      if (p <= 0.0) continue;
      mix_total_ += p;
      mix_.push_back({m, mix_total_});
    }
  }

  void Run(const CorpusSinks& sinks, GenerationSummary& summary) {
    Timestamp t = kEpochStart;
    for (int day = 0; day < spec_.days; ++day) {
      t = std::max(t, kEpochStart + day * kDayMs + 7 * 3'600'000 +
                          static_cast<Timestamp>(rng_.Below(3'600'000)));
      const int inputs = per_day_.Sample(rng_);
      for (int i = 0; i < inputs; ++i) {
        t = Session(t, sinks, summary);
        t += 45'000 + static_cast<Timestamp>(rng_.Below(20 * 60'000));
      }
    }
  }

 private:
  Motive DrawMotive() {
    const double u = rng_.Uniform() * mix_total_;
    for (const auto& [m, cum] : mix_) {
      if (u < cum) return m;
    }
    return mix_.back().first;
  }

  std::string DrawApp(Motive m) {
    const auto& mix = AppCategoryMix().at(m);
    double total = 0.0;
    for (const auto& [c, p] : mix) total += p;
    double u = rng_.Uniform() * total;
    std::string category = mix.back().first;
    for (const auto& [c, p] : mix) {
      if (u < p) {
        category = c;
        break;
      }
      u -= p;
    }
    const auto& apps = AppsByCategory().at(category);
    return apps[rng_.Below(apps.size())];
  }

  std::string DrawWord(bool matching) {
    const auto& pool = matching ? lexicon_.matching : lexicon_.other;
    std::string w = pool[word_sampler_.Sample(rng_) % pool.size()];
    if (rng_.Bernoulli(0.15)) w = Capitalize(std::move(w));
    return w;
  }

  static std::string Join(const std::vector<std::string>& words, bool trailing_space) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += words[i];
    }
    if (trailing_space && !words.empty()) out.push_back(' ');
    return out;
  }

  Timestamp Session(Timestamp t, const CorpusSinks& sinks, GenerationSummary& summary) {
    TruthRow truth;
    truth.participant_id = pid_;
    truth.motive = DrawMotive();
    truth.app_id = DrawApp(truth.motive);
    if (rng_.Bernoulli(spec_.prompt_availability)) {
      if (rng_.Bernoulli(spec_.mapped_prompt_rate)) {
        const auto& list = vocab_.coded.at(truth.motive);
        truth.prompt_kind = PromptKind::kMapped;
        truth.prompt = list[prompt_samplers_.at(truth.motive).Sample(rng_)];
      } else if (rng_.Bernoulli(spec_.single_participant_prompt_rate)) {
        truth.prompt_kind = PromptKind::kParticipantUnique;
        truth.prompt = "Reply to " + Names()[rng_.Below(Names().size())] + " " +
                       std::to_string(index_ + 1);
      } else {
        truth.prompt_kind = PromptKind::kUncoded;
        truth.prompt = vocab_.uncoded[uncoded_sampler_.Sample(rng_)];
      }
    }
    const std::string field = "f" + std::to_string(++field_counter_);
    truth.session_id = MakeSessionId(pid_, t, field);

    const int ops = lengths_.at(truth.motive).Sample(rng_);
    const double p_match = spec_.match_probability.at(truth.motive);
    std::vector<std::string> words;
    bool first = true;
    auto emit = [&](std::string content) {
      FieldSnapshotEvent e;
      e.ts = t;
      e.participant_id = pid_;
      e.app_id = truth.app_id;
      e.field_id = field;
      if (first) e.prompt = truth.prompt;
      e.content = std::move(content);
      first = false;
      sinks.on_event(e);
      ++summary.events;
      t += 300 + static_cast<Timestamp>(rng_.Below(2700));
    };
    for (int op = 0; op < ops; ++op) {
      const bool last = op + 1 == ops;
      if (op > 0 && !words.empty() && rng_.Bernoulli(spec_.remove_rate)) {
        words.pop_back();
        ++truth.words_removed;
        emit(Join(words, true));
      }
      const bool matching = rng_.Bernoulli(p_match);
      std::string w = DrawWord(matching);
      truth.matched_words += matching ? 1 : 0;
      ++truth.total_words;
      if (op > 0 && !words.empty() && rng_.Bernoulli(spec_.change_rate)) {
        while (w == words.back()) w = DrawWord(matching);
        words.back() = w;
        ++truth.words_changed;
        emit(Join(words, true));
        continue;
      }
      ++truth.words_added;
      const std::size_t cps = text_length(w);
      if (cps >= 3 && rng_.Bernoulli(spec_.partial_snapshot_rate)) {
        std::vector<std::string> partial = words;
        partial.push_back(w.substr(0, PrefixBytes(w, cps / 2 + 1)));
        emit(Join(partial, false));
      }
      words.push_back(w);
      emit(Join(words, !(last && rng_.Bernoulli(0.5))));
    }
    ++summary.sessions;
    if (sinks.on_truth) sinks.on_truth(truth);
    return t;
  }

  static std::size_t text_length(const std::string& w) {
    std::size_t n = 0;
    for (unsigned char c : w) n += (c & 0xC0) != 0x80 ? 1 : 0;
    return n;
  }

  // Bytes covering the first `cps` code points.
  static std::size_t PrefixBytes(const std::string& w, std::size_t cps) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((static_cast<unsigned char>(w[i]) & 0xC0) != 0x80) {
        if (seen == cps) return i;
        ++seen;
      }
    }
    return w.size();
  }

  const CorpusSpec& spec_;
  const Vocabulary& vocab_;
  const Lexicon& lexicon_;
  const std::map<Motive, DiscreteTruncatedNormal>& lengths_;
  const DiscreteTruncatedNormal& per_day_;
  const std::map<Motive, ZipfSampler>& prompt_samplers_;
  const ZipfSampler& uncoded_sampler_;
  const ZipfSampler& word_sampler_;
  Rng rng_;
  int index_;
  std::string pid_;
  std::uint64_t field_counter_ = 0;
  double mix_total_ = 0.0;
  std::vector<std::pair<Motive, double>> mix_;
};

}  // namespace

GenerationSummary Generate(const CorpusSpec& spec, const CorpusAssets& assets,
                           const CorpusSinks& sinks) {
  ValidateSpec(spec);
  // The lexicon is rebuilt from the asset seed so it matches the dictionary.
  Dictionary scratch;
  Rng asset_rng(SplitMix64(spec.asset_seed));
  const Lexicon lexicon = BuildLexicon(asset_rng, scratch);
  const Vocabulary vocab = BuildVocabulary(spec);

  std::map<Motive, DiscreteTruncatedNormal> lengths;
  std::map<Motive, ZipfSampler> prompt_samplers;
  for (const auto& [m, p] : spec.motive_mix) {
    if (p <= 0.0) continue;
    lengths.emplace(m, DiscreteTruncatedNormal(1, spec.words_per_input.at(m)));
    prompt_samplers.emplace(m, ZipfSampler(vocab.coded.at(m).size(), spec.prompt_zipf_exponent));
  }
  const DiscreteTruncatedNormal per_day(0, spec.inputs_per_day);
  const ZipfSampler uncoded(vocab.uncoded.size(), spec.prompt_zipf_exponent);
  const ZipfSampler words(lexicon.matching.size(), 1.0);

  GenerationSummary summary;
  for (int i = 0; i < spec.participants; ++i) {
    ParticipantGenerator gen(spec, assets, vocab, lexicon, lengths, per_day,
                             prompt_samplers, uncoded, words, i);
    gen.Run(sinks, summary);
  }
  return summary;
}

Corpus GenerateCorpus(const CorpusSpec& spec, const CorpusAssets& assets) {
  Corpus corpus;
  CorpusSinks sinks;
  sinks.on_event = [&](const FieldSnapshotEvent& e) { corpus.events.push_back(e); };
  sinks.on_truth = [&](const TruthRow& r) { corpus.truth.push_back(r); };
  Generate(spec, assets, sinks);
  return corpus;
}

}  // namespace motivelog::corpusgen
