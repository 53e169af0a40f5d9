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

#include "motivelog/cli.h"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "motivelog/agreement.h"
#include "motivelog/annotation_service.h"
#include "motivelog/corpusgen.h"
#include "motivelog/formats.h"
#include "motivelog/hashing.h"
#include "motivelog/pipeline.h"

namespace motivelog {
namespace {

using nlohmann::ordered_json;

bool IsStdio(const std::string& path) { return path.empty() || path == "-"; }

// Inputs, outputs and effective configuration of one run.
class RunContext {
 public:
  RunContext(std::string subcommand, std::vector<std::string> args,
             std::istream& in, std::ostream& out, std::ostream& err)
      : subcommand_(std::move(subcommand)),
        args_(std::move(args)),
        in_(in),
        out_(out),
        err_(err) {}

  ordered_json& config() { return config_; }

  std::istream& OpenInput(const std::string& role, const std::string& path) {
    if (IsStdio(path)) {
      inputs_.push_back({{"role", role}, {"path", "-"}, {"sha256", nullptr}});
      return in_;
    }
    inputs_.push_back({{"role", role}, {"path", path}, {"sha256", Sha256FileHex(path)}});
    auto f = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*f) throw IoError("cannot open '" + path + "' for reading");
    std::istream& ref = *f;
    open_inputs_.push_back(std::move(f));
    return ref;
  }

  // Writes a whole output file (or stdout for "-").
  void WriteOutput(const std::string& role, const std::string& path,
                   const std::string& content) {
    std::ostream& os = BeginOutput(role, path);
    os << content;
    EndOutput(os, path);
  }

  std::ostream& BeginOutput(const std::string& role, const std::string& path) {
    output_roles_.push_back({role, path});
    if (IsStdio(path)) return out_;
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*f) throw IoError("cannot open '" + path + "' for writing");
    std::ostream& ref = *f;
    open_outputs_.push_back(std::move(f));
    return ref;
  }

  void EndOutput(std::ostream& os, const std::string& path) {
    os.flush();
    if (!os) throw IoError("cannot write '" + (IsStdio(path) ? std::string("stdout") : path) + "'");
    if (auto* f = dynamic_cast<std::ofstream*>(&os)) f->close();
    if (!os) throw IoError("cannot write '" + path + "'");
  }

  void set_primary_output(const std::string& path) { primary_output_ = path; }
  void set_manifest_path(const std::string& path) { manifest_path_ = path; }

  void WriteManifest() {
    for (auto& f : open_outputs_) {
      if (f->is_open()) f->close();
    }
    ordered_json outputs = ordered_json::array();
    for (const auto& [role, path] : output_roles_) {
      outputs.push_back({{"role", role},
                         {"path", IsStdio(path) ? "-" : path},
                         {"sha256", IsStdio(path) ? ordered_json(nullptr)
                                                  : ordered_json(Sha256FileHex(path))}});
    }
    ordered_json args = ordered_json::array();
    for (const auto& a : args_) args.push_back(a);
    ordered_json m{{"tool", "motivelog"},
                   {"version", kVersion},
                   {"subcommand", subcommand_},
                   {"args", args},
                   {"config", config_.is_null() ? ordered_json::object() : config_},
                   {"inputs", inputs_.is_null() ? ordered_json::array() : inputs_},
                   {"outputs", outputs}};
    std::string path = manifest_path_;
    if (path.empty() && !IsStdio(primary_output_)) path = primary_output_ + ".manifest.json";
    if (path.empty()) {
      err_ << m.dump() << "\n";
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << m.dump(2) << "\n";
    if (!f) throw IoError("cannot write manifest '" + path + "'");
  }

 private:
  std::string subcommand_;
  std::vector<std::string> args_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  ordered_json config_;
  ordered_json inputs_ = ordered_json::array();
  std::vector<std::pair<std::string, std::string>> output_roles_;
  std::vector<std::unique_ptr<std::ifstream>> open_inputs_;
  std::vector<std::unique_ptr<std::ofstream>> open_outputs_;
  std::string primary_output_;
  std::string manifest_path_;
};

std::string ReadText(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<TextInputRecord> ReadRecords(std::istream& in, const std::string& source) {
  return formats::ReadAll(in, &formats::ParseRecord, source);
}

void WriteRecords(std::ostream& os, const std::vector<TextInputRecord>& records) {
  for (const auto& r : records) os << formats::ToJsonLine(r) << '\n';
}

Dictionary LoadDictionary(RunContext& ctx, const std::string& path) {
  return formats::ParseDictionary(ctx.OpenInput("dictionary", path));
}

Whitelist LoadWhitelist(RunContext& ctx, const std::string& path) {
  if (path.empty()) return {};
  return formats::ParseWhitelist(ctx.OpenInput("whitelist", path));
}

MotiveMapping LoadMapping(RunContext& ctx, const std::string& path) {
  if (path.empty()) return {};
  return formats::ParseMapping(ctx.OpenInput("mapping", path));
}

KeywordRuleSet LoadRules(RunContext& ctx, const std::string& path) {
  if (path.empty()) return KeywordRuleSet::Default();
  return formats::ParseRules(ctx.OpenInput("rules", path));
}

AppCategoryMap LoadAppCategories(RunContext& ctx, const std::string& path) {
  if (path.empty()) return {};
  return formats::ParseAppCategories(ctx.OpenInput("appcats", path));
}

std::string PathOrDefault(const std::string& path) { return path.empty() ? "-" : path; }

// Stores for the options of every subcommand.
struct Options {
  std::string in, out, manifest;
  // gen
  std::uint64_t seed = 42;
  bool seed_set = false;
  std::string config;
  int participants = 0, days = 0;
  std::string truth, dict_out, whitelist_out, mapping_out, appcats_out;
  // abstract / sessions
  std::string dict, whitelist, prompts_out, prompts, appcats;
  std::int64_t gap_timeout_ms = 30'000;
  // prefilter / autocode / classify
  std::string report, mapping, rules, residual_out;
  double cutoff = 0.0;
  // stats / compare / longtail
  std::string tsv;
  std::size_t k = 10;
  // kappa
  std::string rater_a, rater_b, frequencies;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store, residual, static_dir;
  std::size_t round_size = 50;
};

void RunGen(const Options& o, RunContext& ctx) {
  corpusgen::CorpusSpec spec;
  if (!o.config.empty()) spec = corpusgen::SpecFromJson(ReadText(ctx.OpenInput("config", o.config)));
  if (o.seed_set) spec.seed = o.seed;
  if (o.participants > 0) spec.participants = o.participants;
  if (o.days > 0) spec.days = o.days;
  corpusgen::ValidateSpec(spec);
  ctx.config() = ordered_json::parse(corpusgen::SpecToJson(spec));

  const corpusgen::CorpusAssets assets = corpusgen::BuildAssets(spec);
  std::ostream& events = ctx.BeginOutput("events", PathOrDefault(o.out));
  std::ostream* truth = nullptr;
  if (!o.truth.empty()) {
    truth = &ctx.BeginOutput("truth", o.truth);
    *truth << corpusgen::TruthHeader() << '\n';
  }
  corpusgen::CorpusSinks sinks;
  sinks.on_event = [&](const FieldSnapshotEvent& e) { events << formats::ToJsonLine(e) << '\n'; };
  if (truth) sinks.on_truth = [&](const corpusgen::TruthRow& r) { *truth << corpusgen::ToTsvLine(r) << '\n'; };
  corpusgen::Generate(spec, assets, sinks);
  ctx.EndOutput(events, PathOrDefault(o.out));
  if (truth) ctx.EndOutput(*truth, o.truth);

  if (!o.dict_out.empty()) ctx.WriteOutput("dictionary", o.dict_out, formats::SerializeDictionary(assets.dictionary));
  if (!o.whitelist_out.empty()) {
    std::string wl;
    for (const auto& w : assets.whitelist_words) wl += w + '\n';
    ctx.WriteOutput("whitelist", o.whitelist_out, wl);
  }
  if (!o.mapping_out.empty()) ctx.WriteOutput("mapping", o.mapping_out, formats::SerializeMapping(assets.mapping));
  if (!o.appcats_out.empty()) ctx.WriteOutput("appcats", o.appcats_out, formats::SerializeAppCategories(assets.app_categories));
}

class StreamSink : public AbstractionSink {
 public:
  StreamSink(std::ostream& words, std::ostream* prompts) : words_(words), prompts_(prompts) {}
  void OnWordEvent(const WordEvent& e) override { words_ << formats::ToJsonLine(e) << '\n'; }
  void OnSessionClosed(const SessionInfo& s) override {
    if (prompts_) *prompts_ << formats::ToJsonLine(s) << '\n';
  }

 private:
  std::ostream& words_;
  std::ostream* prompts_;
};

void RunAbstract(const Options& o, RunContext& ctx) {
  if (o.gap_timeout_ms < 0) throw ValidationError("--gap-timeout must be >= 0");
  ctx.config() = {{"gap_timeout_ms", o.gap_timeout_ms}};
  const Dictionary dict = LoadDictionary(ctx, o.dict);
  const Whitelist wl = LoadWhitelist(ctx, o.whitelist);
  std::istream& in = ctx.OpenInput("events", PathOrDefault(o.in));
  std::ostream& words = ctx.BeginOutput("words", PathOrDefault(o.out));
  std::ostream* prompts = o.prompts_out.empty() ? nullptr : &ctx.BeginOutput("prompts", o.prompts_out);
  EdgeAbstractor abstractor(dict, wl, SessionConfig{std::chrono::milliseconds(o.gap_timeout_ms)});
  StreamSink sink(words, prompts);
  formats::ForEachLine(in, [&](std::string_view line) {
    abstractor.Push(formats::ParseEvent(line), sink);
  }, o.in.empty() ? "stdin" : o.in);
  abstractor.Finish(sink);
  ctx.EndOutput(words, PathOrDefault(o.out));
  if (prompts) ctx.EndOutput(*prompts, o.prompts_out);
}

void RunSessions(const Options& o, RunContext& ctx) {
  const AppCategoryMap appcats = LoadAppCategories(ctx, o.appcats);
  std::istream& sessions_in = ctx.OpenInput("prompts", o.prompts);
  std::istream& words_in = ctx.OpenInput("words", PathOrDefault(o.in));
  std::ostream& out = ctx.BeginOutput("sessions", PathOrDefault(o.out));
  RecordBuilder builder(&appcats);
  std::string line;
  std::uint64_t word_line = 0;
  std::optional<WordEvent> lookahead;
  auto next_word = [&]() -> bool {
    while (std::getline(words_in, line)) {
      ++word_line;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        lookahead = formats::ParseWordEvent(line);
      } catch (const Error& e) {
        throw ValidationError("words:" + std::to_string(word_line) + ": " + e.what());
      }
      return true;
    }
    if (words_in.bad()) throw IoError("cannot read word events");
    lookahead.reset();
    return false;
  };
  next_word();
  formats::ForEachLine(sessions_in, [&](std::string_view l) {
    const SessionInfo info = formats::ParseSessionInfo(l);
    while (lookahead && lookahead->session_id == info.session_id) {
      builder.Add(*lookahead);
      next_word();
    }
    if (auto r = builder.Close(info)) out << formats::ToJsonLine(*r) << '\n';
  }, o.prompts);
  if (lookahead) {
    throw ValidationError("words:" + std::to_string(word_line) + ": session '" +
                          lookahead->session_id + "' is not in session order");
  }
  ctx.EndOutput(out, PathOrDefault(o.out));
  const RecordAudit& a = builder.audit();
  ctx.config() = {{"sessions", a.sessions},
                  {"empty_sessions", a.empty_sessions},
                  {"zero_word_sessions", a.zero_word_sessions}};
}

void RunPrefilter(const Options& o, RunContext& ctx) {
  std::vector<TextInputRecord> records = ReadRecords(ctx.OpenInput("sessions", PathOrDefault(o.in)), o.in);
  const RedactionReport report = PrefilterSingleParticipant(records);
  std::ostream& out = ctx.BeginOutput("sessions", PathOrDefault(o.out));
  WriteRecords(out, records);
  ctx.EndOutput(out, PathOrDefault(o.out));
  ordered_json redacted = ordered_json::array();
  for (const auto& r : report.redacted) {
    redacted.push_back({{"prompt_sha256", r.prompt_hash},
                        {"participants", r.participants},
                        {"records", r.records}});
  }
  ordered_json j{{"redacted_prompts", report.redacted.size()},
                 {"redacted_records", report.redacted_records},
                 {"redacted", redacted}};
  if (!o.report.empty()) ctx.WriteOutput("report", o.report, j.dump(2) + "\n");
  ctx.config() = {{"min_participants", 2}};
}

void RunAutocode(const Options& o, RunContext& ctx) {
  if (!(o.cutoff >= 0.0 && o.cutoff < 1.0)) throw ValidationError("--cutoff must be in [0, 1)");
  ctx.config() = {{"cutoff", o.cutoff}};
  const KeywordRuleSet rules = LoadRules(ctx, o.rules);
  const auto records = ReadRecords(ctx.OpenInput("sessions", PathOrDefault(o.in)), o.in);
  const auto freqs = PromptFrequencies(records);
  const AutoCodeResult result = AutoCodeCorpus(freqs, rules, records.size(), o.cutoff);
  ctx.WriteOutput("mapping", PathOrDefault(o.out), formats::SerializeMapping(result.mapping));
  if (!o.residual_out.empty()) ctx.WriteOutput("residual", o.residual_out, formats::SerializeResidual(result.residual));
  ctx.config()["auto_coded"] = result.mapping.entries().size();
  ctx.config()["residual"] = result.residual.size();
  ctx.config()["below_cutoff"] = result.below_cutoff;
  ctx.config()["multi_motive"] = result.multi_motive;
}

void RunClassify(const Options& o, RunContext& ctx) {
  const MotiveMapping mapping = LoadMapping(ctx, o.mapping);
  const KeywordRuleSet rules = LoadRules(ctx, o.rules);
  std::istream& in = ctx.OpenInput("sessions", PathOrDefault(o.in));
  std::ostream& out = ctx.BeginOutput("sessions", PathOrDefault(o.out));
  formats::ForEachLine(in, [&](std::string_view line) {
    TextInputRecord r = formats::ParseRecord(line);
    r.motive = Classify(r.prompt_text, mapping, rules);
    out << formats::ToJsonLine(r) << '\n';
  }, o.in.empty() ? "stdin" : o.in);
  ctx.EndOutput(out, PathOrDefault(o.out));
}

void RunStats(const Options& o, RunContext& ctx) {
  const auto records = ReadRecords(ctx.OpenInput("sessions", PathOrDefault(o.in)), o.in);
  ctx.WriteOutput("stats_json", PathOrDefault(o.out), StatsReportJson(records));
  if (!o.tsv.empty()) ctx.WriteOutput("stats_tsv", o.tsv, StatsReportTsv(records));
}

void RunCompare(const Options& o, RunContext& ctx) {
  const auto records = ReadRecords(ctx.OpenInput("sessions", PathOrDefault(o.in)), o.in);
  const auto pairs = DefaultComparisonPairs();
  const ComparisonTable table = MotiveVsAppCategory(records, pairs);
  ctx.WriteOutput("comparison_json", PathOrDefault(o.out), ComparisonJson(table));
  if (!o.tsv.empty()) ctx.WriteOutput("comparison_tsv", o.tsv, ComparisonTsv(table));
}

void RunLongtail(const Options& o, RunContext& ctx) {
  if (o.k == 0) throw ValidationError("--k must be >= 1");
  ctx.config() = {{"k", o.k}};
  const auto records = ReadRecords(ctx.OpenInput("sessions", PathOrDefault(o.in)), o.in);
  ctx.WriteOutput("longtail", PathOrDefault(o.out), LongTailJson(LongTail(records, o.k)));
}

void RunKappa(const Options& o, RunContext& ctx) {
  const RaterCodes a = formats::ParseRaterCodes(ctx.OpenInput("rater_a", o.rater_a));
  const RaterCodes b = formats::ParseRaterCodes(ctx.OpenInput("rater_b", o.rater_b));
  std::map<std::string, std::uint64_t> freq;
  if (!o.frequencies.empty()) {
    for (const auto& f : formats::ParseResidual(ctx.OpenInput("frequencies", o.frequencies))) {
      freq[f.prompt] += f.count;
    }
  }
  const CountMatrix matrix = ConfusionMatrix(a, b);
  const KappaResult k = CohenKappa(matrix);
  auto kj = [](const KappaResult& r) {
    return ordered_json{{"kappa", r.kappa}, {"po", r.po},         {"pe", r.pe},
                        {"se", r.se},       {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
                        {"n", r.n}};
  };
  ordered_json j = kj(k);
  j["agreements"] = matrix.trace();
  j["disagreements"] = matrix.total() - matrix.trace();
  ordered_json labels = ordered_json::array(), rows = ordered_json::array();
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    labels.push_back(MotiveName(kCodedMotives[r]));
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < matrix.size(); ++c) row.push_back(matrix.at(r, c));
    rows.push_back(row);
  }
  j["labels"] = labels;
  j["matrix"] = rows;
  ordered_json per = ordered_json::array();
  for (const auto& ck : PerCategoryKappa(matrix)) {
    per.push_back({{"motive", MotiveName(kCodedMotives[ck.category])},
                   {"result", ck.result ? kj(*ck.result) : ordered_json(nullptr)},
                   {"note", ck.note}});
  }
  j["per_category"] = per;
  ordered_json dis = ordered_json::array();
  for (const auto& d : Disagreements(a, b, freq)) {
    dis.push_back({{"prompt", d.prompt}, {"a", MotiveName(d.motive_a)}, {"b", MotiveName(d.motive_b)}});
  }
  j["disagreement_list"] = dis;
  ctx.WriteOutput("kappa", PathOrDefault(o.out), j.dump(2) + "\n");
}

void RunServe(const Options& o, RunContext& ctx, std::ostream& err) {
  ServiceConfig config;
  config.store_path = o.store;
  if (config.store_path.empty()) {
    if (const char* env = std::getenv("MOTIVELOG_STORE")) config.store_path = env;
  }
  if (config.store_path.empty()) throw ValidationError("--store or MOTIVELOG_STORE is required");
  if (o.round_size == 0) throw ValidationError("--round-size must be >= 1");
  if (o.port < 0 || o.port > 65535) throw ValidationError("--port must be in [0, 65535]");
  if (!o.residual.empty()) config.residual = formats::ParseResidual(ctx.OpenInput("residual", o.residual));
  config.base_mapping = LoadMapping(ctx, o.mapping);
  config.round_size = o.round_size;
  if (!o.static_dir.empty()) config.static_dir = o.static_dir;
  ctx.config() = {{"host", o.host}, {"port", o.port}, {"store", config.store_path},
                  {"round_size", o.round_size}};
  ctx.WriteManifest();
  AnnotationService service(std::move(config));
  httplib::Server server;
  service.Mount(server);
  err << "listening on " << o.host << ":" << o.port << "\n";
  if (!server.listen(o.host, o.port)) throw IoError("cannot listen on " + o.host + ":" + std::to_string(o.port));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Privacy-preserving text input logging and motive analysis", "motivelog"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto io = [&](CLI::App* sub, const char* in_help, const char* out_help) {
    sub->add_option("--in", o.in, in_help);
    sub->add_option("--out", o.out, out_help);
    sub->add_option("--manifest", o.manifest, "Manifest path (default <out>.manifest.json, else stderr)");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic snapshot event corpus");
  gen->add_option("--out", o.out, "events.jsonl (default stdout)");
  gen->add_option("--manifest", o.manifest, "Manifest path");
  gen->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { o.seed = s; o.seed_set = true; }, "Random seed");
  gen->add_option("--config", o.config, "Corpus spec JSON overrides");
  gen->add_option("--participants", o.participants, "Override participant count");
  gen->add_option("--days", o.days, "Override study days");
  gen->add_option("--truth", o.truth, "Ground-truth TSV");
  gen->add_option("--dict-out", o.dict_out, "Dictionary file");
  gen->add_option("--whitelist-out", o.whitelist_out, "Whitelist file");
  gen->add_option("--mapping-out", o.mapping_out, "Coded prompt mapping TSV");
  gen->add_option("--appcats-out", o.appcats_out, "App category TSV");

  auto* abstract = app.add_subcommand("abstract", "Snapshot events -> abstracted word events");
  io(abstract, "events.jsonl (default stdin)", "words.jsonl (default stdout)");
  abstract->add_option("--dict", o.dict, "Dictionary file")->required();
  abstract->add_option("--whitelist", o.whitelist, "Whitelist file");
  abstract->add_option("--gap-timeout", o.gap_timeout_ms, "Session idle gap in ms");
  abstract->add_option("--prompts-out", o.prompts_out, "Session metadata JSONL");

  auto* sessions = app.add_subcommand("sessions", "Word events -> text input records");
  io(sessions, "words.jsonl (default stdin)", "sessions.jsonl (default stdout)");
  sessions->add_option("--prompts", o.prompts, "Session metadata JSONL from abstract")->required();
  sessions->add_option("--appcats", o.appcats, "App category TSV");

  auto* prefilter = app.add_subcommand("prefilter", "Redact prompts seen by a single participant");
  io(prefilter, "sessions.jsonl", "sessions.jsonl");
  prefilter->add_option("--report", o.report, "Redaction report JSON");

  auto* autocode = app.add_subcommand("autocode", "Keyword-code prompts; emit the manual coding residual");
  io(autocode, "sessions.jsonl", "mapping TSV");
  autocode->add_option("--rules", o.rules, "Keyword rules TSV");
  autocode->add_option("--cutoff", o.cutoff, "Frequency fraction a residual prompt must exceed");
  autocode->add_option("--residual-out", o.residual_out, "Residual prompts TSV");

  auto* classify = app.add_subcommand("classify", "Assign motives to records");
  io(classify, "sessions.jsonl", "sessions.jsonl");
  classify->add_option("--mapping", o.mapping, "Mapping TSV");
  classify->add_option("--rules", o.rules, "Keyword rules TSV");

  auto* stats = app.add_subcommand("stats", "Descriptive statistics and rank tests");
  io(stats, "sessions.jsonl", "stats.json");
  stats->add_option("--tsv", o.tsv, "stats.tsv");

  auto* compare = app.add_subcommand("compare", "Motive vs app category comparison");
  io(compare, "sessions.jsonl", "comparison JSON");
  compare->add_option("--tsv", o.tsv, "comparison TSV");

  auto* longtail = app.add_subcommand("longtail", "Top-k prompt coverage");
  io(longtail, "sessions.jsonl", "longtail JSON");
  longtail->add_option("--k", o.k, "Number of top prompts");

  auto* kappa = app.add_subcommand("kappa", "Cohen's kappa between two rater code files");
  kappa->add_option("--out", o.out, "kappa JSON");
  kappa->add_option("--manifest", o.manifest, "Manifest path");
  kappa->add_option("--a", o.rater_a, "Rater A codes TSV")->required();
  kappa->add_option("--b", o.rater_b, "Rater B codes TSV")->required();
  kappa->add_option("--frequencies", o.frequencies, "prompt<TAB>count TSV for ordering");

  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port");
  serve->add_option("--store", o.store, "Append-only code log (or MOTIVELOG_STORE)");
  serve->add_option("--residual", o.residual, "Residual prompts TSV");
  serve->add_option("--mapping", o.mapping, "Base mapping TSV");
  serve->add_option("--round-size", o.round_size, "Calibration round size");
  serve->add_option("--static", o.static_dir, "Console bundle directory");
  serve->add_option("--manifest", o.manifest, "Manifest path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  RunContext ctx(sub->get_name(), args, in, out, err);
  ctx.set_primary_output(o.out);
  ctx.set_manifest_path(o.manifest);
  try {
    const std::string& name = sub->get_name();
    if (name == "gen") RunGen(o, ctx);
    else if (name == "abstract") RunAbstract(o, ctx);
    else if (name == "sessions") RunSessions(o, ctx);
    else if (name == "prefilter") RunPrefilter(o, ctx);
    else if (name == "autocode") RunAutocode(o, ctx);
    else if (name == "classify") RunClassify(o, ctx);
    else if (name == "stats") RunStats(o, ctx);
    else if (name == "compare") RunCompare(o, ctx);
    else if (name == "longtail") RunLongtail(o, ctx);
    else if (name == "kappa") RunKappa(o, ctx);
    else if (name == "serve") {
      RunServe(o, ctx, err);
      return 0;
    }
    ctx.WriteManifest();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::kIo ? 2 : 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  }
  return 0;
}

}  // namespace motivelog
