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

#include "motivelog/annotation_service.h"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "motivelog/formats.h"

namespace motivelog {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

AnnotationService::Response JsonResponse(int status, const ordered_json& j) {
  return {status, j.dump(), "application/json"};
}

AnnotationService::Response ErrorResponse(int status, const std::string& msg) {
  return JsonResponse(status, {{"error", msg}});
}

std::int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string_view AgreementCodeName(AgreementError::Code code) {
  switch (code) {
    case AgreementError::Code::kNoCommonItems:
      return "no_common_items";
    case AgreementError::Code::kDegenerateMarginals:
      return "degenerate_marginals";
    case AgreementError::Code::kTooFewItems:
      return "too_few_items";
  }
  return "agreement_error";
}

ordered_json KappaJson(const KappaResult& k) {
  return {{"kappa", k.kappa}, {"po", k.po},           {"pe", k.pe},
          {"se", k.se},       {"ci_low", k.ci_low},   {"ci_high", k.ci_high},
          {"n", k.n}};
}

// Parses a JSON object body; nullopt on malformed input.
std::optional<json> ParseBody(std::string_view body) {
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

std::optional<std::string> StringField(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

bool IsValidRaterId(std::string_view id) {
  if (id.empty() || id.size() > 32) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

AnnotationService::AnnotationService(ServiceConfig config)
    : config_(std::move(config)) {
  if (config_.store_path.empty()) throw ValidationError("store path is empty");
  std::map<std::string, std::uint64_t> merged;
  for (const auto& p : config_.residual) {
    const std::string key = NormalizePrompt(p.prompt);
    if (!key.empty()) merged[key] += p.count;
  }
  for (const auto& [prompt, count] : merged) queue_.push_back({prompt, count});
  std::stable_sort(queue_.begin(), queue_.end(),
                   [](const PromptFrequency& a, const PromptFrequency& b) {
                     return a.count > b.count;
                   });
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    queue_index_[queue_[i].prompt] = i;
  }

  auto state = std::make_shared<State>();
  {
    std::ifstream in(config_.store_path);
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        ApplyLogLine(*state, line);
      } catch (const std::exception& e) {
        throw ValidationError(config_.store_path + ":" +
                              std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  state_ = std::move(state);
  log_ = std::fopen(config_.store_path.c_str(), "a");
  if (!log_) throw IoError("cannot open store '" + config_.store_path + "'");
}

AnnotationService::~AnnotationService() {
  if (log_) {
    try {
      WriteSnapshot();
    } catch (const std::exception&) {
    }
    std::fclose(log_);
  }
}

std::shared_ptr<const AnnotationService::State> AnnotationService::Snapshot()
    const {
  return std::atomic_load(&state_);
}

void AnnotationService::Publish(std::shared_ptr<const State> state) {
  std::atomic_store(&state_, std::move(state));
}

void AnnotationService::Append(const std::string& line) {
  if (std::fputs((line + "\n").c_str(), log_) == EOF || std::fflush(log_) != 0 ||
      ::fsync(fileno(log_)) != 0) {
    throw IoError("cannot append to store '" + config_.store_path + "'");
  }
}

void AnnotationService::ApplyLogLine(State& state, std::string_view line) const {
  const json j = json::parse(line.begin(), line.end());
  const std::string type = j.at("type").get<std::string>();
  const std::string prompt = j.at("prompt").get<std::string>();
  const auto motive = ParseMotive(j.at("motive").get<std::string>());
  if (!motive || !IsCodedMotive(*motive)) throw ValidationError("bad motive");
  if (type == "code") {
    state.codes[j.at("rater").get<std::string>()][prompt] =
        Code{*motive, j.at("round").get<int>(), j.at("version").get<int>(),
             j.at("ts").get<std::int64_t>()};
  } else if (type == "resolve") {
    state.resolutions[prompt] = Resolution{
        *motive, j.at("resolver").get<std::string>(), j.at("ts").get<std::int64_t>()};
  } else {
    throw ValidationError("unknown log entry type '" + type + "'");
  }
  ++state.log_entries;
}

int AnnotationService::RoundOf(const std::string& prompt) const {
  return queue_index_.at(prompt) < config_.round_size ? 1 : 2;
}

AnnotationService::Response AnnotationService::NextPrompt(
    std::string_view rater) const {
  if (!IsValidRaterId(rater)) return ErrorResponse(400, "invalid rater id");
  const auto state = Snapshot();
  const auto codes = state->codes.find(std::string(rater));
  std::size_t coded = 0;
  const PromptFrequency* next = nullptr;
  std::size_t position = 0;
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    if (codes != state->codes.end() && codes->second.contains(queue_[i].prompt)) {
      ++coded;
    } else if (!next) {
      next = &queue_[i];
      position = i;
    }
  }
  ordered_json j{{"rater", rater},
                 {"coded", coded},
                 {"remaining", queue_.size() - coded},
                 {"total", queue_.size()}};
  if (next) {
    j["prompt"] = next->prompt;
    j["count"] = next->count;
    j["position"] = position;
    j["round"] = RoundOf(next->prompt);
  } else {
    j["prompt"] = nullptr;
  }
  return JsonResponse(200, j);
}

AnnotationService::Response AnnotationService::PostCode(
    std::string_view json_body, bool amend) {
  const auto body = ParseBody(json_body);
  if (!body) return ErrorResponse(400, "body must be a JSON object");
  const auto rater = StringField(*body, "rater");
  const auto prompt_raw = StringField(*body, "prompt");
  const auto motive_name = StringField(*body, "motive");
  if (!rater || !IsValidRaterId(*rater)) return ErrorResponse(400, "invalid rater id");
  const auto motive = motive_name ? ParseMotive(*motive_name) : std::nullopt;
  if (!motive || !IsCodedMotive(*motive)) return ErrorResponse(400, "invalid motive");
  if (!prompt_raw) return ErrorResponse(400, "missing prompt");
  const std::string prompt = NormalizePrompt(*prompt_raw);
  if (!queue_index_.contains(prompt)) return ErrorResponse(404, "unknown prompt");

  std::lock_guard<std::mutex> lock(write_mu_);
  auto state = std::make_shared<State>(*Snapshot());
  int version = 1;
  auto& rater_codes = state->codes[*rater];
  if (auto it = rater_codes.find(prompt); it != rater_codes.end()) {
    if (!amend) {
      return JsonResponse(409, {{"error", "prompt already coded by rater"},
                                {"motive", MotiveName(it->second.motive)},
                                {"version", it->second.version}});
    }
    version = it->second.version + 1;
  }
  const Code code{*motive, RoundOf(prompt), version, NowMs()};
  ordered_json entry{{"type", "code"},        {"ts", code.ts},
                     {"rater", *rater},       {"prompt", prompt},
                     {"motive", MotiveName(*motive)}, {"round", code.round},
                     {"version", version}};
  try {
    Append(entry.dump());
  } catch (const Error& e) {
    return ErrorResponse(500, e.what());
  }
  rater_codes[prompt] = code;
  ++state->log_entries;
  const bool snapshot = state->log_entries % config_.snapshot_every == 0;
  Publish(std::move(state));
  if (snapshot) WriteSnapshot();
  entry.erase("type");
  return JsonResponse(201, entry);
}

AnnotationService::Response AnnotationService::Agreement(
    std::string_view a, std::string_view b) const {
  if (!IsValidRaterId(a) || !IsValidRaterId(b)) {
    return ErrorResponse(400, "invalid rater id");
  }
  const RaterCodes ca = CodesOf(a);
  const RaterCodes cb = CodesOf(b);
  try {
    const CountMatrix matrix = ConfusionMatrix(ca, cb);
    const KappaResult k = CohenKappa(matrix);
    ordered_json j = KappaJson(k);
    j["a"] = a;
    j["b"] = b;
    j["agreements"] = matrix.trace();
    j["disagreements"] = matrix.total() - matrix.trace();
    ordered_json labels = ordered_json::array();
    ordered_json rows = ordered_json::array();
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
      ordered_json row{{"motive", MotiveName(kCodedMotives[ck.category])}};
      row["result"] = ck.result ? KappaJson(*ck.result) : ordered_json(nullptr);
      row["note"] = ck.note;
      per.push_back(row);
    }
    j["per_category"] = per;
    return JsonResponse(200, j);
  } catch (const AgreementError& e) {
    return JsonResponse(422, {{"error", e.what()}, {"code", AgreementCodeName(e.code())}});
  }
}

AnnotationService::Response AnnotationService::ListDisagreements(
    std::string_view a, std::string_view b) const {
  if (!IsValidRaterId(a) || !IsValidRaterId(b)) {
    return ErrorResponse(400, "invalid rater id");
  }
  std::map<std::string, std::uint64_t> freq;
  for (const auto& p : queue_) freq[p.prompt] = p.count;
  const auto state = Snapshot();
  ordered_json rows = ordered_json::array();
  for (const auto& d : Disagreements(CodesOf(a), CodesOf(b), freq)) {
    if (state->resolutions.contains(d.prompt)) continue;
    rows.push_back({{"prompt", d.prompt},
                    {"count", freq[d.prompt]},
                    {"a", MotiveName(d.motive_a)},
                    {"b", MotiveName(d.motive_b)}});
  }
  return JsonResponse(200, {{"a", a}, {"b", b}, {"disagreements", rows}});
}

AnnotationService::Response AnnotationService::Resolve(std::string_view json_body) {
  const auto body = ParseBody(json_body);
  if (!body) return ErrorResponse(400, "body must be a JSON object");
  const auto resolver = StringField(*body, "resolver");
  const auto prompt_raw = StringField(*body, "prompt");
  const auto motive_name = StringField(*body, "motive");
  if (!resolver || !IsValidRaterId(*resolver)) {
    return ErrorResponse(400, "invalid resolver id");
  }
  const auto motive = motive_name ? ParseMotive(*motive_name) : std::nullopt;
  if (!motive || !IsCodedMotive(*motive)) return ErrorResponse(400, "invalid motive");
  if (!prompt_raw) return ErrorResponse(400, "missing prompt");
  const std::string prompt = NormalizePrompt(*prompt_raw);
  if (!queue_index_.contains(prompt)) return ErrorResponse(404, "unknown prompt");

  std::lock_guard<std::mutex> lock(write_mu_);
  auto state = std::make_shared<State>(*Snapshot());
  const Resolution res{*motive, *resolver, NowMs()};
  ordered_json entry{{"type", "resolve"},   {"ts", res.ts},
                     {"resolver", *resolver}, {"prompt", prompt},
                     {"motive", MotiveName(*motive)}};
  try {
    Append(entry.dump());
  } catch (const Error& e) {
    return ErrorResponse(500, e.what());
  }
  state->resolutions[prompt] = res;
  ++state->log_entries;
  const bool snapshot = state->log_entries % config_.snapshot_every == 0;
  Publish(std::move(state));
  if (snapshot) WriteSnapshot();
  entry.erase("type");
  entry["round"] = 3;
  return JsonResponse(201, entry);
}

RaterCodes AnnotationService::CodesOf(std::string_view rater) const {
  RaterCodes out;
  const auto state = Snapshot();
  if (auto it = state->codes.find(std::string(rater)); it != state->codes.end()) {
    for (const auto& [prompt, code] : it->second) out[prompt] = code.motive;
  }
  return out;
}

MotiveMapping AnnotationService::FinalMapping() const {
  MotiveMapping mapping = config_.base_mapping;
  const auto state = Snapshot();
  // Consensus: at least two raters coded the prompt and all agree.
  std::map<std::string, std::vector<std::pair<std::string, const Code*>>> by_prompt;
  for (const auto& [rater, codes] : state->codes) {
    for (const auto& [prompt, code] : codes) {
      by_prompt[prompt].push_back({rater, &code});
    }
  }
  for (const auto& [prompt, codes] : by_prompt) {
    if (codes.size() < 2) continue;
    const Motive m = codes.front().second->motive;
    if (!std::all_of(codes.begin(), codes.end(),
                     [&](const auto& c) { return c.second->motive == m; })) {
      continue;
    }
    std::string coders;
    int round = 0;
    for (const auto& [rater, code] : codes) {
      if (!coders.empty()) coders += '+';
      coders += rater;
      round = std::max(round, code->round);
    }
    mapping.Set(prompt, MappingEntry{m, Provenance::kManualCoded, coders, round});
  }
  for (const auto& [prompt, res] : state->resolutions) {
    mapping.Set(prompt,
                MappingEntry{res.motive, Provenance::kManualCoded, res.resolver, 3});
  }
  return mapping;
}

AnnotationService::Response AnnotationService::ExportMapping(bool raw_tsv) const {
  const MotiveMapping mapping = FinalMapping();
  const std::string tsv = formats::SerializeMapping(mapping);
  if (raw_tsv) return {200, tsv, "text/tab-separated-values; charset=utf-8"};
  ordered_json entries = ordered_json::array();
  for (const auto& [prompt, e] : mapping.entries()) {
    ordered_json row{{"prompt", prompt},
                     {"motive", MotiveName(e.motive)},
                     {"provenance", ProvenanceName(e.provenance)}};
    row["coder"] = e.coder ? ordered_json(*e.coder) : ordered_json(nullptr);
    row["round"] = e.round ? ordered_json(*e.round) : ordered_json(nullptr);
    entries.push_back(row);
  }
  return JsonResponse(200, {{"entries", entries}, {"tsv", tsv}});
}

AnnotationService::Response AnnotationService::ExportRaterCodes(
    std::string_view rater) const {
  if (!IsValidRaterId(rater)) return ErrorResponse(400, "invalid rater id");
  MotiveMapping mapping;
  const auto state = Snapshot();
  if (auto it = state->codes.find(std::string(rater)); it != state->codes.end()) {
    for (const auto& [prompt, code] : it->second) {
      mapping.Set(prompt, MappingEntry{code.motive, Provenance::kManualCoded,
                                       std::string(rater), code.round});
    }
  }
  return JsonResponse(200, {{"rater", rater}, {"tsv", formats::SerializeMapping(mapping)}});
}

void AnnotationService::WriteSnapshot() const {
  const auto state = Snapshot();
  std::string out = "# rater\tprompt\tmotive\tround\tversion\tts\n";
  for (const auto& [rater, codes] : state->codes) {
    for (const auto& [prompt, c] : codes) {
      out += rater + '\t' + prompt + '\t' + std::string(MotiveName(c.motive)) +
             '\t' + std::to_string(c.round) + '\t' + std::to_string(c.version) +
             '\t' + std::to_string(c.ts) + '\n';
    }
  }
  for (const auto& [prompt, r] : state->resolutions) {
    out += r.resolver + '\t' + prompt + '\t' + std::string(MotiveName(r.motive)) +
           "\t3\t0\t" + std::to_string(r.ts) + '\n';
  }
  const std::string path = config_.store_path + ".snapshot.tsv";
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << out;
    if (!f) throw IoError("cannot write snapshot '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot replace snapshot '" + path + "'");
  }
}

void AnnotationService::Mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  auto rater_of = [](const httplib::Request& req) {
    if (req.has_param("rater")) return req.get_param_value("rater");
    return req.get_header_value("X-Rater-Id");
  };
  server.Get("/api/prompts/next", [=, this](const httplib::Request& req,
                                             httplib::Response& res) {
    send(res, NextPrompt(rater_of(req)));
  });
  server.Post("/api/codes", [=, this](const httplib::Request& req,
                                       httplib::Response& res) {
    std::string body = req.body;
    // The header identifies the rater when the body does not.
    if (auto j = ParseBody(body); j && !j->contains("rater") &&
                                  req.has_header("X-Rater-Id")) {
      (*j)["rater"] = req.get_header_value("X-Rater-Id");
      body = j->dump();
    }
    send(res, PostCode(body, req.get_param_value("amend") == "true"));
  });
  server.Get("/api/codes/export", [=, this](const httplib::Request& req,
                                             httplib::Response& res) {
    send(res, ExportRaterCodes(rater_of(req)));
  });
  server.Get("/api/agreement", [=, this](const httplib::Request& req,
                                          httplib::Response& res) {
    send(res, Agreement(req.get_param_value("a"), req.get_param_value("b")));
  });
  server.Get("/api/disagreements", [=, this](const httplib::Request& req,
                                              httplib::Response& res) {
    send(res, ListDisagreements(req.get_param_value("a"),
                                req.get_param_value("b")));
  });
  server.Post("/api/resolve", [=, this](const httplib::Request& req,
                                         httplib::Response& res) {
    send(res, Resolve(req.body));
  });
  server.Get("/api/mapping/export", [=, this](const httplib::Request& req,
                                               httplib::Response& res) {
    send(res, ExportMapping(req.get_param_value("format") == "tsv"));
  });
  if (config_.static_dir) server.set_mount_point("/", *config_.static_dir);
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                  std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(ordered_json{{"error", what}}.dump(), "application/json");
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(ordered_json{{"error", httplib::status_message(res.status)}}.dump(),
                      "application/json");
    }
  });
}

}  // namespace motivelog
