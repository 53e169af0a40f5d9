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

#include "motivelog/formats.h"

#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace motivelog::formats {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(JsonLinesTest, EventRoundTrip) {
  FieldSnapshotEvent e{1600000000123, "p1", "com.whatsapp", "f\"1",
                       std::string("Type a message"), "Hä \\ \"x\"\n\t\x01 😀"};
  const std::string line = ToJsonLine(e);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(ParseEvent(line), e);
  e.prompt.reset();
  EXPECT_EQ(line.find("prompt") != std::string::npos, true);
  EXPECT_EQ(ToJsonLine(e).find("prompt"), std::string::npos);
  EXPECT_EQ(ParseEvent(ToJsonLine(e)), e);
}

TEST(JsonLinesTest, EventKeyOrder) {
  FieldSnapshotEvent e{5, "p", "a", "f", std::nullopt, "c"};
  EXPECT_EQ(ToJsonLine(e), R"({"ts":5,"pid":"p","app":"a","field":"f","content":"c"})");
}

TEST(JsonLinesTest, WordEventRoundTrip) {
  WordEvent w{7, "p1", "app", "s1", WordEventKind::kChanged, {1, 4}, std::string("gut")};
  EXPECT_EQ(ToJsonLine(w),
            R"({"ts":7,"pid":"p1","app":"app","sid":"s1","kind":"changed","cats":[1,4],"wl":"gut"})");
  EXPECT_EQ(ParseWordEvent(ToJsonLine(w)), w);
  w.whitelist_token.reset();
  w.category_ids.clear();
  EXPECT_EQ(ParseWordEvent(ToJsonLine(w)), w);
}

TEST(JsonLinesTest, SessionInfoRoundTrip) {
  SessionInfo s{"s1", "p1", "app", std::string("suche"), 3, 9};
  EXPECT_EQ(ParseSessionInfo(ToJsonLine(s)), s);
}

TEST(JsonLinesTest, RecordRoundTrip) {
  TextInputRecord r;
  r.session_id = "s1";
  r.participant_id = "p1";
  r.app_id = "app";
  r.app_category = "Social Media";
  r.prompt_text = "write a caption";
  r.motive = Motive::kPosting;
  r.words_added = 3;
  r.words_changed = 1;
  r.words_removed = 2;
  r.total_words = 4;
  r.matched_words = 2;
  r.many_hot = CategorySet({2, 9});
  r.start_ts = 10;
  r.end_ts = 20;
  EXPECT_EQ(ParseRecord(ToJsonLine(r)), r);
}

TEST(JsonLinesTest, RecordInvariantsChecked) {
  TextInputRecord r;
  r.session_id = "s";
  r.participant_id = "p";
  r.app_id = "a";
  r.words_added = 1;
  r.total_words = 2;
  EXPECT_THROW(ParseRecord(ToJsonLine(r)), Error);
}

TEST(JsonLinesTest, ParseErrors) {
  EXPECT_THROW(ParseEvent("{"), Error);
  EXPECT_THROW(ParseEvent("[]"), Error);
  EXPECT_THROW(ParseEvent(R"({"ts":1,"pid":"p","app":"a","field":"f"})"), Error);
  EXPECT_THROW(ParseEvent(R"({"ts":"1","pid":"p","app":"a","field":"f","content":""})"), Error);
  EXPECT_THROW(ParseWordEvent(R"({"ts":1,"pid":"p","app":"a","sid":"s","kind":"moved","cats":[]})"),
               Error);
}

TEST(ForEachLineTest, ReportsLineNumbers) {
  std::istringstream in("{\"ts\":1,\"pid\":\"p\",\"app\":\"a\",\"field\":\"f\",\"content\":\"\"}\n\nbad\n");
  try {
    ReadAll(in, &ParseEvent, "events.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_THAT(e.what(), HasSubstr("events.jsonl line 3"));
    EXPECT_EQ(e.kind(), Error::Kind::kValidation);
  }
}

TEST(DictionaryFormatTest, ParseAndSerialize) {
  std::istringstream in("%\n1\tposemo\n2\tsocial\n%\nhapp*\t1\nfriend\t2 1\n");
  const Dictionary d = ParseDictionary(in);
  EXPECT_EQ(d.categories().size(), 2u);
  EXPECT_THAT(d.Match("happiness"), ElementsAre(1));
  EXPECT_THAT(d.Match("friend"), ElementsAre(1, 2));
  EXPECT_EQ(SerializeDictionary(d), "%\n1\tposemo\n2\tsocial\n%\nhapp*\t1\nfriend\t1 2\n");
  std::istringstream again(SerializeDictionary(d));
  EXPECT_EQ(SerializeDictionary(ParseDictionary(again)), SerializeDictionary(d));
}

TEST(DictionaryFormatTest, Errors) {
  std::istringstream no_header("1\tposemo\n");
  EXPECT_THROW(ParseDictionary(no_header), Error);
  std::istringstream unclosed("%\n1\tposemo\n");
  EXPECT_THROW(ParseDictionary(unclosed), Error);
  std::istringstream unknown("%\n1\tposemo\n%\nx\t5\n");
  EXPECT_THROW(ParseDictionary(unknown), Error);
}

TEST(WhitelistFormatTest, CommentsAndCase) {
  std::istringstream in("# words\nHello\n\nworld\n");
  const Whitelist wl = ParseWhitelist(in);
  EXPECT_EQ(wl.size(), 2u);
  EXPECT_TRUE(wl.Contains("hello"));
}

TEST(MappingFormatTest, RoundTrip) {
  std::istringstream in(
      "# prompt\tmotive\tprovenance\tcoder\tround\n"
      "Write a Caption\tPosting\tManualCoded\tR1\t2\n"
      "suchen\tSearch\tAutoKeyword\n"
      "title\tOther\n");
  const MotiveMapping m = ParseMapping(in);
  ASSERT_EQ(m.size(), 3u);
  const MappingEntry* e = m.Find("write a caption");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->coder, "R1");
  EXPECT_EQ(e->round, 2);
  EXPECT_EQ(m.Find("suchen")->provenance, Provenance::kAutoKeyword);
  std::istringstream again(SerializeMapping(m));
  EXPECT_EQ(ParseMapping(again).entries(), m.entries());
}

TEST(MappingFormatTest, Errors) {
  std::istringstream bad_motive("x\tChatting\n");
  EXPECT_THROW(ParseMapping(bad_motive), Error);
  std::istringstream uncoded("x\tUnlabeled\n");
  EXPECT_THROW(ParseMapping(uncoded), Error);
  std::istringstream one_column("x\n");
  EXPECT_THROW(ParseMapping(one_column), Error);
}

TEST(RaterCodesFormatTest, SharesMappingSchema) {
  std::string tsv = "# prompt\tmotive\tprovenance\tcoder\tround\n";
  for (int i = 0; i < 40; ++i) tsv += "prompt " + std::to_string(i) + "\tSearch\tManualCoded\tR2\t1\n";
  std::istringstream in(tsv);
  const RaterCodes codes = ParseRaterCodes(in);
  ASSERT_EQ(codes.size(), 40u);
  EXPECT_EQ(codes.at("prompt 7"), Motive::kSearch);
}

TEST(TsvFormatTest, AppCategoriesRulesResidual) {
  std::istringstream apps("com.whatsapp\tCommunication\n");
  const AppCategoryMap m = ParseAppCategories(apps);
  EXPECT_EQ(m.at("com.whatsapp"), "Communication");
  std::istringstream dup("a\tX\na\tY\n");
  EXPECT_THROW(ParseAppCategories(dup), Error);

  std::istringstream rules("Tweet\tCommenting\nsuch\tSearch\n");
  const KeywordRuleSet r = ParseRules(rules);
  ASSERT_EQ(r.rules().size(), 2u);
  EXPECT_EQ(r.rules()[0].stem, "tweet");

  const std::vector<PromptFrequency> residual = {{"username", 10}, {"title", 3}};
  std::istringstream res(SerializeResidual(residual));
  EXPECT_EQ(ParseResidual(res), residual);
}

TEST(SplitTabsTest, KeepsEmptyFields) {
  EXPECT_THAT(SplitTabs("a\t\tb\t"), ElementsAre("a", "", "b", ""));
}

}  // namespace
}  // namespace motivelog::formats
