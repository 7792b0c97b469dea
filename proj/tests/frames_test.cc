// Copyright 2026 The osu Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osu/frames.h"

#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "osu/error.h"

namespace osu {
namespace {

FrameLexicon FromText(const std::string& text) {
  std::istringstream in(text);
  return LoadLexicon(in);
}

ErrorKind KindOf(const std::string& text) {
  try {
    FromText(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::kUsage;
}

TEST(LexiconTest, LoadsSittingFrame) {
  const FrameLexicon lex =
      FromText("sitting\tAgent,Item,Place\tAn {Agent} sits on an {Item} at a {Place}\n");
  ASSERT_TRUE(lex.Contains("sitting"));
  EXPECT_EQ(RolesOf(lex, "sitting"), (std::vector<std::string>{"Agent", "Item", "Place"}));
}

TEST(LexiconTest, EmptyStreamGivesEmptyLexicon) {
  EXPECT_TRUE(FromText("").empty());
  EXPECT_TRUE(FromText("# only a comment\n\n").empty());
}

TEST(LexiconTest, TemplateMissingRoleIsSchemaError) {
  EXPECT_EQ(KindOf("sitting\tAgent,Item,Place\tAn {Agent} sits on an {Item}\n"),
            ErrorKind::kSchema);
}

TEST(LexiconTest, UnknownSlotRoleIsSchemaError) {
  EXPECT_EQ(KindOf("sitting\tAgent,Item\tAn {Agent} sits on an {Item} with {Tool}\n"),
            ErrorKind::kSchema);
}

TEST(LexiconTest, DuplicateVerbIsSchemaError) {
  EXPECT_EQ(KindOf("run\tAgent\t{Agent} runs\nrun\tAgent\t{Agent} runs\n"), ErrorKind::kSchema);
}

TEST(LexiconTest, MalformedRecordReportsLine) {
  try {
    FromText("# header\nrun\tAgent\t{Agent} runs\nbroken line without tabs\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(LexiconTest, DroppableSlotNeedsPreposition) {
  EXPECT_EQ(KindOf("run\tAgent,Place\t{Agent} ~{Place}\n"), ErrorKind::kSchema);
}

TEST(LexiconTest, UnknownVerbIsNotFound) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RolesOf(lex, "riding"), (std::vector<std::string>{"Agent", "Vehicle", "Place"}));
  try {
    RolesOf(lex, "nonexistent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotFound);
  }
}

TEST(LexiconTest, NounDisplayFallsBackToRawId) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(lex.Display("n_woman"), "woman");
  EXPECT_EQ(lex.Display("n_unmapped"), "n_unmapped");
}

TEST(CaptionTest, ReferenceCaptionsVerbatim) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RenderCaption(lex, "sitting",
                          {{"Agent", "n_woman"}, {"Item", "n_chair"}, {"Place", "n_office"}}),
            "A woman sits on a chair at an office");
  EXPECT_EQ(RenderCaption(lex, "riding",
                          {{"Agent", "n_man"}, {"Vehicle", "n_motorcycle"}, {"Place", "n_road"}}),
            "A man rides the motorcycle at a road");
}

TEST(CaptionTest, BlankDroppableSlotIsOmitted) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RenderCaption(lex, "sitting",
                          {{"Agent", "n_woman"}, {"Item", "n_chair"}, {"Place", ""}}),
            "A woman sits on a chair");
  EXPECT_EQ(RenderCaption(lex, "sitting", {{"Agent", "n_woman"}, {"Item", "n_chair"}}),
            "A woman sits on a chair");
}

TEST(CaptionTest, BlankRequiredSlotShowsRoleName) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RenderCaption(lex, "sitting", {{"Agent", ""}, {"Item", "n_chair"}}),
            "An agent sits on a chair");
}

TEST(CaptionTest, UnmappedNounRendersRawId) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RenderCaption(lex, "jumping", {{"Agent", "n_boy"}, {"Obstacle", "n_hurdle"}}),
            "A boy jumps over a n_hurdle");
}

TEST(CaptionTest, RoleNotInFrameIsSchemaError) {
  const FrameLexicon lex = testing::FixtureLexicon();
  try {
    RenderCaption(lex, "sitting", {{"Agent", "n_woman"}, {"Tool", "n_spoon"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
  }
  EXPECT_THROW(RenderCaption(lex, "flying", {}), Error);
}

TEST(CaptionTest, FiveRoleTemplate) {
  const FrameLexicon lex = testing::FixtureLexicon();
  EXPECT_EQ(RenderCaption(lex, "cooking",
                          {{"Agent", "n_woman"}, {"Food", "n_pasta"}, {"Container", "n_pot"},
                           {"Tool", "n_spoon"}, {"Place", "n_kitchen"}}),
            "A woman cooks a pasta in a pot with a spoon at a kitchen");
}

TEST(IndefiniteArticleTest, Vowels) {
  EXPECT_EQ(IndefiniteArticle("office"), "an");
  EXPECT_EQ(IndefiniteArticle("chair"), "a");
  EXPECT_EQ(IndefiniteArticle("Umbrella"), "an");
}

TEST(ValidateSituationTest, ExactMatchIsOk) {
  const FrameLexicon lex = testing::FixtureLexicon();
  GroundedSituation s{"sitting",
                      {{"Agent", "n_woman", std::nullopt},
                       {"Item", "n_chair", BoundingBox{1, 1, 5, 5}},
                       {"Place", "", std::nullopt}}};
  EXPECT_TRUE(ValidateSituation(lex, s).empty());
}

TEST(ValidateSituationTest, RoleNotInFrame) {
  const FrameLexicon lex = testing::FixtureLexicon();
  GroundedSituation s{"sitting",
                      {{"Agent", "n_woman", std::nullopt},
                       {"Item", "n_chair", std::nullopt},
                       {"Place", "", std::nullopt},
                       {"Tool", "n_spoon", std::nullopt}}};
  const auto v = ValidateSituation(lex, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kRoleNotInFrame);
  EXPECT_NE(v[0].message.find("role not in frame"), std::string::npos);
}

TEST(ValidateSituationTest, SevenRolesExceedLimit) {
  const FrameLexicon lex = testing::FixtureLexicon();
  GroundedSituation s{"cooking", {}};
  for (const char* r : {"Agent", "Food", "Container", "Tool", "Place", "Source", "Goal"}) {
    s.entries.push_back({r, "", std::nullopt});
  }
  bool found = false;
  for (const auto& v : ValidateSituation(lex, s)) {
    if (v.kind == ViolationKind::kTooManyRoles) {
      found = true;
      EXPECT_NE(v.message.find("role count exceeds 6"), std::string::npos);
    }
  }
  EXPECT_TRUE(found);
}

TEST(ValidateSituationTest, MissingDuplicateAndUnknownVerb) {
  const FrameLexicon lex = testing::FixtureLexicon();
  GroundedSituation missing{"jumping", {{"Agent", "n_boy", std::nullopt}}};
  ASSERT_EQ(ValidateSituation(lex, missing).size(), 1u);
  EXPECT_EQ(ValidateSituation(lex, missing)[0].kind, ViolationKind::kMissingRole);
  GroundedSituation dup{"jumping",
                        {{"Agent", "n_boy", std::nullopt},
                         {"Agent", "n_boy", std::nullopt},
                         {"Obstacle", "n_fence", std::nullopt}}};
  EXPECT_EQ(ValidateSituation(lex, dup)[0].kind, ViolationKind::kDuplicateRole);
  GroundedSituation unknown{"flying", {}};
  EXPECT_EQ(ValidateSituation(lex, unknown)[0].kind, ViolationKind::kUnknownVerb);
}

}  // namespace
}  // namespace osu
