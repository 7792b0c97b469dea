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

#include "osu/masks.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "osu/error.h"

namespace osu {
namespace {

EntityMask BoxEntity(const std::string& role, BoundingBox box, double conf = 1.0) {
  return {role, BoxToMask(box, 20, 20).mask, conf};
}

TEST(MakeDisjointTest, DisjointInputUnchanged) {
  const std::vector<EntityMask> in = {BoxEntity("A", {0, 0, 5, 5}),
                                      BoxEntity("B", {10, 10, 15, 15})};
  EXPECT_EQ(MakeDisjoint(in), in);
}

TEST(MakeDisjointTest, NestedEqualConfidenceSmallerWins) {
  const auto small = BoxEntity("small", {5, 5, 8, 8});
  const auto large = BoxEntity("large", {0, 0, 15, 15});
  const auto out = MakeDisjoint({large, small});
  EXPECT_EQ(out[1].mask, small.mask);
  EXPECT_EQ(out[0].mask, MaskSubtract(large.mask, small.mask));
  EXPECT_EQ(out[0].role, "large");
}

TEST(MakeDisjointTest, HigherConfidenceWinsOverSmallerArea) {
  const auto small = BoxEntity("small", {5, 5, 8, 8}, 0.5);
  const auto large = BoxEntity("large", {0, 0, 15, 15}, 0.9);
  const auto out = MakeDisjoint({small, large});
  EXPECT_TRUE(MaskEmpty(out[0].mask));
  EXPECT_EQ(out[1].mask, large.mask);
}

TEST(MakeDisjointTest, TiesKeepInputOrder) {
  const auto a = BoxEntity("a", {0, 0, 10, 10});
  const auto b = BoxEntity("b", {5, 5, 15, 15});  // same area and confidence
  const auto out = MakeDisjoint({a, b});
  EXPECT_EQ(out[0].mask, a.mask);
  EXPECT_EQ(out[1].mask, MaskSubtract(b.mask, a.mask));
}

TEST(MakeDisjointTest, ThreeWayOverlapMatchesPixelOracle) {
  const std::vector<EntityMask> in = {BoxEntity("A", {0, 0, 12, 12}, 0.9),
                                      BoxEntity("B", {6, 6, 18, 18}, 0.9),
                                      BoxEntity("C", {4, 8, 14, 20}, 0.7)};
  const auto out = MakeDisjoint(in);
  const auto expected = testing::PixelPriorityOracle(in);
  for (size_t i = 0; i < in.size(); ++i) EXPECT_EQ(RleDecode(out[i].mask), expected[i]);
}

TEST(MakeDisjointTest, RandomSetsPreserveUnionAndMatchOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto in = testing::RandomMaskSet(rng, 24, 18, 1 + t % 6);
    const auto out = MakeDisjoint(in);
    ASSERT_TRUE(PairwiseDisjoint(out));
    RleMask before = EmptyMask(24, 18), after = EmptyMask(24, 18);
    for (size_t i = 0; i < in.size(); ++i) {
      before = MaskUnion(before, in[i].mask);
      after = MaskUnion(after, out[i].mask);
      EXPECT_EQ(out[i].role, in[i].role);
      EXPECT_EQ(out[i].confidence, in[i].confidence);
    }
    EXPECT_EQ(before, after);
    const auto expected = testing::PixelPriorityOracle(in);
    for (size_t i = 0; i < in.size(); ++i) EXPECT_EQ(RleDecode(out[i].mask), expected[i]);
  }
}

TEST(MakeDisjointTest, SizeMismatchThrows) {
  EXPECT_THROW(MakeDisjoint({{"a", EmptyMask(4, 4), 1}, {"b", EmptyMask(5, 4), 1}}), Error);
}

TEST(PairwiseDisjointTest, DetectsOverlap) {
  EXPECT_FALSE(PairwiseDisjoint({BoxEntity("a", {0, 0, 10, 10}), BoxEntity("b", {5, 5, 15, 15})}));
  EXPECT_TRUE(PairwiseDisjoint({}));
}

TEST(CoveringTest, MaskAndBoxModes) {
  const std::vector<RoleBox> boxes = {{"A", {0, 0, 10, 10}}, {"B", {5, 5, 15, 15}}};
  std::vector<EntityMask> masks;
  for (const auto& b : boxes) masks.push_back(BoxEntity(b.role, b.box));
  masks = MakeDisjoint(masks);
  EXPECT_EQ(CoveringSet(boxes, {7, 7}, 20, 20), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(CoveringSet(masks, {7, 7}, 20, 20), (std::vector<std::string>{"A"}));
  EXPECT_EQ(CoveringSet(masks, {12, 12}, 20, 20), (std::vector<std::string>{"B"}));
  EXPECT_TRUE(CoveringSet(masks, {18, 2}, 20, 20).empty());
  EXPECT_TRUE(CoveringSet(boxes, {18, 2}, 20, 20).empty());
}

TEST(CoveringTest, OutOfBoundsIsRangeError) {
  for (Point p : {Point{-0.1, 3}, Point{20, 3}, Point{3, 20}}) {
    try {
      CoveringMasks({}, p, 20, 20);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kRange);
    }
  }
}

TEST(MaskSetTest, JsonRoundTrip) {
  std::mt19937_64 rng(2);
  MaskSet set{24, 18, testing::RandomMaskSet(rng, 24, 18, 4)};
  EXPECT_EQ(ParseMaskSet(SerializeMaskSet(set)), set);
}

TEST(MaskSetTest, RejectsBadCounts) {
  EXPECT_THROW(ParseMaskSet(R"({"width":4,"height":4,"entities":[{"role":"a","confidence":1,"counts":[3]}]})"),
               Error);
  EXPECT_THROW(ParseMaskSet(R"({"width":4,"height":4,"entities":[{"role":"a","confidence":2,"counts":[16]}]})"),
               Error);
}

}  // namespace
}  // namespace osu
