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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mask_json.h"
#include "osu/error.h"

namespace osu {
namespace {

void CheckPoint(Point p, int width, int height) {
  if (!(p.x >= 0 && p.x < width && p.y >= 0 && p.y < height)) {
    throw Error(ErrorKind::kRange,
                "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                    ") is outside the " + std::to_string(width) + "x" +
                    std::to_string(height) + " image");
  }
}

}  // namespace

std::vector<EntityMask> MakeDisjoint(const std::vector<EntityMask>& masks) {
  if (masks.empty()) return {};
  for (const auto& m : masks) {
    if (m.mask.width != masks[0].mask.width ||
        m.mask.height != masks[0].mask.height) {
      throw Error(ErrorKind::kGeometry,
                  "mask for role '" + m.role + "' has a different size");
    }
  }
  std::vector<uint64_t> area(masks.size());
  for (size_t i = 0; i < masks.size(); ++i) area[i] = MaskArea(masks[i].mask);

  std::vector<size_t> order(masks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (masks[a].confidence != masks[b].confidence) {
      return masks[a].confidence > masks[b].confidence;
    }
    return area[a] < area[b];
  });

  std::vector<EntityMask> out = masks;
  RleMask claimed = EmptyMask(masks[0].mask.width, masks[0].mask.height);
  for (size_t idx : order) {
    out[idx].mask = MaskSubtract(masks[idx].mask, claimed);
    claimed = MaskUnion(claimed, masks[idx].mask);
  }
  return out;
}

bool PairwiseDisjoint(const std::vector<EntityMask>& masks) {
  if (masks.empty()) return true;
  RleMask seen = EmptyMask(masks[0].mask.width, masks[0].mask.height);
  for (const auto& m : masks) {
    if (!MaskEmpty(MaskIntersect(seen, m.mask))) return false;
    seen = MaskUnion(seen, m.mask);
  }
  return true;
}

std::vector<size_t> CoveringMasks(const std::vector<EntityMask>& masks, Point p,
                                  int width, int height) {
  CheckPoint(p, width, height);
  const int col = static_cast<int>(std::floor(p.x));
  const int row = static_cast<int>(std::floor(p.y));
  std::vector<size_t> hits;
  for (size_t i = 0; i < masks.size(); ++i) {
    if (MaskContainsPixel(masks[i].mask, col, row)) hits.push_back(i);
  }
  return hits;
}

std::vector<size_t> CoveringBoxes(const std::vector<RoleBox>& boxes, Point p,
                                  int width, int height) {
  CheckPoint(p, width, height);
  std::vector<size_t> hits;
  for (size_t i = 0; i < boxes.size(); ++i) {
    if (BoxContains(boxes[i].box, p)) hits.push_back(i);
  }
  return hits;
}

std::vector<std::string> CoveringSet(const std::vector<EntityMask>& masks,
                                     Point p, int width, int height) {
  std::vector<std::string> roles;
  for (size_t i : CoveringMasks(masks, p, width, height)) {
    roles.push_back(masks[i].role);
  }
  return roles;
}

std::vector<std::string> CoveringSet(const std::vector<RoleBox>& boxes, Point p,
                                     int width, int height) {
  std::vector<std::string> roles;
  for (size_t i : CoveringBoxes(boxes, p, width, height)) {
    roles.push_back(boxes[i].role);
  }
  return roles;
}

namespace internal {

Json MaskSetToJson(const MaskSet& set) {
  Json entities = Json::array();
  for (const auto& e : set.entities) {
    entities.push_back({{"role", e.role},
                        {"confidence", e.confidence},
                        {"counts", e.mask.counts}});
  }
  return Json{{"width", set.width},
              {"height", set.height},
              {"entities", std::move(entities)}};
}

MaskSet MaskSetFromJson(const Json& doc, const std::string& where) {
  MaskSet set;
  set.width = IntField(doc, "width", where);
  set.height = IntField(doc, "height", where);
  if (set.width <= 0 || set.height <= 0) {
    SchemaFail(where, "width and height must be positive");
  }
  const Json& entities = Field(doc, "entities", where);
  if (!entities.is_array()) SchemaFail(where, "'entities' must be an array");
  for (size_t i = 0; i < entities.size(); ++i) {
    const std::string at = where + ".entities[" + std::to_string(i) + "]";
    const Json& e = entities[i];
    EntityMask m;
    m.role = StringField(e, "role", at);
    m.confidence = NumberField(e, "confidence", at);
    if (!(m.confidence >= 0 && m.confidence <= 1)) {
      SchemaFail(at, "confidence must lie in [0, 1]");
    }
    const Json& counts = Field(e, "counts", at);
    if (!counts.is_array()) SchemaFail(at, "'counts' must be an array");
    m.mask.width = set.width;
    m.mask.height = set.height;
    m.mask.counts.reserve(counts.size());
    for (const auto& c : counts) {
      if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0)) {
        SchemaFail(at, "counts must be non-negative integers");
      }
      m.mask.counts.push_back(c.get<uint32_t>());
    }
    try {
      ValidateRle(m.mask);
    } catch (const Error& err) {
      throw Error(ErrorKind::kCodec, at + ": " + err.what());
    }
    set.entities.push_back(std::move(m));
  }
  return set;
}

}  // namespace internal

std::string SerializeMaskSet(const MaskSet& set) {
  return internal::MaskSetToJson(set).dump();
}

MaskSet ParseMaskSet(std::string_view json_text) {
  return internal::MaskSetFromJson(internal::ParseJsonText(json_text), "mask file");
}

}  // namespace osu
