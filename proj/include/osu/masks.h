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

#ifndef OSU_MASKS_H_
#define OSU_MASKS_H_

#include <string>
#include <string_view>
#include <vector>

#include "osu/box.h"
#include "osu/rle.h"

namespace osu {

struct EntityMask {
  std::string role;
  RleMask mask;
  double confidence = 1.0;  // in [0, 1]

  bool operator==(const EntityMask&) const = default;
};

// Resolves overlaps so that every pixel belongs to at most one entity.
//
// A contested pixel goes to the entity with the higher confidence, then the
// smaller original area, then the earlier position in `masks` (frame-role
// order). The union of all masks is preserved and roles keep their order.
// Throws Error(kGeometry) when the masks differ in size.
std::vector<EntityMask> MakeDisjoint(const std::vector<EntityMask>& masks);

// True when no pixel is set in two masks.
bool PairwiseDisjoint(const std::vector<EntityMask>& masks);

struct RoleBox {
  std::string role;
  BoundingBox box;
};

// Indices (in input order) of the entities covering `p`. A mask covers the
// point when the pixel containing it is set; boxes use half-open
// containment. Throws Error(kRange) when p is outside [0, width) x
// [0, height).
std::vector<size_t> CoveringMasks(const std::vector<EntityMask>& masks, Point p,
                                  int width, int height);
std::vector<size_t> CoveringBoxes(const std::vector<RoleBox>& boxes, Point p,
                                  int width, int height);

// Same as above but returns role identifiers.
std::vector<std::string> CoveringSet(const std::vector<EntityMask>& masks,
                                     Point p, int width, int height);
std::vector<std::string> CoveringSet(const std::vector<RoleBox>& boxes, Point p,
                                     int width, int height);

// Mask file: {"width": W, "height": H,
//             "entities": [{"role": r, "confidence": c, "counts": [...]}]}
struct MaskSet {
  int width = 0;
  int height = 0;
  std::vector<EntityMask> entities;

  bool operator==(const MaskSet&) const = default;
};

std::string SerializeMaskSet(const MaskSet& set);
// Throws ParseError / Error(kSchema) / Error(kCodec).
MaskSet ParseMaskSet(std::string_view json_text);

}  // namespace osu

#endif  // OSU_MASKS_H_
