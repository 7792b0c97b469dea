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

// Region-of-interest queries over a scene bundle: "what is here?"

#ifndef OSU_ROI_H_
#define OSU_ROI_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osu/pipeline.h"

namespace osu {

enum class QueryMode { kMask, kBbox };

std::string_view QueryModeName(QueryMode mode);
// Throws Error(kUsage) for anything but "mask" or "bbox".
QueryMode ParseQueryMode(std::string_view name);

struct Hit {
  std::string role;
  std::string noun;     // noun id
  std::string display;  // human readable noun
  double confidence = 1.0;

  bool operator==(const Hit&) const = default;
};

struct ResolveResult {
  QueryMode mode = QueryMode::kMask;
  std::vector<Hit> hits;  // frame-role order
  bool ambiguous = false;
  bool background = true;
  std::string spoken_text;

  bool operator==(const ResolveResult&) const = default;
};

// Throws Error(kRange) when the point lies outside the image.
ResolveResult ResolvePoint(const SceneBundle& bundle, Point point,
                           QueryMode mode);

// Query at the image center; stands in for "the central object".
ResolveResult ResolveCenter(const SceneBundle& bundle, QueryMode mode);

struct RegionHit {
  std::string role;
  std::string noun;
  std::string display;
  double fraction = 0;  // |region & mask| / |region & image|

  bool operator==(const RegionHit&) const = default;
};

// Overlap of each mask with the rasterized region, largest first. Entities
// with no overlap are omitted. Throws Error(kRange) when the region is
// degenerate or covers no pixel of the image.
std::vector<RegionHit> ResolveRegion(const SceneBundle& bundle,
                                     const BoundingBox& region);

struct AmbiguitySummary {
  int spacing = 1;
  size_t points = 0;
  size_t bbox_ambiguous = 0;
  size_t mask_ambiguous = 0;
  size_t bbox_background = 0;
  size_t mask_background = 0;

  double bbox_fraction() const { return points ? double(bbox_ambiguous) / points : 0; }
  double mask_fraction() const { return points ? double(mask_ambiguous) / points : 0; }
};

// Scans pixel centers (k * spacing + 0.5) in both axes and counts how often
// each mode returns more than one entity. Throws Error(kRange) for
// spacing < 1.
AmbiguitySummary AmbiguityReport(const SceneBundle& bundle, int spacing);

std::string ResolveResultToJson(const ResolveResult& result);
std::string RegionHitsToJson(const std::vector<RegionHit>& hits);
std::string AmbiguityToJson(const AmbiguitySummary& summary);

}  // namespace osu

#endif  // OSU_ROI_H_
