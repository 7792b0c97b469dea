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

// Scene assembly: situation -> caption, boxes -> masks -> disjoint masks.
//
// Bundle file:
//
//   {"image_id": ..., "width": W, "height": H, "verb": ...,
//    "roles": [{"role": r, "noun": n, "display": d, "box": [x1,y1,x2,y2]}],
//    "caption": ..., "masks": <mask file>,
//    "provenance": {"backend_id", "started_at", "finished_at",
//                   "elapsed_ms", "degraded", "degraded_reason"}}
//
// "box" is omitted for ungrounded roles.

#ifndef OSU_PIPELINE_H_
#define OSU_PIPELINE_H_

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "osu/frames.h"
#include "osu/masks.h"
#include "osu/segmenter.h"
#include "osu/situation.h"
#include "osu/swig_data.h"

namespace osu {

struct Provenance {
  std::string backend_id;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;  // ISO 8601 UTC
  double elapsed_ms = 0;
  bool degraded = false;  // fallback masks were used
  std::string degraded_reason;

  bool operator==(const Provenance&) const = default;
};

struct SceneBundle {
  std::string image_id;
  int width = 0;
  int height = 0;
  GroundedSituation situation;
  // role -> display string of its noun, as used in the caption.
  std::map<std::string, std::string, std::less<>> display;
  std::string caption;
  std::vector<EntityMask> masks;  // pairwise disjoint, frame-role order
  Provenance provenance;

  // Display string for a role's noun (the raw noun id when unknown).
  std::string DisplayOf(const SituationEntry& entry) const;
  const EntityMask* MaskOf(std::string_view role) const;

  bool operator==(const SceneBundle&) const = default;
};

struct BuildOptions {
  std::string image_ref;  // forwarded to the segmenter; defaults to image_id
  // Returns the current time as ISO 8601; defaults to the system clock.
  std::function<std::string()> now;
};

// Majority noun per role over the annotators (ties go to the earliest
// annotator, blanks only win when every annotator left the role blank).
GroundedSituation SituationFromAnnotation(const Annotation& annotation);
GroundedSituation SituationFromFrame(const PredictedFrame& frame,
                                     std::string verb);

// Throws Error(kValidation) when the situation does not match its frame.
// Segmenter failures do not throw: the bundle falls back to box-fill masks
// and is marked degraded.
SceneBundle BuildScene(const GroundedSituation& situation,
                       std::string image_id, int width, int height,
                       const FrameLexicon& lexicon, SegmenterBackend& backend,
                       const BuildOptions& options = {});

// Checks every bundle invariant that does not need a lexicon. Throws
// Error(kValidation).
void ValidateBundle(const SceneBundle& bundle);
// True when the caption equals the one rendered from the situation.
bool CaptionConsistent(const SceneBundle& bundle, const FrameLexicon& lexicon);

std::string SaveBundle(const SceneBundle& bundle);
// Throws ParseError / Error(kSchema) / Error(kValidation).
SceneBundle LoadBundle(std::string_view json_text);

void SaveBundleFile(const SceneBundle& bundle, const std::string& path);
SceneBundle LoadBundleFile(const std::string& path);

// Current UTC time, or SOURCE_DATE_EPOCH when that variable is set.
std::string IsoTimestampNow();

}  // namespace osu

#endif  // OSU_PIPELINE_H_
