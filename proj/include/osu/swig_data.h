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

// SWiG-style annotation and prediction files.
//
// Annotation file: a JSON object keyed by image id,
//
//   {"img.jpg": {"width": W, "height": H, "verb": "riding",
//                "frames": [{role: noun}, {role: noun}, {role: noun}],
//                "bb": {role: [x1, y1, x2, y2] | [-1, -1, -1, -1]}}}
//
// Prediction file: a JSON array of
//
//   {"image_id": "img.jpg",
//    "verbs": [{"verb": v, "score": s, "frame": {role: {"noun": n,
//               "box": [x1, y1, x2, y2], "box_absent": bool}}}],
//    "gt_frame": {role: {...}}}
//
// The all -1 box is normalized to "absent" at parse time.

#ifndef OSU_SWIG_DATA_H_
#define OSU_SWIG_DATA_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osu/box.h"
#include "osu/error.h"
#include "osu/situation.h"

namespace osu {

inline constexpr int kAnnotatorsPerImage = 3;
inline constexpr int kMaxVerbGuesses = 5;

struct RoleAnnotation {
  std::string role;
  std::array<std::string, kAnnotatorsPerImage> nouns;
  std::optional<BoundingBox> box;  // absent for ungrounded roles

  bool operator==(const RoleAnnotation&) const = default;
};

struct Annotation {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::string verb;
  std::vector<RoleAnnotation> roles;

  const RoleAnnotation* Find(std::string_view role) const;
  bool operator==(const Annotation&) const = default;
};

struct PredictedRole {
  std::string role;
  std::string noun;
  std::optional<BoundingBox> box;
  bool box_absent = false;  // the model explicitly says "no box"

  bool operator==(const PredictedRole&) const = default;
};

struct PredictedFrame {
  std::string verb;  // empty for the ground-truth-verb frame
  std::vector<PredictedRole> roles;

  const PredictedRole* Find(std::string_view role) const;
  bool operator==(const PredictedFrame&) const = default;
};

struct VerbGuess {
  std::string verb;
  double score = 0;
  std::optional<PredictedFrame> frame;

  bool operator==(const VerbGuess&) const = default;
};

struct Prediction {
  std::string image_id;
  std::vector<VerbGuess> top5;  // scores non-increasing, top5[0].frame set
  std::optional<PredictedFrame> gt_conditioned;

  bool operator==(const Prediction&) const = default;
};

enum class ParseMode {
  kStrict,   // first problem throws
  kLenient,  // problems are collected and the offending record skipped
};

struct ParseIssue {
  std::string image_id;
  std::string field;
  ErrorKind kind;
  std::string message;
};

template <typename T>
struct Parsed {
  std::vector<T> records;
  std::vector<ParseIssue> issues;
};

Parsed<Annotation> ParseAnnotations(std::string_view json_text,
                                    ParseMode mode = ParseMode::kStrict);
Parsed<Prediction> ParsePredictions(std::string_view json_text,
                                    ParseMode mode = ParseMode::kStrict);

std::string SerializeAnnotations(const std::vector<Annotation>& annotations);
std::string SerializePredictions(const std::vector<Prediction>& predictions);

// Reads a whole file; Error(kNotFound) when it cannot be opened.
std::string ReadFile(const std::string& path);

struct DatasetStats {
  size_t images = 0;
  size_t verbs = 0;
  size_t roles = 0;
  size_t nouns = 0;  // distinct non-blank noun ids over all annotators
  size_t boxes = 0;  // grounded role boxes

  bool operator==(const DatasetStats&) const = default;
};

DatasetStats ComputeDatasetStats(const std::vector<Annotation>& dataset);

}  // namespace osu

#endif  // OSU_SWIG_DATA_H_
