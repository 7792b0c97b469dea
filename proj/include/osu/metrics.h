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

// Grounded situation recognition metrics.
//
// Five metrics are reported under three settings:
//
//   verb           the verb is right (Top-1: first guess; Top-5: any guess)
//   value          a role's noun matches one of the three annotators
//   value-all      every role's noun matches
//   grounded       value plus a correct grounding (IoU >= threshold, or
//                  both sides agree the role has no box)
//   grounded-all   every role is grounded correctly
//
// Under Top-1 and Top-5 a wrong verb makes every other flag of the sample
// wrong. The Ground-Truth-Verb setting evaluates the frame predicted for the
// given verb and has no verb metric.

#ifndef OSU_METRICS_H_
#define OSU_METRICS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osu/swig_data.h"

namespace osu {

enum class Setting { kTop1 = 0, kTop5 = 1, kGtVerb = 2 };
inline constexpr std::array<Setting, 3> kAllSettings = {
    Setting::kTop1, Setting::kTop5, Setting::kGtVerb};

std::string_view SettingName(Setting s);  // "Top-1-Verb", ...
std::string_view SettingKey(Setting s);   // "top1", "top5", "gt"

// How the frame-level conjunctions (value-all, grounded-all) treat the three
// annotators.
enum class FrameMatch {
  kPerRole,        // each role may match a different annotator
  kSameAnnotator,  // all roles must match one annotator's frame
};

enum class Averaging {
  kMicro,    // pooled over images (and image-role pairs for value/grounded)
  kPerVerb,  // per-verb scores averaged over verbs
};

struct EvalOptions {
  double iou_threshold = 0.5;  // grounded when IoU >= threshold
  FrameMatch frame_match = FrameMatch::kPerRole;
};

struct RoleFlags {
  std::string role;
  bool value_correct = false;
  bool grounded_correct = false;

  bool operator==(const RoleFlags&) const = default;
};

struct SampleFlags {
  std::string image_id;
  std::string gt_verb;
  Setting setting = Setting::kTop1;
  std::optional<bool> verb_correct;  // absent for kGtVerb
  std::vector<RoleFlags> roles;      // ground-truth frame order
  bool value_all = false;
  bool grounded_all = false;
  std::string warning;  // e.g. the frame needed for the setting is missing

  bool operator==(const SampleFlags&) const = default;
};

// Throws Error(kUsage) when the image ids differ.
SampleFlags EvalSample(const Annotation& gt, const Prediction& pred,
                       Setting setting, const EvalOptions& options = {});

struct SettingReport {
  Setting setting = Setting::kTop1;
  size_t images = 0;
  size_t role_units = 0;
  size_t verbs = 0;  // distinct ground-truth verbs
  // Percentages in [0, 100]; nullopt when nothing was evaluated.
  std::optional<double> verb;  // always nullopt for kGtVerb
  std::optional<double> value;
  std::optional<double> value_all;
  std::optional<double> grounded_value;
  std::optional<double> grounded_value_all;

  bool operator==(const SettingReport&) const = default;
};

struct EvalReport {
  double iou_threshold = 0.5;
  Averaging averaging = Averaging::kMicro;
  std::array<SettingReport, 3> settings;  // indexed by Setting
  std::vector<SampleFlags> samples;

  const SettingReport& at(Setting s) const {
    return settings[static_cast<size_t>(s)];
  }
};

// Folds flags in input order. Settings without samples stay undefined.
EvalReport Aggregate(const std::vector<SampleFlags>& flags,
                     Averaging averaging = Averaging::kMicro,
                     double iou_threshold = 0.5);

struct EvaluationRun {
  EvalReport report;
  std::vector<std::string> missing_predictions;  // gt images without a prediction
  std::vector<std::string> unknown_predictions;  // predictions without gt
  std::vector<std::string> warnings;
};

// Matches predictions to annotations by image id and evaluates the
// requested settings over the matched pairs, in annotation order.
EvaluationRun Evaluate(const std::vector<Annotation>& gt,
                       const std::vector<Prediction>& predictions,
                       const std::vector<Setting>& settings,
                       const EvalOptions& options = {},
                       Averaging averaging = Averaging::kMicro);

// Fixed-width table, one line per setting, 2-decimal percentages and an
// em dash for undefined cells.
std::string FormatReport(const EvalReport& report);
std::string ReportToJson(const EvalReport& report);

}  // namespace osu

#endif  // OSU_METRICS_H_
