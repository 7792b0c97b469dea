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

#include "osu/metrics.h"

#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "json_util.h"
#include "osu/error.h"

namespace osu {
namespace {

bool NounMatches(const RoleAnnotation& gt, std::string_view noun) {
  for (const auto& n : gt.nouns) {
    if (n == noun) return true;
  }
  return false;
}

bool GroundingCorrect(const RoleAnnotation& gt, const PredictedRole& pred,
                      double iou_threshold) {
  if (gt.box) {
    return pred.box.has_value() && BoxIou(*gt.box, *pred.box) >= iou_threshold;
  }
  return pred.box_absent;
}

// Frame used by a setting, or nullptr when the verb gate fails or the frame
// is missing (the latter also sets `warning`).
const PredictedFrame* SelectFrame(const Annotation& gt, const Prediction& pred,
                                  Setting setting, SampleFlags& flags) {
  switch (setting) {
    case Setting::kTop1: {
      flags.verb_correct = !pred.top5.empty() && pred.top5[0].verb == gt.verb;
      if (!*flags.verb_correct) return nullptr;
      if (!pred.top5[0].frame) {
        flags.warning = "top-1 frame missing";
        return nullptr;
      }
      return &*pred.top5[0].frame;
    }
    case Setting::kTop5: {
      flags.verb_correct = false;
      for (const auto& g : pred.top5) {
        if (g.verb != gt.verb) continue;
        flags.verb_correct = true;
        if (!g.frame) {
          flags.warning = "top-5 frame for verb '" + g.verb + "' missing";
          return nullptr;
        }
        return &*g.frame;
      }
      return nullptr;
    }
    case Setting::kGtVerb: {
      if (!pred.gt_conditioned) {
        flags.warning = "ground-truth-verb frame missing";
        return nullptr;
      }
      return &*pred.gt_conditioned;
    }
  }
  return nullptr;
}

std::optional<double> Percent(size_t num, size_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

struct Tally {
  size_t images = 0;
  size_t role_units = 0;
  size_t verb = 0;
  size_t value = 0;
  size_t value_all = 0;
  size_t grounded = 0;
  size_t grounded_all = 0;

  void Add(const SampleFlags& f) {
    ++images;
    role_units += f.roles.size();
    verb += f.verb_correct.value_or(false) ? 1 : 0;
    for (const auto& r : f.roles) {
      value += r.value_correct ? 1 : 0;
      grounded += r.grounded_correct ? 1 : 0;
    }
    value_all += f.value_all ? 1 : 0;
    grounded_all += f.grounded_all ? 1 : 0;
  }
};

std::string Cell(const std::optional<double>& v) {
  if (!v) return "\xE2\x80\x94";  // em dash
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

// Right-aligns `s` in `width` display columns (UTF-8 aware).
std::string Pad(const std::string& s, size_t width) {
  size_t cols = 0;
  for (unsigned char c : s) cols += (c & 0xC0) != 0x80 ? 1 : 0;
  return cols >= width ? s : std::string(width - cols, ' ') + s;
}

internal::Json OptionalJson(const std::optional<double>& v) {
  return v ? internal::Json(*v) : internal::Json(nullptr);
}

}  // namespace

std::string_view SettingName(Setting s) {
  switch (s) {
    case Setting::kTop1: return "Top-1-Verb";
    case Setting::kTop5: return "Top-5-Verb";
    case Setting::kGtVerb: return "Ground-Truth-Verb";
  }
  return "";
}

std::string_view SettingKey(Setting s) {
  switch (s) {
    case Setting::kTop1: return "top1";
    case Setting::kTop5: return "top5";
    case Setting::kGtVerb: return "gt";
  }
  return "";
}

SampleFlags EvalSample(const Annotation& gt, const Prediction& pred,
                       Setting setting, const EvalOptions& options) {
  if (gt.image_id != pred.image_id) {
    throw Error(ErrorKind::kUsage, "image id mismatch: '" + gt.image_id +
                                       "' vs '" + pred.image_id + "'");
  }
  SampleFlags flags;
  flags.image_id = gt.image_id;
  flags.gt_verb = gt.verb;
  flags.setting = setting;
  const PredictedFrame* frame = SelectFrame(gt, pred, setting, flags);

  flags.roles.reserve(gt.roles.size());
  bool all_value = !gt.roles.empty();
  bool all_grounded = !gt.roles.empty();
  for (const auto& role : gt.roles) {
    RoleFlags rf;
    rf.role = role.role;
    const PredictedRole* pr = frame ? frame->Find(role.role) : nullptr;
    if (pr) {
      rf.value_correct = NounMatches(role, pr->noun);
      rf.grounded_correct =
          rf.value_correct && GroundingCorrect(role, *pr, options.iou_threshold);
    }
    all_value = all_value && rf.value_correct;
    all_grounded = all_grounded && rf.grounded_correct;
    flags.roles.push_back(std::move(rf));
  }

  if (options.frame_match == FrameMatch::kPerRole || !frame) {
    flags.value_all = frame && all_value;
    flags.grounded_all = frame && all_grounded;
    return flags;
  }

  // One annotator's frame must explain every role at once.
  for (int k = 0; k < kAnnotatorsPerImage; ++k) {
    bool nouns_ok = !gt.roles.empty();
    bool grounded_ok = nouns_ok;
    for (const auto& role : gt.roles) {
      const PredictedRole* pr = frame->Find(role.role);
      const bool match = pr && pr->noun == role.nouns[k];
      nouns_ok = nouns_ok && match;
      grounded_ok = grounded_ok && match &&
                    GroundingCorrect(role, *pr, options.iou_threshold);
    }
    flags.value_all = flags.value_all || nouns_ok;
    flags.grounded_all = flags.grounded_all || grounded_ok;
  }
  return flags;
}

EvalReport Aggregate(const std::vector<SampleFlags>& flags, Averaging averaging,
                     double iou_threshold) {
  EvalReport report;
  report.iou_threshold = iou_threshold;
  report.averaging = averaging;
  report.samples = flags;

  for (Setting s : kAllSettings) {
    SettingReport& out = report.settings[static_cast<size_t>(s)];
    out.setting = s;

    Tally total;
    // Insertion-ordered per-verb tallies keep the fold deterministic.
    std::vector<std::string> verb_order;
    std::unordered_map<std::string, Tally> per_verb;
    for (const auto& f : flags) {
      if (f.setting != s) continue;
      total.Add(f);
      auto [it, inserted] = per_verb.try_emplace(f.gt_verb);
      if (inserted) verb_order.push_back(f.gt_verb);
      it->second.Add(f);
    }
    out.images = total.images;
    out.role_units = total.role_units;
    out.verbs = verb_order.size();
    if (total.images == 0) continue;

    if (averaging == Averaging::kMicro) {
      if (s != Setting::kGtVerb) out.verb = Percent(total.verb, total.images);
      out.value = Percent(total.value, total.role_units);
      out.value_all = Percent(total.value_all, total.images);
      out.grounded_value = Percent(total.grounded, total.role_units);
      out.grounded_value_all = Percent(total.grounded_all, total.images);
      continue;
    }

    double verb = 0, value = 0, value_all = 0, grounded = 0, grounded_all = 0;
    for (const auto& v : verb_order) {
      const Tally& t = per_verb[v];
      verb += *Percent(t.verb, t.images);
      value += t.role_units ? *Percent(t.value, t.role_units) : 0.0;
      value_all += *Percent(t.value_all, t.images);
      grounded += t.role_units ? *Percent(t.grounded, t.role_units) : 0.0;
      grounded_all += *Percent(t.grounded_all, t.images);
    }
    const double n = static_cast<double>(verb_order.size());
    if (s != Setting::kGtVerb) out.verb = verb / n;
    out.value = value / n;
    out.value_all = value_all / n;
    out.grounded_value = grounded / n;
    out.grounded_value_all = grounded_all / n;
  }
  return report;
}

EvaluationRun Evaluate(const std::vector<Annotation>& gt,
                       const std::vector<Prediction>& predictions,
                       const std::vector<Setting>& settings,
                       const EvalOptions& options, Averaging averaging) {
  EvaluationRun run;
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.image_id, &p).second) {
      run.warnings.push_back("duplicate prediction for '" + p.image_id +
                             "'; using the first");
    }
  }
  std::set<std::string> gt_ids;
  std::vector<SampleFlags> flags;
  for (const auto& a : gt) {
    gt_ids.insert(a.image_id);
    auto it = by_id.find(a.image_id);
    if (it == by_id.end()) {
      run.missing_predictions.push_back(a.image_id);
      continue;
    }
    for (Setting s : settings) {
      SampleFlags f = EvalSample(a, *it->second, s, options);
      if (!f.warning.empty()) {
        run.warnings.push_back(a.image_id + " (" + std::string(SettingName(s)) +
                               "): " + f.warning);
      }
      flags.push_back(std::move(f));
    }
  }
  for (const auto& p : predictions) {
    if (!gt_ids.count(p.image_id)) run.unknown_predictions.push_back(p.image_id);
  }
  run.report = Aggregate(flags, averaging, options.iou_threshold);
  return run;
}

std::string FormatReport(const EvalReport& report) {
  constexpr size_t kName = 18;
  constexpr size_t kCol = 9;
  std::string out = "setting" + std::string(kName - 7, ' ');
  for (const char* h : {"verb", "value", "val-all", "grnd", "grnd-all"}) {
    out += Pad(h, kCol);
  }
  out += Pad("images", kCol) + "\n";
  for (const auto& s : report.settings) {
    std::string name(SettingName(s.setting));
    out += name + std::string(kName - name.size(), ' ');
    for (const auto* v : {&s.verb, &s.value, &s.value_all, &s.grounded_value,
                          &s.grounded_value_all}) {
      out += Pad(Cell(*v), kCol);
    }
    out += Pad(std::to_string(s.images), kCol) + "\n";
  }
  return out;
}

std::string ReportToJson(const EvalReport& report) {
  internal::Json settings = internal::Json::object();
  for (const auto& s : report.settings) {
    internal::Json j = {{"images", s.images},
                        {"role_units", s.role_units},
                        {"verbs", s.verbs}};
    if (s.setting != Setting::kGtVerb) j["verb"] = OptionalJson(s.verb);
    j["value"] = OptionalJson(s.value);
    j["value_all"] = OptionalJson(s.value_all);
    j["grounded_value"] = OptionalJson(s.grounded_value);
    j["grounded_value_all"] = OptionalJson(s.grounded_value_all);
    settings[std::string(SettingKey(s.setting))] = std::move(j);
  }
  internal::Json doc = {
      {"iou_threshold", report.iou_threshold},
      {"averaging", report.averaging == Averaging::kMicro ? "micro" : "per-verb"},
      {"settings", std::move(settings)}};
  return doc.dump(2) + "\n";
}

}  // namespace osu
