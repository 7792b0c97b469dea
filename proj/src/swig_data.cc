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

#include "osu/swig_data.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json_util.h"

namespace osu {

using internal::BoxFromJson;
using internal::BoxToJson;
using internal::Json;

namespace {

// Thrown while parsing one record; converted into an Error or a ParseIssue.
struct RecordProblem {
  std::string field;
  ErrorKind kind;
  std::string message;
};

[[noreturn]] void Fail(std::string field, ErrorKind kind, std::string message) {
  throw RecordProblem{std::move(field), kind, std::move(message)};
}

template <typename T, typename Fn>
void ParseRecord(const std::string& image_id, ParseMode mode, Parsed<T>& out,
                 Fn&& fn) {
  try {
    out.records.push_back(fn());
  } catch (const RecordProblem& p) {
    if (mode == ParseMode::kStrict) {
      throw Error(p.kind, "image '" + image_id + "', field '" + p.field +
                              "': " + p.message);
    }
    out.issues.push_back({image_id, p.field, p.kind, p.message});
  }
}

std::optional<BoundingBox> ReadBox(const Json& v, const std::string& field) {
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    Fail(field, ErrorKind::kSchema,
         "per-annotator boxes are not supported; expected one box per role");
  }
  if (!v.is_array() || v.size() != 4) {
    Fail(field, ErrorKind::kSchema, "box must be an array of 4 numbers");
  }
  for (const auto& c : v) {
    if (!c.is_number()) {
      Fail(field, ErrorKind::kSchema, "box must be an array of 4 numbers");
    }
  }
  auto box = BoxFromJson(v, field);
  if (box && !IsValidBox(*box)) {
    Fail(field, ErrorKind::kValidation, "invalid box " + FormatBox(*box) +
                                            ": " + BoxProblem(*box));
  }
  return box;
}

Annotation ParseAnnotationRecord(const std::string& image_id, const Json& rec) {
  if (!rec.is_object()) Fail("", ErrorKind::kSchema, "record must be an object");
  Annotation a;
  a.image_id = image_id;

  auto int_field = [&](const char* key) {
    auto it = rec.find(key);
    if (it == rec.end()) Fail(key, ErrorKind::kSchema, "missing");
    if (!it->is_number_integer() || it->get<long long>() <= 0) {
      Fail(key, ErrorKind::kSchema, "must be a positive integer");
    }
    return it->get<int>();
  };
  a.width = int_field("width");
  a.height = int_field("height");

  auto verb = rec.find("verb");
  if (verb == rec.end() || !verb->is_string() || verb->get<std::string>().empty()) {
    Fail("verb", ErrorKind::kSchema, "must be a non-empty string");
  }
  a.verb = verb->get<std::string>();

  auto frames = rec.find("frames");
  if (frames == rec.end() || !frames->is_array()) {
    Fail("frames", ErrorKind::kSchema, "must be an array");
  }
  if (frames->size() != kAnnotatorsPerImage) {
    Fail("frames", ErrorKind::kSchema,
         "expected " + std::to_string(kAnnotatorsPerImage) +
             " annotator frames, got " + std::to_string(frames->size()));
  }
  const Json& first = (*frames)[0];
  if (!first.is_object() || first.empty()) {
    Fail("frames[0]", ErrorKind::kSchema, "must be a non-empty object");
  }
  for (auto it = first.begin(); it != first.end(); ++it) {
    RoleAnnotation r;
    r.role = it.key();
    a.roles.push_back(std::move(r));
  }
  if (static_cast<int>(a.roles.size()) > kMaxRoles) {
    Fail("frames", ErrorKind::kSchema,
         "more than " + std::to_string(kMaxRoles) + " roles");
  }
  for (int k = 0; k < kAnnotatorsPerImage; ++k) {
    const std::string field = "frames[" + std::to_string(k) + "]";
    const Json& f = (*frames)[k];
    if (!f.is_object() || f.size() != a.roles.size()) {
      Fail(field, ErrorKind::kSchema, "role set differs from frames[0]");
    }
    for (auto& r : a.roles) {
      auto it = f.find(r.role);
      if (it == f.end()) {
        Fail(field, ErrorKind::kSchema, "missing role '" + r.role + "'");
      }
      if (!it->is_string()) {
        Fail(field + "." + r.role, ErrorKind::kSchema, "noun must be a string");
      }
      r.nouns[k] = it->get<std::string>();
    }
  }

  auto bb = rec.find("bb");
  if (bb == rec.end() || !bb->is_object()) {
    Fail("bb", ErrorKind::kSchema, "must be an object");
  }
  if (bb->size() != a.roles.size()) {
    Fail("bb", ErrorKind::kSchema, "role set differs from frames");
  }
  for (auto& r : a.roles) {
    const std::string field = "bb." + r.role;
    auto it = bb->find(r.role);
    if (it == bb->end()) Fail(field, ErrorKind::kSchema, "missing");
    r.box = ReadBox(*it, field);
    if (r.box && !BoxWithin(*r.box, a.width, a.height)) {
      Fail(field, ErrorKind::kValidation,
           "box " + FormatBox(*r.box) + " lies outside the " +
               std::to_string(a.width) + "x" + std::to_string(a.height) +
               " image");
    }
  }
  return a;
}

PredictedFrame ParseFrame(const Json& v, const std::string& field,
                          std::string verb) {
  if (!v.is_object() || v.empty()) {
    Fail(field, ErrorKind::kSchema, "frame must be a non-empty object");
  }
  PredictedFrame frame;
  frame.verb = std::move(verb);
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string rf = field + "." + it.key();
    if (!it->is_object()) Fail(rf, ErrorKind::kSchema, "must be an object");
    PredictedRole r;
    r.role = it.key();
    auto noun = it->find("noun");
    if (noun == it->end() || !noun->is_string()) {
      Fail(rf + ".noun", ErrorKind::kSchema, "must be a string");
    }
    r.noun = noun->get<std::string>();
    auto box = it->find("box");
    if (box != it->end()) r.box = ReadBox(*box, rf + ".box");
    auto absent = it->find("box_absent");
    if (absent != it->end()) {
      if (!absent->is_boolean()) {
        Fail(rf + ".box_absent", ErrorKind::kSchema, "must be a boolean");
      }
      r.box_absent = absent->get<bool>();
      if (r.box_absent && r.box) {
        Fail(rf, ErrorKind::kSchema, "box given but box_absent is true");
      }
    } else {
      r.box_absent = !r.box.has_value();
    }
    frame.roles.push_back(std::move(r));
  }
  if (static_cast<int>(frame.roles.size()) > kMaxRoles) {
    Fail(field, ErrorKind::kSchema,
         "more than " + std::to_string(kMaxRoles) + " roles");
  }
  return frame;
}

Prediction ParsePredictionRecord(const std::string& image_id, const Json& rec) {
  Prediction p;
  p.image_id = image_id;
  auto verbs = rec.find("verbs");
  if (verbs == rec.end() || !verbs->is_array()) {
    Fail("verbs", ErrorKind::kSchema, "must be an array");
  }
  if (verbs->empty()) Fail("verbs", ErrorKind::kSchema, "no verbs predicted");
  if (verbs->size() > kMaxVerbGuesses) {
    Fail("verbs", ErrorKind::kSchema,
         "more than " + std::to_string(kMaxVerbGuesses) + " verbs");
  }
  std::set<std::string> seen;
  for (size_t i = 0; i < verbs->size(); ++i) {
    const std::string field = "verbs[" + std::to_string(i) + "]";
    const Json& g = (*verbs)[i];
    if (!g.is_object()) Fail(field, ErrorKind::kSchema, "must be an object");
    VerbGuess guess;
    auto verb = g.find("verb");
    if (verb == g.end() || !verb->is_string() || verb->get<std::string>().empty()) {
      Fail(field + ".verb", ErrorKind::kSchema, "must be a non-empty string");
    }
    guess.verb = verb->get<std::string>();
    if (!seen.insert(guess.verb).second) {
      Fail(field + ".verb", ErrorKind::kSchema,
           "duplicate verb '" + guess.verb + "'");
    }
    auto score = g.find("score");
    if (score == g.end() || !score->is_number()) {
      Fail(field + ".score", ErrorKind::kSchema, "must be a number");
    }
    guess.score = score->get<double>();
    if (i > 0 && guess.score > p.top5.back().score) {
      Fail(field + ".score", ErrorKind::kSchema, "scores must be non-increasing");
    }
    auto frame = g.find("frame");
    if (frame != g.end() && !frame->is_null()) {
      guess.frame = ParseFrame(*frame, field + ".frame", guess.verb);
    }
    p.top5.push_back(std::move(guess));
  }
  if (!p.top5[0].frame) {
    Fail("verbs[0].frame", ErrorKind::kSchema, "the top-1 frame is required");
  }
  auto gt = rec.find("gt_frame");
  if (gt != rec.end() && !gt->is_null()) {
    p.gt_conditioned = ParseFrame(*gt, "gt_frame", "");
  }
  return p;
}

Json FrameToJson(const PredictedFrame& frame) {
  Json out = Json::object();
  for (const auto& r : frame.roles) {
    Json role = {{"noun", r.noun}};
    if (r.box) role["box"] = BoxToJson(*r.box);
    role["box_absent"] = r.box_absent;
    out[r.role] = std::move(role);
  }
  return out;
}

}  // namespace

const RoleAnnotation* Annotation::Find(std::string_view role) const {
  for (const auto& r : roles) {
    if (r.role == role) return &r;
  }
  return nullptr;
}

const PredictedRole* PredictedFrame::Find(std::string_view role) const {
  for (const auto& r : roles) {
    if (r.role == role) return &r;
  }
  return nullptr;
}

Parsed<Annotation> ParseAnnotations(std::string_view json_text, ParseMode mode) {
  Json doc = internal::ParseJsonText(json_text);
  Parsed<Annotation> out;
  // An empty file or an empty array both mean "no images".
  if (doc.is_array() && doc.empty()) return out;
  if (!doc.is_object()) {
    throw ParseError("annotation file must be a JSON object keyed by image id");
  }
  out.records.reserve(doc.size());
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    ParseRecord(it.key(), mode, out,
                [&] { return ParseAnnotationRecord(it.key(), it.value()); });
  }
  return out;
}

Parsed<Prediction> ParsePredictions(std::string_view json_text, ParseMode mode) {
  Json doc = internal::ParseJsonText(json_text);
  if (!doc.is_array()) throw ParseError("prediction file must be a JSON array");
  Parsed<Prediction> out;
  out.records.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const Json& rec = doc[i];
    std::string image_id = "#" + std::to_string(i);
    if (!rec.is_object()) {
      ParseRecord(image_id, mode, out, [&]() -> Prediction {
        Fail("", ErrorKind::kSchema, "record must be an object");
      });
      continue;
    }
    auto id = rec.find("image_id");
    if (id == rec.end() || !id->is_string()) {
      ParseRecord(image_id, mode, out, [&]() -> Prediction {
        Fail("image_id", ErrorKind::kSchema, "must be a string");
      });
      continue;
    }
    image_id = id->get<std::string>();
    ParseRecord(image_id, mode, out,
                [&] { return ParsePredictionRecord(image_id, rec); });
  }
  return out;
}

std::string SerializeAnnotations(const std::vector<Annotation>& annotations) {
  Json doc = Json::object();
  for (const auto& a : annotations) {
    Json frames = Json::array();
    for (int k = 0; k < kAnnotatorsPerImage; ++k) {
      Json f = Json::object();
      for (const auto& r : a.roles) f[r.role] = r.nouns[k];
      frames.push_back(std::move(f));
    }
    Json bb = Json::object();
    for (const auto& r : a.roles) {
      bb[r.role] = r.box ? BoxToJson(*r.box) : internal::AbsentBoxJson();
    }
    doc[a.image_id] = {{"width", a.width},
                       {"height", a.height},
                       {"verb", a.verb},
                       {"frames", std::move(frames)},
                       {"bb", std::move(bb)}};
  }
  return doc.dump(1);
}

std::string SerializePredictions(const std::vector<Prediction>& predictions) {
  Json doc = Json::array();
  for (const auto& p : predictions) {
    Json verbs = Json::array();
    for (const auto& g : p.top5) {
      Json v = {{"verb", g.verb}, {"score", g.score}};
      if (g.frame) v["frame"] = FrameToJson(*g.frame);
      verbs.push_back(std::move(v));
    }
    Json rec = {{"image_id", p.image_id}, {"verbs", std::move(verbs)}};
    if (p.gt_conditioned) rec["gt_frame"] = FrameToJson(*p.gt_conditioned);
    doc.push_back(std::move(rec));
  }
  return doc.dump(1);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kNotFound, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DatasetStats ComputeDatasetStats(const std::vector<Annotation>& dataset) {
  std::set<std::string> verbs, roles, nouns;
  DatasetStats s;
  s.images = dataset.size();
  for (const auto& a : dataset) {
    verbs.insert(a.verb);
    for (const auto& r : a.roles) {
      roles.insert(r.role);
      for (const auto& n : r.nouns) {
        if (!IsBlankNoun(n)) nouns.insert(n);
      }
      if (r.box) ++s.boxes;
    }
  }
  s.verbs = verbs.size();
  s.roles = roles.size();
  s.nouns = nouns.size();
  return s;
}

}  // namespace osu
