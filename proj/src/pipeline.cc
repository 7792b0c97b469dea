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

#include "osu/pipeline.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>

#include "mask_json.h"
#include "osu/error.h"

namespace osu {

using internal::Json;

namespace {

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

}  // namespace

std::string IsoTimestampNow() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string SceneBundle::DisplayOf(const SituationEntry& entry) const {
  auto it = display.find(entry.role);
  return it == display.end() ? entry.noun : it->second;
}

const EntityMask* SceneBundle::MaskOf(std::string_view role) const {
  for (const auto& m : masks) {
    if (m.role == role) return &m;
  }
  return nullptr;
}

GroundedSituation SituationFromAnnotation(const Annotation& annotation) {
  GroundedSituation s;
  s.verb = annotation.verb;
  for (const auto& r : annotation.roles) {
    std::string best(kBlankNoun);
    int best_votes = 0;
    for (const auto& candidate : r.nouns) {
      if (IsBlankNoun(candidate)) continue;
      int votes = 0;
      for (const auto& n : r.nouns) votes += n == candidate ? 1 : 0;
      if (votes > best_votes) {
        best = candidate;
        best_votes = votes;
      }
    }
    s.entries.push_back({r.role, best, r.box});
  }
  return s;
}

GroundedSituation SituationFromFrame(const PredictedFrame& frame,
                                     std::string verb) {
  GroundedSituation s;
  s.verb = std::move(verb);
  for (const auto& r : frame.roles) {
    s.entries.push_back({r.role, r.noun, r.box_absent ? std::nullopt : r.box});
  }
  return s;
}

SceneBundle BuildScene(const GroundedSituation& situation,
                       std::string image_id, int width, int height,
                       const FrameLexicon& lexicon, SegmenterBackend& backend,
                       const BuildOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto now = options.now ? options.now : IsoTimestampNow;
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kValidation, "scene '" + image_id +
                                            "' needs positive image dimensions");
  }
  auto violations = ValidateSituation(lexicon, situation);
  if (!violations.empty()) {
    throw Error(ErrorKind::kValidation,
                "scene '" + image_id + "': " + JoinViolations(violations));
  }

  SceneBundle bundle;
  bundle.image_id = std::move(image_id);
  bundle.width = width;
  bundle.height = height;
  bundle.provenance.started_at = now();

  const VerbFrame& frame = lexicon.Frame(situation.verb);
  bundle.situation.verb = situation.verb;
  for (const auto& role : frame.roles) {
    const SituationEntry* e = situation.Find(role);
    bundle.situation.entries.push_back(*e);
    if (!IsBlankNoun(e->noun)) bundle.display[role] = lexicon.Display(e->noun);
  }
  bundle.caption = RenderCaption(lexicon, bundle.situation);

  SegmentRequest request;
  request.image_ref = options.image_ref.empty() ? bundle.image_id : options.image_ref;
  request.width = width;
  request.height = height;
  for (const auto& e : bundle.situation.entries) {
    if (e.box) request.prompts.push_back({e.role, *e.box});
  }

  if (request.prompts.empty()) {
    bundle.provenance.backend_id = "none";
  } else {
    SegmentResponse response;
    try {
      response = backend.Segment(request);
      for (const auto& m : response.entities) {
        if (m.mask.width != width || m.mask.height != height) {
          throw Error(ErrorKind::kProtocol, "mask size does not match the image");
        }
      }
    } catch (const std::exception& e) {
      BoxFillBackend fallback;
      response = fallback.Segment(request);
      bundle.provenance.degraded = true;
      bundle.provenance.degraded_reason = e.what();
    }
    bundle.provenance.backend_id = response.backend_id;
    bundle.masks = MakeDisjoint(response.entities);
  }

  bundle.provenance.finished_at = now();
  bundle.provenance.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return bundle;
}

void ValidateBundle(const SceneBundle& bundle) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kValidation, "bundle '" + bundle.image_id + "': " + what);
  };
  if (bundle.width <= 0 || bundle.height <= 0) fail("non-positive image size");
  std::set<std::string> roles;
  for (const auto& e : bundle.situation.entries) {
    if (!roles.insert(e.role).second) fail("role '" + e.role + "' repeated");
    if (e.box && !IsValidBox(*e.box)) {
      fail("role '" + e.role + "' has an invalid box: " + BoxProblem(*e.box));
    }
  }
  if (static_cast<int>(roles.size()) > kMaxRoles) fail("too many roles");
  std::set<std::string> masked;
  for (const auto& m : bundle.masks) {
    if (!roles.count(m.role)) fail("mask for unknown role '" + m.role + "'");
    if (!masked.insert(m.role).second) fail("role '" + m.role + "' masked twice");
    if (m.mask.width != bundle.width || m.mask.height != bundle.height) {
      fail("mask for role '" + m.role + "' has the wrong size");
    }
    try {
      ValidateRle(m.mask);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (!PairwiseDisjoint(bundle.masks)) fail("masks overlap");
}

bool CaptionConsistent(const SceneBundle& bundle, const FrameLexicon& lexicon) {
  try {
    return RenderCaption(lexicon, bundle.situation) == bundle.caption;
  } catch (const Error&) {
    return false;
  }
}

std::string SaveBundle(const SceneBundle& bundle) {
  Json roles = Json::array();
  for (const auto& e : bundle.situation.entries) {
    Json r = {{"role", e.role}, {"noun", e.noun}};
    auto d = bundle.display.find(e.role);
    if (d != bundle.display.end()) r["display"] = d->second;
    if (e.box) r["box"] = internal::BoxToJson(*e.box);
    roles.push_back(std::move(r));
  }
  MaskSet set{bundle.width, bundle.height, bundle.masks};
  Json provenance = {{"backend_id", bundle.provenance.backend_id},
                     {"started_at", bundle.provenance.started_at},
                     {"finished_at", bundle.provenance.finished_at},
                     {"elapsed_ms", bundle.provenance.elapsed_ms},
                     {"degraded", bundle.provenance.degraded}};
  if (!bundle.provenance.degraded_reason.empty()) {
    provenance["degraded_reason"] = bundle.provenance.degraded_reason;
  }
  Json doc = {{"image_id", bundle.image_id},
              {"width", bundle.width},
              {"height", bundle.height},
              {"verb", bundle.situation.verb},
              {"roles", std::move(roles)},
              {"caption", bundle.caption},
              {"masks", internal::MaskSetToJson(set)},
              {"provenance", std::move(provenance)}};
  return doc.dump(1) + "\n";
}

SceneBundle LoadBundle(std::string_view json_text) {
  using internal::Field;
  using internal::StringField;
  const Json doc = internal::ParseJsonText(json_text);
  const std::string where = "bundle";
  SceneBundle b;
  b.image_id = StringField(doc, "image_id", where);
  b.width = internal::IntField(doc, "width", where);
  b.height = internal::IntField(doc, "height", where);
  b.situation.verb = StringField(doc, "verb", where);
  b.caption = StringField(doc, "caption", where);

  const Json& roles = Field(doc, "roles", where);
  if (!roles.is_array()) internal::SchemaFail(where, "'roles' must be an array");
  for (size_t i = 0; i < roles.size(); ++i) {
    const std::string at = where + ".roles[" + std::to_string(i) + "]";
    SituationEntry e;
    e.role = StringField(roles[i], "role", at);
    e.noun = StringField(roles[i], "noun", at);
    if (roles[i].contains("display")) {
      b.display[e.role] = StringField(roles[i], "display", at);
    }
    if (roles[i].contains("box")) {
      e.box = internal::BoxFromJson(roles[i]["box"], at + ".box");
    }
    b.situation.entries.push_back(std::move(e));
  }

  MaskSet set = internal::MaskSetFromJson(Field(doc, "masks", where), where + ".masks");
  if (set.width != b.width || set.height != b.height) {
    throw Error(ErrorKind::kValidation, "bundle '" + b.image_id +
                                            "': mask file size differs from image");
  }
  b.masks = std::move(set.entities);

  const Json& prov = Field(doc, "provenance", where);
  const std::string pw = where + ".provenance";
  b.provenance.backend_id = StringField(prov, "backend_id", pw);
  b.provenance.started_at = StringField(prov, "started_at", pw);
  b.provenance.finished_at = StringField(prov, "finished_at", pw);
  b.provenance.elapsed_ms = internal::NumberField(prov, "elapsed_ms", pw);
  const Json& degraded = Field(prov, "degraded", pw);
  if (!degraded.is_boolean()) internal::SchemaFail(pw, "'degraded' must be a boolean");
  b.provenance.degraded = degraded.get<bool>();
  if (prov.contains("degraded_reason")) {
    b.provenance.degraded_reason = StringField(prov, "degraded_reason", pw);
  }

  ValidateBundle(b);
  return b;
}

void SaveBundleFile(const SceneBundle& bundle, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kNotFound, "cannot write " + path);
    out << SaveBundle(bundle);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorKind::kNotFound, "cannot write " + path);
  }
}

SceneBundle LoadBundleFile(const std::string& path) {
  return LoadBundle(ReadFile(path));
}

}  // namespace osu
