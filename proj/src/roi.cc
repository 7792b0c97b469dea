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

#include "osu/roi.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "json_util.h"
#include "osu/error.h"

namespace osu {

using internal::Json;

namespace {

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string Describe(const Hit& h) { return h.display + ", the " + Lower(h.role); }

std::string SpokenText(const std::vector<Hit>& hits) {
  if (hits.empty()) return "background";
  if (hits.size() == 1) return Describe(hits[0]);
  std::string out = std::to_string(hits.size()) + " candidates: ";
  for (size_t i = 0; i < hits.size(); ++i) {
    if (i > 0) out += "; ";
    out += std::to_string(i + 1) + ". " + Describe(hits[i]);
  }
  return out;
}

Hit MakeHit(const SceneBundle& bundle, const std::string& role) {
  Hit h;
  h.role = role;
  if (const SituationEntry* e = bundle.situation.Find(role)) {
    h.noun = e->noun;
    h.display = bundle.DisplayOf(*e);
  }
  if (const EntityMask* m = bundle.MaskOf(role)) h.confidence = m->confidence;
  return h;
}

std::vector<RoleBox> BundleBoxes(const SceneBundle& bundle) {
  std::vector<RoleBox> boxes;
  for (const auto& e : bundle.situation.entries) {
    if (e.box) boxes.push_back({e.role, *e.box});
  }
  return boxes;
}

}  // namespace

std::string_view QueryModeName(QueryMode mode) {
  return mode == QueryMode::kMask ? "mask" : "bbox";
}

QueryMode ParseQueryMode(std::string_view name) {
  if (name == "mask") return QueryMode::kMask;
  if (name == "bbox") return QueryMode::kBbox;
  throw Error(ErrorKind::kUsage,
              "unknown query mode '" + std::string(name) + "' (mask|bbox)");
}

ResolveResult ResolvePoint(const SceneBundle& bundle, Point point,
                           QueryMode mode) {
  ResolveResult result;
  result.mode = mode;
  std::vector<std::string> roles =
      mode == QueryMode::kMask
          ? CoveringSet(bundle.masks, point, bundle.width, bundle.height)
          : CoveringSet(BundleBoxes(bundle), point, bundle.width, bundle.height);
  for (const auto& r : roles) result.hits.push_back(MakeHit(bundle, r));
  result.ambiguous = result.hits.size() > 1;
  result.background = result.hits.empty();
  result.spoken_text = SpokenText(result.hits);
  return result;
}

ResolveResult ResolveCenter(const SceneBundle& bundle, QueryMode mode) {
  return ResolvePoint(bundle, {bundle.width / 2.0, bundle.height / 2.0}, mode);
}

std::vector<RegionHit> ResolveRegion(const SceneBundle& bundle,
                                     const BoundingBox& region) {
  if (!IsValidBox(region)) {
    throw Error(ErrorKind::kRange, "degenerate region " + FormatBox(region) +
                                       ": " + BoxProblem(region));
  }
  const PixelRect rect = RasterizeBox(region, bundle.width, bundle.height);
  if (rect.empty()) {
    throw Error(ErrorKind::kRange,
                "region " + FormatBox(region) + " covers no pixel of the image");
  }
  const double total = static_cast<double>(rect.area());
  std::vector<RegionHit> hits;
  for (const auto& m : bundle.masks) {
    const uint64_t n =
        MaskCountInRect(m.mask, rect.col0, rect.col1, rect.row0, rect.row1);
    if (n == 0) continue;
    const Hit h = MakeHit(bundle, m.role);
    hits.push_back({h.role, h.noun, h.display, static_cast<double>(n) / total});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const RegionHit& a, const RegionHit& b) {
    return a.fraction > b.fraction;
  });
  return hits;
}

AmbiguitySummary AmbiguityReport(const SceneBundle& bundle, int spacing) {
  if (spacing < 1) throw Error(ErrorKind::kRange, "grid spacing must be >= 1");
  AmbiguitySummary s;
  s.spacing = spacing;
  const auto boxes = BundleBoxes(bundle);
  // Decoding once keeps the scan linear in the number of grid points.
  std::vector<Bitmask> decoded;
  decoded.reserve(bundle.masks.size());
  for (const auto& m : bundle.masks) decoded.push_back(RleDecode(m.mask));

  for (int row = 0; row < bundle.height; row += spacing) {
    for (int col = 0; col < bundle.width; col += spacing) {
      const Point p{col + 0.5, row + 0.5};
      ++s.points;
      size_t box_hits = 0;
      for (const auto& b : boxes) box_hits += BoxContains(b.box, p) ? 1 : 0;
      size_t mask_hits = 0;
      for (const auto& d : decoded) mask_hits += d.at(col, row) ? 1 : 0;
      s.bbox_ambiguous += box_hits > 1 ? 1 : 0;
      s.mask_ambiguous += mask_hits > 1 ? 1 : 0;
      s.bbox_background += box_hits == 0 ? 1 : 0;
      s.mask_background += mask_hits == 0 ? 1 : 0;
    }
  }
  return s;
}

std::string ResolveResultToJson(const ResolveResult& result) {
  Json hits = Json::array();
  for (const auto& h : result.hits) {
    hits.push_back({{"role", h.role},
                    {"noun", h.noun},
                    {"display", h.display},
                    {"confidence", h.confidence}});
  }
  Json doc = {{"mode", QueryModeName(result.mode)},
              {"hits", std::move(hits)},
              {"ambiguous", result.ambiguous},
              {"background", result.background},
              {"spoken_text", result.spoken_text}};
  return doc.dump();
}

std::string RegionHitsToJson(const std::vector<RegionHit>& hits) {
  Json out = Json::array();
  for (const auto& h : hits) {
    out.push_back({{"role", h.role},
                   {"noun", h.noun},
                   {"display", h.display},
                   {"fraction", h.fraction}});
  }
  return Json{{"entities", std::move(out)}}.dump();
}

std::string AmbiguityToJson(const AmbiguitySummary& s) {
  Json doc = {{"spacing", s.spacing},
              {"points", s.points},
              {"bbox_ambiguous", s.bbox_ambiguous},
              {"mask_ambiguous", s.mask_ambiguous},
              {"bbox_background", s.bbox_background},
              {"mask_background", s.mask_background},
              {"bbox_ambiguous_fraction", s.bbox_fraction()},
              {"mask_ambiguous_fraction", s.mask_fraction()}};
  return doc.dump();
}

}  // namespace osu
