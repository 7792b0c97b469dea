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

#ifndef OSU_SITUATION_H_
#define OSU_SITUATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osu/box.h"

namespace osu {

// A blank noun is stored as this explicit value, never as a missing key, so
// that "blank matches blank" is a plain string comparison.
inline constexpr std::string_view kBlankNoun = "";

inline bool IsBlankNoun(std::string_view noun) { return noun == kBlankNoun; }

// Frames never have more than this many roles.
inline constexpr int kMaxRoles = 6;

struct SituationEntry {
  std::string role;
  std::string noun;  // noun-class id or kBlankNoun
  std::optional<BoundingBox> box;

  bool operator==(const SituationEntry&) const = default;
};

// One image's verb plus its role fillers, in frame-role order.
struct GroundedSituation {
  std::string verb;
  std::vector<SituationEntry> entries;

  const SituationEntry* Find(std::string_view role) const {
    for (const auto& e : entries) {
      if (e.role == role) return &e;
    }
    return nullptr;
  }

  bool operator==(const GroundedSituation&) const = default;
};

}  // namespace osu

#endif  // OSU_SITUATION_H_
