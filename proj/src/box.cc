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

#include "osu/box.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace osu {

std::string BoxProblem(const BoundingBox& box) {
  if (!std::isfinite(box.x1) || !std::isfinite(box.y1) ||
      !std::isfinite(box.x2) || !std::isfinite(box.y2)) {
    return "non-finite coordinate";
  }
  if (box.x1 < 0 || box.y1 < 0 || box.x2 < 0 || box.y2 < 0) {
    return "negative coordinate";
  }
  if (box.x2 <= box.x1) return "x2 <= x1";
  if (box.y2 <= box.y1) return "y2 <= y1";
  return {};
}

bool IsValidBox(const BoundingBox& box) { return BoxProblem(box).empty(); }

bool BoxWithin(const BoundingBox& box, double width, double height) {
  return box.x1 >= 0 && box.y1 >= 0 && box.x2 <= width && box.y2 <= height;
}

double BoxIou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

bool BoxContains(const BoundingBox& box, Point p) {
  return p.x >= box.x1 && p.x < box.x2 && p.y >= box.y1 && p.y < box.y2;
}

std::string FormatBox(const BoundingBox& box) {
  std::ostringstream os;
  os << "[" << box.x1 << ", " << box.y1 << ", " << box.x2 << ", " << box.y2
     << "]";
  return os.str();
}

}  // namespace osu
