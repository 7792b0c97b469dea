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

#ifndef OSU_BOX_H_
#define OSU_BOX_H_

#include <string>

namespace osu {

// Axis-aligned box in continuous pixel coordinates, x to the right and y
// down. Corners are (x1, y1) top-left and (x2, y2) bottom-right.
struct BoundingBox {
  double x1 = 0;
  double y1 = 0;
  double x2 = 0;
  double y2 = 0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  bool operator==(const BoundingBox&) const = default;
};

struct Point {
  double x = 0;
  double y = 0;
};

// True when all corners are finite, non-negative and x2 > x1, y2 > y1.
bool IsValidBox(const BoundingBox& box);

// Empty string when valid, otherwise a short reason.
std::string BoxProblem(const BoundingBox& box);

// True when the box lies inside [0, width] x [0, height].
bool BoxWithin(const BoundingBox& box, double width, double height);

// Intersection over union on continuous coordinates. 0 for disjoint boxes.
double BoxIou(const BoundingBox& a, const BoundingBox& b);

// Half-open containment: [x1, x2) x [y1, y2).
bool BoxContains(const BoundingBox& box, Point p);

std::string FormatBox(const BoundingBox& box);

}  // namespace osu

#endif  // OSU_BOX_H_
