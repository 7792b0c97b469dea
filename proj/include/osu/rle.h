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

// Run-length encoded binary masks.
//
// Pixels are scanned row-major from the top-left corner. `counts` holds
// alternating run lengths and always starts with a run of zeros, which may
// have length 0. Apart from that leading run no run is empty, so every mask
// has exactly one encoding:
//
//   all-zero 4x4 -> [16]
//   all-one 4x4  -> [0, 16]

#ifndef OSU_RLE_H_
#define OSU_RLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "osu/box.h"

namespace osu {

// Dense row-major binary grid; bits[row * width + col] is 0 or 1.
struct Bitmask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;

  Bitmask() = default;
  Bitmask(int w, int h) : width(w), height(h), bits(size_t(w) * size_t(h), 0) {}

  uint8_t at(int col, int row) const { return bits[size_t(row) * width + col]; }
  void set(int col, int row, uint8_t v = 1) { bits[size_t(row) * width + col] = v; }

  bool operator==(const Bitmask&) const = default;
};

struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<uint32_t> counts;

  bool operator==(const RleMask&) const = default;
};

// Half-open range [begin, end) of set pixels in scan order.
struct PixelSpan {
  uint64_t begin = 0;
  uint64_t end = 0;
};

// Throws Error(kCodec) unless the counts are a canonical encoding of a
// width x height mask.
void ValidateRle(const RleMask& mask);

RleMask RleEncode(const Bitmask& bitmask);
Bitmask RleDecode(const RleMask& mask);

// All-zero mask of the given size.
RleMask EmptyMask(int width, int height);

uint64_t MaskArea(const RleMask& mask);
bool MaskEmpty(const RleMask& mask);

// Set-pixel spans, sorted and non-adjacent.
std::vector<PixelSpan> MaskSpans(const RleMask& mask);
RleMask MaskFromSpans(int width, int height, const std::vector<PixelSpan>& spans);

bool MaskContainsPixel(const RleMask& mask, int col, int row);

// Set pixels inside columns [col0, col1) and rows [row0, row1).
uint64_t MaskCountInRect(const RleMask& mask, int col0, int col1, int row0,
                         int row1);

// Set-algebra on equally sized masks; Error(kGeometry) on size mismatch.
RleMask MaskSubtract(const RleMask& a, const RleMask& b);
RleMask MaskUnion(const RleMask& a, const RleMask& b);
RleMask MaskIntersect(const RleMask& a, const RleMask& b);

// Pixel columns [col0, col1) and rows [row0, row1) whose centers fall in the
// half-open box, clipped to the image. Empty when col0 == col1 or
// row0 == row1.
struct PixelRect {
  int col0 = 0, col1 = 0, row0 = 0, row1 = 0;

  bool empty() const { return col0 >= col1 || row0 >= row1; }
  uint64_t area() const {
    return empty() ? 0 : uint64_t(col1 - col0) * uint64_t(row1 - row0);
  }
};

PixelRect RasterizeBox(const BoundingBox& box, int width, int height);

struct BoxMaskResult {
  RleMask mask;
  std::string warning;  // set when the box covers no pixel of the image
};

// Pixel (row i, col j) is set iff its center (j + 0.5, i + 0.5) lies in the
// box. Error(kValidation) for an invalid box.
BoxMaskResult BoxToMask(const BoundingBox& box, int width, int height);

}  // namespace osu

#endif  // OSU_RLE_H_
