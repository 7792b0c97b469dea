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

#include "osu/rle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osu/error.h"

namespace osu {
namespace {

uint64_t PixelCount(int width, int height) {
  return uint64_t(width) * uint64_t(height);
}

void CheckDims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kCodec, "mask dimensions must be positive, got " +
                                       std::to_string(width) + "x" +
                                       std::to_string(height));
  }
  if (PixelCount(width, height) > std::numeric_limits<uint32_t>::max()) {
    throw Error(ErrorKind::kCodec, "mask too large");
  }
}

void CheckSameDims(const RleMask& a, const RleMask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::kGeometry,
                "mask size mismatch: " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

// Appends runs while keeping the encoding canonical.
class RunWriter {
 public:
  void Push(bool value, uint64_t length) {
    if (length == 0) return;
    if (counts_.empty()) {
      if (value) counts_.push_back(0);
      counts_.push_back(static_cast<uint32_t>(length));
      return;
    }
    const bool last_value = (counts_.size() - 1) % 2 == 1;
    if (value == last_value) {
      counts_.back() += static_cast<uint32_t>(length);
    } else {
      counts_.push_back(static_cast<uint32_t>(length));
    }
  }

  std::vector<uint32_t> Finish(uint64_t total) {
    uint64_t sum = 0;
    for (auto c : counts_) sum += c;
    Push(false, total - sum);
    if (counts_.empty()) counts_.push_back(0);
    return std::move(counts_);
  }

 private:
  std::vector<uint32_t> counts_;
};

std::vector<PixelSpan> MergeSpans(const std::vector<PixelSpan>& a,
                                  const std::vector<PixelSpan>& b) {
  std::vector<PixelSpan> all;
  all.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all),
             [](const PixelSpan& x, const PixelSpan& y) { return x.begin < y.begin; });
  std::vector<PixelSpan> out;
  for (const auto& s : all) {
    if (!out.empty() && s.begin <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

void ValidateRle(const RleMask& mask) {
  CheckDims(mask.width, mask.height);
  if (mask.counts.empty()) throw Error(ErrorKind::kCodec, "empty counts");
  uint64_t sum = 0;
  for (size_t i = 0; i < mask.counts.size(); ++i) {
    if (i > 0 && mask.counts[i] == 0) {
      throw Error(ErrorKind::kCodec,
                  "zero-length run at position " + std::to_string(i));
    }
    sum += mask.counts[i];
  }
  if (sum != PixelCount(mask.width, mask.height)) {
    throw Error(ErrorKind::kCodec,
                "counts sum to " + std::to_string(sum) + ", expected " +
                    std::to_string(PixelCount(mask.width, mask.height)));
  }
  // A single leading zero-run of length 0 would describe no pixels at all.
  if (mask.counts.size() == 1 && mask.counts[0] == 0) {
    throw Error(ErrorKind::kCodec, "counts describe no pixels");
  }
}

RleMask RleEncode(const Bitmask& bitmask) {
  CheckDims(bitmask.width, bitmask.height);
  if (bitmask.bits.size() != PixelCount(bitmask.width, bitmask.height)) {
    throw Error(ErrorKind::kCodec, "bitmask storage does not match its size");
  }
  RleMask out{bitmask.width, bitmask.height, {}};
  uint8_t value = 0;
  uint32_t run = 0;
  for (uint8_t b : bitmask.bits) {
    const uint8_t v = b ? 1 : 0;
    if (v != value) {
      out.counts.push_back(run);
      run = 0;
      value = v;
    }
    ++run;
  }
  out.counts.push_back(run);
  return out;
}

Bitmask RleDecode(const RleMask& mask) {
  ValidateRle(mask);
  Bitmask out(mask.width, mask.height);
  size_t pos = 0;
  uint8_t value = 0;
  for (uint32_t c : mask.counts) {
    std::fill_n(out.bits.begin() + pos, c, value);
    pos += c;
    value ^= 1;
  }
  return out;
}

RleMask EmptyMask(int width, int height) {
  CheckDims(width, height);
  return RleMask{width, height,
                 {static_cast<uint32_t>(PixelCount(width, height))}};
}

uint64_t MaskArea(const RleMask& mask) {
  uint64_t area = 0;
  for (size_t i = 1; i < mask.counts.size(); i += 2) area += mask.counts[i];
  return area;
}

bool MaskEmpty(const RleMask& mask) { return mask.counts.size() <= 1; }

std::vector<PixelSpan> MaskSpans(const RleMask& mask) {
  std::vector<PixelSpan> spans;
  spans.reserve(mask.counts.size() / 2);
  uint64_t pos = 0;
  for (size_t i = 0; i < mask.counts.size(); ++i) {
    const uint64_t next = pos + mask.counts[i];
    if (i % 2 == 1) spans.push_back({pos, next});
    pos = next;
  }
  return spans;
}

RleMask MaskFromSpans(int width, int height,
                      const std::vector<PixelSpan>& spans) {
  CheckDims(width, height);
  const uint64_t total = PixelCount(width, height);
  RunWriter w;
  uint64_t pos = 0;
  for (const auto& s : spans) {
    if (s.begin < pos || s.end < s.begin || s.end > total) {
      throw Error(ErrorKind::kCodec, "spans must be sorted and inside the mask");
    }
    w.Push(false, s.begin - pos);
    w.Push(true, s.end - s.begin);
    pos = s.end;
  }
  return RleMask{width, height, w.Finish(total)};
}

bool MaskContainsPixel(const RleMask& mask, int col, int row) {
  if (col < 0 || row < 0 || col >= mask.width || row >= mask.height) {
    return false;
  }
  const uint64_t target = uint64_t(row) * uint64_t(mask.width) + uint64_t(col);
  uint64_t pos = 0;
  for (size_t i = 0; i < mask.counts.size(); ++i) {
    pos += mask.counts[i];
    if (target < pos) return i % 2 == 1;
  }
  return false;
}

uint64_t MaskCountInRect(const RleMask& mask, int col0, int col1, int row0,
                         int row1) {
  col0 = std::max(col0, 0);
  row0 = std::max(row0, 0);
  col1 = std::min(col1, mask.width);
  row1 = std::min(row1, mask.height);
  if (col0 >= col1 || row0 >= row1) return 0;
  const uint64_t w = uint64_t(mask.width);
  uint64_t count = 0;
  for (const auto& s : MaskSpans(mask)) {
    const uint64_t first_row = s.begin / w;
    const uint64_t last_row = (s.end - 1) / w;
    const uint64_t r_lo = std::max<uint64_t>(first_row, uint64_t(row0));
    const uint64_t r_hi = std::min<uint64_t>(last_row, uint64_t(row1 - 1));
    for (uint64_t r = r_lo; r <= r_hi && r_lo <= r_hi; ++r) {
      const uint64_t row_start = r * w;
      const uint64_t lo = std::max(s.begin, row_start + uint64_t(col0));
      const uint64_t hi = std::min(s.end, row_start + uint64_t(col1));
      if (hi > lo) count += hi - lo;
    }
  }
  return count;
}

RleMask MaskSubtract(const RleMask& a, const RleMask& b) {
  CheckSameDims(a, b);
  const auto sa = MaskSpans(a);
  const auto sb = MaskSpans(b);
  std::vector<PixelSpan> out;
  size_t j = 0;
  for (const auto& s : sa) {
    uint64_t cur = s.begin;
    while (j < sb.size() && sb[j].end <= cur) ++j;
    size_t k = j;
    while (k < sb.size() && sb[k].begin < s.end) {
      if (sb[k].begin > cur) out.push_back({cur, sb[k].begin});
      cur = std::max(cur, sb[k].end);
      ++k;
    }
    if (cur < s.end) out.push_back({cur, s.end});
  }
  return MaskFromSpans(a.width, a.height, out);
}

RleMask MaskUnion(const RleMask& a, const RleMask& b) {
  CheckSameDims(a, b);
  return MaskFromSpans(a.width, a.height, MergeSpans(MaskSpans(a), MaskSpans(b)));
}

RleMask MaskIntersect(const RleMask& a, const RleMask& b) {
  CheckSameDims(a, b);
  const auto sa = MaskSpans(a);
  const auto sb = MaskSpans(b);
  std::vector<PixelSpan> out;
  size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const uint64_t lo = std::max(sa[i].begin, sb[j].begin);
    const uint64_t hi = std::min(sa[i].end, sb[j].end);
    if (lo < hi) out.push_back({lo, hi});
    if (sa[i].end < sb[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return MaskFromSpans(a.width, a.height, out);
}

PixelRect RasterizeBox(const BoundingBox& box, int width, int height) {
  // Pixel j is inside when x1 <= j + 0.5 < x2.
  auto lo = [](double v, int limit) {
    return static_cast<int>(std::clamp(std::ceil(v - 0.5), 0.0, double(limit)));
  };
  PixelRect r;
  r.col0 = lo(box.x1, width);
  r.col1 = lo(box.x2, width);
  r.row0 = lo(box.y1, height);
  r.row1 = lo(box.y2, height);
  return r;
}

BoxMaskResult BoxToMask(const BoundingBox& box, int width, int height) {
  CheckDims(width, height);
  if (!IsValidBox(box)) {
    throw Error(ErrorKind::kValidation,
                "invalid box " + FormatBox(box) + ": " + BoxProblem(box));
  }
  const PixelRect r = RasterizeBox(box, width, height);
  BoxMaskResult result;
  if (r.empty()) {
    result.mask = EmptyMask(width, height);
    result.warning = "box " + FormatBox(box) + " covers no pixel of the " +
                     std::to_string(width) + "x" + std::to_string(height) +
                     " image";
    return result;
  }
  RunWriter w;
  const uint64_t span = uint64_t(r.col1 - r.col0);
  w.Push(false, uint64_t(r.row0) * width + r.col0);
  for (int row = r.row0; row < r.row1; ++row) {
    if (row > r.row0) w.Push(false, uint64_t(width) - span);
    w.Push(true, span);
  }
  result.mask = RleMask{width, height, w.Finish(PixelCount(width, height))};
  return result;
}

}  // namespace osu
