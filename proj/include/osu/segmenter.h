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

// Client side of a promptable segmenter: one mask per box prompt.
//
// Wire protocol (HTTP backend):
//
//   POST {url}/segment
//     {"image_ref": "...", "width": W, "height": H,
//      "boxes": [{"role": r, "x1": .., "y1": .., "x2": .., "y2": ..}]}
//   200 -> mask file: {"width": W, "height": H, "backend_id": "...",
//                      "entities": [{"role", "confidence", "counts"}]}
//
//   GET {url}/info -> {"backend_id": "...", "max_prompts": N}
//
// Entities must come back in prompt order with matching roles. The file
// backend exchanges the same documents through <dir>/<key>.request.json and
// <dir>/<key>.response.json.

#ifndef OSU_SEGMENTER_H_
#define OSU_SEGMENTER_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "osu/box.h"
#include "osu/masks.h"

namespace osu {

struct SegmentPrompt {
  std::string role;
  BoundingBox box;
};

struct SegmentRequest {
  std::string image_ref;
  int width = 0;
  int height = 0;
  std::vector<SegmentPrompt> prompts;
};

struct SegmentResponse {
  std::vector<EntityMask> entities;  // entities[i] answers prompts[i]
  std::string backend_id;
  double elapsed_ms = 0;
};

struct Capability {
  bool reachable = false;
  std::string backend_id;
  int max_prompts = 0;  // 0 means no limit advertised
  std::string detail;
};

// Throws Error(kValidation) for empty prompt lists, bad sizes or boxes.
void ValidateRequest(const SegmentRequest& request);

std::string SerializeSegmentRequest(const SegmentRequest& request);
// Parses a mask-file reply and checks it against the request. Throws
// Error(kProtocol) on any mismatch.
SegmentResponse ParseSegmentResponse(std::string_view json_text,
                                     const SegmentRequest& request);

class SegmenterBackend {
 public:
  virtual ~SegmenterBackend() = default;

  virtual SegmentResponse Segment(const SegmentRequest& request) = 0;
  // Never throws.
  virtual Capability Probe() noexcept = 0;
};

// Deterministic fallback: every prompt becomes its rasterized box.
class BoxFillBackend : public SegmenterBackend {
 public:
  static constexpr std::string_view kId = "box-fill";

  SegmentResponse Segment(const SegmentRequest& request) override;
  Capability Probe() noexcept override;
};

struct HttpBackendOptions {
  std::string url;         // e.g. http://127.0.0.1:8600
  int timeout_ms = 10000;  // applies to every socket operation
  int retries = 1;         // extra attempts after a transport failure
  int max_jitter_ms = 100;
};

class HttpBackend : public SegmenterBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);

  SegmentResponse Segment(const SegmentRequest& request) override;
  Capability Probe() noexcept override;

 private:
  HttpBackendOptions options_;
  std::string host_;  // scheme://host:port
  std::string path_prefix_;
};

struct FileBackendOptions {
  std::string dir;
  int timeout_ms = 10000;
  int poll_interval_ms = 20;
};

class FileBackend : public SegmenterBackend {
 public:
  explicit FileBackend(FileBackendOptions options);

  SegmentResponse Segment(const SegmentRequest& request) override;
  Capability Probe() noexcept override;

  // File stem used for a request: a hash of its serialized form.
  static std::string RequestKey(const SegmentRequest& request);

 private:
  FileBackendOptions options_;
};

struct SegmenterConfig {
  std::string backend = "box-fill";  // http | file | box-fill
  std::string url;
  std::string dir;
  int timeout_ms = 10000;
  int retries = 1;
};

// Throws Error(kUsage) for an unknown backend name or missing url/dir.
std::unique_ptr<SegmenterBackend> MakeBackend(const SegmenterConfig& config);

}  // namespace osu

#endif  // OSU_SEGMENTER_H_
