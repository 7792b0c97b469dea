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

// Operator configuration.
//
// The file holds `key = value` lines; '#' starts a comment. Recognized keys:
//
//   segmenter.backend     http | file | box-fill      (box-fill)
//   segmenter.url         base URL of the HTTP segmenter
//   segmenter.dir         exchange directory of the file segmenter
//   segmenter.timeout_ms  per-request timeout          (10000)
//   segmenter.retries     retries after a transport error (1)
//   serve.host            bind address                 (127.0.0.1)
//   serve.port            TCP port                     (8700)
//   serve.bundle_dir      directory of *.json scene bundles
//   serve.image_dir       directory of the scene images
//   serve.allow_ingest    true enables POST /reload    (false)
//   eval.iou_threshold    grounding threshold          (0.5)
//
// Every key can be overridden by an environment variable named OSU_ plus the
// key in upper case with dots replaced by underscores, e.g.
// OSU_SEGMENTER_URL.

#ifndef OSU_CONFIG_H_
#define OSU_CONFIG_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "osu/segmenter.h"

namespace osu {

class Config {
 public:
  static const std::vector<std::string>& KnownKeys();

  // Throws ParseError on malformed lines and Error(kUsage) on unknown keys.
  static Config Parse(std::istream& source);
  static Config LoadFile(const std::string& path);

  // Applies OSU_* environment overrides for every known key.
  void ApplyEnvironment();

  void Set(const std::string& key, std::string value);
  bool Has(std::string_view key) const;
  std::string Get(std::string_view key, std::string fallback = "") const;
  // Throws Error(kUsage) when the value is not a number / boolean.
  int GetInt(std::string_view key, int fallback) const;
  double GetDouble(std::string_view key, double fallback) const;
  bool GetBool(std::string_view key, bool fallback) const;

  SegmenterConfig Segmenter() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace osu

#endif  // OSU_CONFIG_H_
