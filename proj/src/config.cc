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

#include "osu/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "osu/error.h"

namespace osu {
namespace {

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string EnvName(const std::string& key) {
  std::string name = "OSU_";
  for (char c : key) {
    name.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return name;
}

}  // namespace

const std::vector<std::string>& Config::KnownKeys() {
  static const std::vector<std::string> keys = {
      "segmenter.backend", "segmenter.url",     "segmenter.dir",
      "segmenter.timeout_ms", "segmenter.retries", "serve.host",
      "serve.port",        "serve.bundle_dir",  "serve.image_dir",
      "serve.allow_ingest", "eval.iou_threshold"};
  return keys;
}

Config Config::Parse(std::istream& source) {
  Config config;
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) +
                           ": expected 'key = value'",
                       line_no);
    }
    config.Set(Trim(std::string_view(trimmed).substr(0, eq)),
               Trim(std::string_view(trimmed).substr(eq + 1)));
  }
  return config;
}

Config Config::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kNotFound, "cannot open config " + path);
  return Parse(in);
}

void Config::ApplyEnvironment() {
  for (const auto& key : KnownKeys()) {
    if (const char* v = std::getenv(EnvName(key).c_str())) values_[key] = v;
  }
}

void Config::Set(const std::string& key, std::string value) {
  const auto& known = KnownKeys();
  if (std::find(known.begin(), known.end(), key) == known.end()) {
    throw Error(ErrorKind::kUsage, "unknown config key '" + key + "'");
  }
  values_[key] = std::move(value);
}

bool Config::Has(std::string_view key) const {
  return values_.find(key) != values_.end();
}

std::string Config::Get(std::string_view key, std::string fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int Config::GetInt(std::string_view key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  int v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kUsage,
                "config '" + std::string(key) + "' is not an integer: " + s);
  }
  return v;
}

double Config::GetDouble(std::string_view key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (it->second.empty() || *end != '\0') {
    throw Error(ErrorKind::kUsage, "config '" + std::string(key) +
                                       "' is not a number: " + it->second);
  }
  return v;
}

bool Config::GetBool(std::string_view key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(ErrorKind::kUsage,
              "config '" + std::string(key) + "' is not a boolean: " + s);
}

SegmenterConfig Config::Segmenter() const {
  SegmenterConfig s;
  s.backend = Get("segmenter.backend", s.backend);
  s.url = Get("segmenter.url");
  s.dir = Get("segmenter.dir");
  s.timeout_ms = GetInt("segmenter.timeout_ms", s.timeout_ms);
  s.retries = GetInt("segmenter.retries", s.retries);
  return s;
}

}  // namespace osu
