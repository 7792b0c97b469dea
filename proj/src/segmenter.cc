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

#include "osu/segmenter.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "httplib.h"
#include "mask_json.h"
#include "osu/error.h"

namespace osu {

using internal::Json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void SleepJitter(int max_ms) {
  if (max_ms <= 0) return;
  thread_local std::mt19937 rng{std::random_device{}()};
  std::uniform_int_distribution<int> dist(0, max_ms);
  std::this_thread::sleep_for(std::chrono::milliseconds(dist(rng)));
}

[[noreturn]] void ProtocolFail(const std::string& what) {
  throw Error(ErrorKind::kProtocol, "segmenter protocol: " + what);
}

}  // namespace

void ValidateRequest(const SegmentRequest& request) {
  if (request.width <= 0 || request.height <= 0) {
    throw Error(ErrorKind::kValidation, "segment request needs image dimensions");
  }
  if (request.prompts.empty()) {
    throw Error(ErrorKind::kValidation, "segment request has no prompts");
  }
  for (const auto& p : request.prompts) {
    if (!IsValidBox(p.box)) {
      throw Error(ErrorKind::kValidation, "prompt for role '" + p.role +
                                              "' has an invalid box: " +
                                              BoxProblem(p.box));
    }
  }
}

std::string SerializeSegmentRequest(const SegmentRequest& request) {
  Json boxes = Json::array();
  for (const auto& p : request.prompts) {
    boxes.push_back({{"role", p.role},
                     {"x1", p.box.x1},
                     {"y1", p.box.y1},
                     {"x2", p.box.x2},
                     {"y2", p.box.y2}});
  }
  Json doc = {{"image_ref", request.image_ref},
              {"width", request.width},
              {"height", request.height},
              {"boxes", std::move(boxes)}};
  return doc.dump();
}

SegmentResponse ParseSegmentResponse(std::string_view json_text,
                                     const SegmentRequest& request) {
  MaskSet set;
  Json doc;
  try {
    doc = internal::ParseJsonText(json_text);
    set = internal::MaskSetFromJson(doc, "response");
  } catch (const Error& e) {
    ProtocolFail(e.what());
  }
  if (set.width != request.width || set.height != request.height) {
    ProtocolFail("mask size " + std::to_string(set.width) + "x" +
                 std::to_string(set.height) + " does not match the image");
  }
  if (set.entities.size() != request.prompts.size()) {
    ProtocolFail("expected " + std::to_string(request.prompts.size()) +
                 " masks, got " + std::to_string(set.entities.size()));
  }
  for (size_t i = 0; i < set.entities.size(); ++i) {
    if (set.entities[i].role != request.prompts[i].role) {
      ProtocolFail("mask " + std::to_string(i) + " is for role '" +
                   set.entities[i].role + "', expected '" +
                   request.prompts[i].role + "'");
    }
  }
  SegmentResponse response;
  response.entities = std::move(set.entities);
  auto id = doc.find("backend_id");
  if (id != doc.end() && id->is_string()) response.backend_id = id->get<std::string>();
  return response;
}

SegmentResponse BoxFillBackend::Segment(const SegmentRequest& request) {
  const auto start = Clock::now();
  ValidateRequest(request);
  SegmentResponse response;
  response.backend_id = std::string(kId);
  response.entities.reserve(request.prompts.size());
  for (const auto& p : request.prompts) {
    response.entities.push_back(
        {p.role, BoxToMask(p.box, request.width, request.height).mask, 1.0});
  }
  response.elapsed_ms = MillisSince(start);
  return response;
}

Capability BoxFillBackend::Probe() noexcept {
  return Capability{true, std::string(kId), 0, "built-in"};
}

HttpBackend::HttpBackend(HttpBackendOptions options)
    : options_(std::move(options)) {
  const std::string& url = options_.url;
  const size_t scheme = url.find("://");
  const size_t path = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  host_ = url.substr(0, path);
  if (path != std::string::npos) path_prefix_ = url.substr(path);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

SegmentResponse HttpBackend::Segment(const SegmentRequest& request) {
  const auto start = Clock::now();
  ValidateRequest(request);
  const std::string body = SerializeSegmentRequest(request);
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);

  int attempts = 0;
  std::string last_error;
  while (attempts <= options_.retries) {
    if (attempts > 0) SleepJitter(options_.max_jitter_ms);
    ++attempts;
    httplib::Client client(host_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const auto attempt_start = Clock::now();
    auto res = client.Post(path_prefix_ + "/segment", body, "application/json");
    if (!res) {
      const auto err = res.error();
      const bool timed_out =
          err == httplib::Error::ConnectionTimeout ||
          (err == httplib::Error::Read &&
           MillisSince(attempt_start) >= 0.9 * options_.timeout_ms);
      if (timed_out) {
        throw Error(ErrorKind::kTimeout,
                    "segmenter at " + options_.url + " did not answer within " +
                        std::to_string(options_.timeout_ms) + " ms");
      }
      last_error = httplib::to_string(err);
      continue;
    }
    if (res->status != 200) {
      ProtocolFail("HTTP status " + std::to_string(res->status) + ": " +
                   res->body.substr(0, 200));
    }
    SegmentResponse response = ParseSegmentResponse(res->body, request);
    if (response.backend_id.empty()) response.backend_id = "http";
    response.elapsed_ms = MillisSince(start);
    return response;
  }
  throw TransportError("segmenter at " + options_.url + " unreachable after " +
                           std::to_string(attempts) + " attempt(s): " + last_error,
                       attempts);
}

Capability HttpBackend::Probe() noexcept {
  Capability cap;
  try {
    httplib::Client client(host_);
    const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    auto res = client.Get(path_prefix_ + "/info");
    if (!res) {
      cap.detail = httplib::to_string(res.error());
      return cap;
    }
    cap.reachable = true;
    cap.backend_id = "http";
    if (res->status == 200) {
      Json doc = Json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (doc.is_object()) {
        if (doc.contains("backend_id") && doc["backend_id"].is_string()) {
          cap.backend_id = doc["backend_id"].get<std::string>();
        }
        if (doc.contains("max_prompts") && doc["max_prompts"].is_number_integer()) {
          cap.max_prompts = doc["max_prompts"].get<int>();
        }
      }
    } else {
      cap.detail = "info returned HTTP " + std::to_string(res->status);
    }
  } catch (const std::exception& e) {
    cap.reachable = false;
    cap.detail = e.what();
  }
  return cap;
}

FileBackend::FileBackend(FileBackendOptions options)
    : options_(std::move(options)) {}

std::string FileBackend::RequestKey(const SegmentRequest& request) {
  // FNV-1a, 64 bit.
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : SerializeSegmentRequest(request)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SegmentResponse FileBackend::Segment(const SegmentRequest& request) {
  const auto start = Clock::now();
  ValidateRequest(request);
  const std::string key = RequestKey(request);
  const fs::path dir(options_.dir);
  const fs::path request_path = dir / (key + ".request.json");
  const fs::path response_path = dir / (key + ".response.json");

  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw TransportError("exchange directory " + options_.dir + " not found", 1);
  }
  {
    const fs::path tmp = dir / (key + ".request.json.tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << SerializeSegmentRequest(request);
    out.close();
    if (!out) throw TransportError("cannot write " + tmp.string(), 1);
    fs::rename(tmp, request_path, ec);
    if (ec) throw TransportError("cannot publish " + request_path.string(), 1);
  }

  const auto deadline = start + std::chrono::milliseconds(options_.timeout_ms);
  while (Clock::now() < deadline) {
    if (fs::exists(response_path, ec)) {
      std::ifstream in(response_path, std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      SegmentResponse response = ParseSegmentResponse(text, request);
      if (response.backend_id.empty()) response.backend_id = "file";
      response.elapsed_ms = MillisSince(start);
      return response;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(options_.poll_interval_ms));
  }
  throw Error(ErrorKind::kTimeout, "no response for " + request_path.string() +
                                       " within " +
                                       std::to_string(options_.timeout_ms) + " ms");
}

Capability FileBackend::Probe() noexcept {
  Capability cap;
  cap.backend_id = "file";
  std::error_code ec;
  cap.reachable = fs::is_directory(options_.dir, ec);
  cap.detail = cap.reachable ? options_.dir : "directory " + options_.dir + " missing";
  return cap;
}

std::unique_ptr<SegmenterBackend> MakeBackend(const SegmenterConfig& config) {
  if (config.backend == "box-fill") return std::make_unique<BoxFillBackend>();
  if (config.backend == "http") {
    if (config.url.empty()) {
      throw Error(ErrorKind::kUsage, "segmenter.backend=http needs segmenter.url");
    }
    return std::make_unique<HttpBackend>(
        HttpBackendOptions{config.url, config.timeout_ms, config.retries});
  }
  if (config.backend == "file") {
    if (config.dir.empty()) {
      throw Error(ErrorKind::kUsage, "segmenter.backend=file needs segmenter.dir");
    }
    return std::make_unique<FileBackend>(
        FileBackendOptions{config.dir, config.timeout_ms});
  }
  throw Error(ErrorKind::kUsage, "unknown segmenter backend '" + config.backend + "'");
}

}  // namespace osu
