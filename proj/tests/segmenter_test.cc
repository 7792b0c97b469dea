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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "httplib.h"
#include "osu/error.h"

namespace osu {
namespace {

// In-process HTTP server on a free port, stopped on destruction.
class MockServer {
 public:
  MockServer() = default;
  ~MockServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Server& server() { return server_; }

  std::string Start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return "http://127.0.0.1:" + std::to_string(port_);
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

SegmentRequest TwoPrompts() {
  return {"img.jpg", 20, 10, {{"Agent", {1, 1, 8, 8}}, {"Item", {5, 2, 18, 9}}}};
}

// Serves the canned masks for the request it receives.
std::string CannedResponse(const SegmentRequest& req, const std::string& backend_id,
                           size_t drop = 0) {
  MaskSet set{req.width, req.height, {}};
  for (size_t i = 0; i + drop < req.prompts.size(); ++i) {
    set.entities.push_back({req.prompts[i].role,
                            BoxToMask(req.prompts[i].box, req.width, req.height).mask, 0.8});
  }
  std::string json = SerializeMaskSet(set);
  json.insert(1, "\"backend_id\":\"" + backend_id + "\",");
  return json;
}

TEST(BoxFillTest, MasksEqualRasterizedBoxes) {
  BoxFillBackend backend;
  const SegmentRequest req = TwoPrompts();
  const SegmentResponse res = backend.Segment(req);
  ASSERT_EQ(res.entities.size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(res.entities[i].role, req.prompts[i].role);
    EXPECT_EQ(res.entities[i].mask, BoxToMask(req.prompts[i].box, 20, 10).mask);
    EXPECT_EQ(res.entities[i].confidence, 1.0);
  }
  const Capability cap = backend.Probe();
  EXPECT_TRUE(cap.reachable);
  EXPECT_EQ(cap.backend_id, "box-fill");
}

TEST(ValidateRequestTest, RejectsBadRequests) {
  SegmentRequest req = TwoPrompts();
  req.prompts[0].box = {5, 5, 2, 8};
  try {
    ValidateRequest(req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
  req = TwoPrompts();
  req.width = 0;
  EXPECT_THROW(ValidateRequest(req), Error);
}

TEST(HttpBackendTest, RoundTripsCannedMasks) {
  MockServer mock;
  std::atomic<int> calls{0};
  SegmentRequest seen;
  mock.server().Post("/segment", [&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    res.set_content(CannedResponse(TwoPrompts(), "mock-sam"), "application/json");
    EXPECT_NE(req.body.find("\"image_ref\":\"img.jpg\""), std::string::npos) << req.body;
  });
  HttpBackend backend({mock.Start(), 2000, 1, 0});
  const SegmentResponse res = backend.Segment(TwoPrompts());
  EXPECT_EQ(calls.load(), 1);
  EXPECT_EQ(res.backend_id, "mock-sam");
  ASSERT_EQ(res.entities.size(), 2u);
  EXPECT_EQ(res.entities[1].mask, BoxToMask({5, 2, 18, 9}, 20, 10).mask);
  EXPECT_EQ(res.entities[1].confidence, 0.8);
}

TEST(HttpBackendTest, PathPrefixIsKept) {
  MockServer mock;
  mock.server().Post("/v1/segment", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(CannedResponse(TwoPrompts(), "prefixed"), "application/json");
  });
  HttpBackend backend({mock.Start() + "/v1/", 2000, 0, 0});
  EXPECT_EQ(backend.Segment(TwoPrompts()).backend_id, "prefixed");
}

TEST(HttpBackendTest, TooFewMasksIsProtocolError) {
  MockServer mock;
  mock.server().Post("/segment", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(CannedResponse(TwoPrompts(), "short", 1), "application/json");
  });
  HttpBackend backend({mock.Start(), 2000, 0, 0});
  try {
    backend.Segment(TwoPrompts());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProtocol);
  }
}

TEST(HttpBackendTest, ServerErrorIsProtocolError) {
  MockServer mock;
  mock.server().Post("/segment", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("boom", "text/plain");
  });
  HttpBackend backend({mock.Start(), 2000, 0, 0});
  try {
    backend.Segment(TwoPrompts());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProtocol);
  }
}

TEST(HttpBackendTest, SlowServerTimesOutWithoutRetry) {
  MockServer mock;
  std::atomic<int> calls{0};
  mock.server().Post("/segment", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content(CannedResponse(TwoPrompts(), "late"), "application/json");
  });
  HttpBackend backend({mock.Start(), 200, 3, 0});
  try {
    backend.Segment(TwoPrompts());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTimeout);
  }
  EXPECT_EQ(calls.load(), 1);
}

TEST(HttpBackendTest, UnreachableReportsAttempts) {
  HttpBackend backend({"http://127.0.0.1:1", 500, 2, 5});
  try {
    backend.Segment(TwoPrompts());
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTransport);
    EXPECT_EQ(e.attempts(), 3);
  }
}

TEST(HttpBackendTest, ProbeEchoesAdvertisedId) {
  MockServer mock;
  mock.server().Get("/info", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"backend_id": "mobile-sam", "max_prompts": 16})", "application/json");
  });
  HttpBackend backend({mock.Start(), 2000, 0, 0});
  const Capability cap = backend.Probe();
  EXPECT_TRUE(cap.reachable);
  EXPECT_EQ(cap.backend_id, "mobile-sam");
  EXPECT_EQ(cap.max_prompts, 16);
}

TEST(HttpBackendTest, ProbeDeadEndpoint) {
  HttpBackend backend({"http://127.0.0.1:1", 300, 0, 0});
  EXPECT_FALSE(backend.Probe().reachable);
}

TEST(FileBackendTest, ExchangesThroughDirectory) {
  namespace fs = std::filesystem;
  const std::string dir = testing::MakeTempDir("exchange");
  const SegmentRequest req = TwoPrompts();
  const std::string key = FileBackend::RequestKey(req);
  std::thread responder([&] {
    const fs::path request = fs::path(dir) / (key + ".request.json");
    for (int i = 0; i < 200 && !fs::exists(request); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    std::ofstream(fs::path(dir) / (key + ".response.json.tmp")) << CannedResponse(req, "worker");
    fs::rename(fs::path(dir) / (key + ".response.json.tmp"),
               fs::path(dir) / (key + ".response.json"));
  });
  FileBackend backend({dir, 3000, 5});
  const SegmentResponse res = backend.Segment(req);
  responder.join();
  EXPECT_EQ(res.backend_id, "worker");
  EXPECT_EQ(res.entities.size(), 2u);
  EXPECT_TRUE(backend.Probe().reachable);
  fs::remove_all(dir);
}

TEST(FileBackendTest, NoResponderTimesOut) {
  const std::string dir = testing::MakeTempDir("exchange");
  FileBackend backend({dir, 100, 10});
  try {
    backend.Segment(TwoPrompts());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTimeout);
  }
  std::filesystem::remove_all(dir);
  EXPECT_FALSE(backend.Probe().reachable);
}

TEST(FileBackendTest, RequestKeyIsStable) {
  EXPECT_EQ(FileBackend::RequestKey(TwoPrompts()), FileBackend::RequestKey(TwoPrompts()));
  SegmentRequest other = TwoPrompts();
  other.image_ref = "other.jpg";
  EXPECT_NE(FileBackend::RequestKey(other), FileBackend::RequestKey(TwoPrompts()));
}

TEST(MakeBackendTest, Configs) {
  EXPECT_EQ(MakeBackend({})->Probe().backend_id, "box-fill");
  SegmenterConfig http;
  http.backend = "http";
  EXPECT_THROW(MakeBackend(http), Error);
  http.url = "http://127.0.0.1:1";
  EXPECT_NE(MakeBackend(http), nullptr);
  SegmenterConfig bogus;
  bogus.backend = "gpu";
  try {
    MakeBackend(bogus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
}

}  // namespace
}  // namespace osu
