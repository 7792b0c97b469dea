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

#include "osu/service.h"

#include <algorithm>
#include <filesystem>

#include "httplib.h"
#include "json_util.h"
#include "osu/error.h"
#include "osu/roi.h"

namespace osu {

using internal::Json;
namespace fs = std::filesystem;

namespace {

int StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kParse:
    case ErrorKind::kSchema:
    case ErrorKind::kRange:
    case ErrorKind::kUsage:
    case ErrorKind::kValidation:
    case ErrorKind::kDomain: return 400;
    default: return 500;
  }
}

void SendJson(httplib::Response& res, const std::string& body, int status = 200) {
  res.status = status;
  res.set_content(body, "application/json");
}

void SendError(httplib::Response& res, int status, std::string_view kind,
               const std::string& message) {
  SendJson(res, Json{{"error", kind}, {"message", message}}.dump(), status);
}

std::string ContentType(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".png") return "image/png";
  if (ext == ".bmp") return "image/bmp";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

double RequireNumber(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number()) {
    throw Error(ErrorKind::kUsage, std::string("'") + key + "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

SceneSet LoadSceneDirectory(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::kNotFound, "bundle directory " + dir + " not found");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  SceneSet set;
  for (const auto& f : files) {
    try {
      SceneBundle b = LoadBundleFile(f.string());
      std::string id = b.image_id;
      if (!set.scenes.emplace(id, std::move(b)).second) {
        set.load_errors.push_back(f.string() + ": duplicate scene id '" + id + "'");
      }
    } catch (const std::exception& e) {
      set.load_errors.push_back(f.string() + ": " + e.what());
    }
  }
  return set;
}

SceneService::SceneService(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  Reload();
  Routes();
}

SceneService::~SceneService() { Stop(); }

void SceneService::Reload() {
  auto fresh = std::make_shared<const SceneSet>(LoadSceneDirectory(options_.bundle_dir));
  std::lock_guard<std::mutex> lock(mu_);
  scenes_ = std::move(fresh);
}

std::shared_ptr<const SceneSet> SceneService::scenes() const {
  std::lock_guard<std::mutex> lock(mu_);
  return scenes_;
}

int SceneService::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::kTransport, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorKind::kTransport,
                "cannot bind " + host + ":" + std::to_string(port) + " (port busy?)");
  }
  return port;
}

void SceneService::Serve() {
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    if (stopped_) return;
    serving_ = true;
  }
  server_->listen_after_bind();
}

void SceneService::Stop() {
  bool serving = false;
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    stopped_ = true;
    serving = serving_;
  }
  // The server ignores stop() until its accept loop runs, so wait for it.
  if (serving) {
    server_->wait_until_ready();
    server_->stop();
  }
}

void SceneService::Routes() {
  auto& srv = *server_;
  // The library default sets SO_REUSEPORT, which lets a second server share a
  // busy port silently. Plain SO_REUSEADDR makes the second bind fail.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
               sizeof(yes));
  });
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  // Runs `fn` against the named scene, translating errors to JSON replies.
  auto with_scene = [this](const httplib::Request& req, httplib::Response& res,
                           auto&& fn) {
    auto set = scenes();
    const std::string id = req.matches[1];
    auto it = set->scenes.find(id);
    if (it == set->scenes.end()) {
      SendError(res, 404, "not-found", "unknown scene '" + id + "'");
      return;
    }
    try {
      fn(it->second);
    } catch (const Error& e) {
      SendError(res, StatusFor(e.kind()), ErrorKindName(e.kind()), e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, "internal", e.what());
    }
  };

  srv.Get("/scenes", [this](const httplib::Request&, httplib::Response& res) {
    Json ids = Json::array();
    for (const auto& [id, _] : scenes()->scenes) ids.push_back(id);
    SendJson(res, Json{{"scenes", std::move(ids)}}.dump());
  });

  srv.Get(R"(/scenes/([^/]+))", [with_scene](const httplib::Request& req,
                                             httplib::Response& res) {
    with_scene(req, res, [&](const SceneBundle& b) { SendJson(res, SaveBundle(b)); });
  });

  srv.Get(R"(/scenes/([^/]+)/image)", [this, with_scene](const httplib::Request& req,
                                                         httplib::Response& res) {
    with_scene(req, res, [&](const SceneBundle& b) {
      if (options_.image_dir.empty()) {
        SendError(res, 404, "not-found", "no image directory configured");
        return;
      }
      const fs::path dir(options_.image_dir);
      std::error_code ec;
      fs::path found;
      if (fs::is_regular_file(dir / b.image_id, ec)) {
        found = dir / b.image_id;
      } else if (fs::is_directory(dir, ec)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
          if (entry.path().stem() == b.image_id) {
            found = entry.path();
            break;
          }
        }
      }
      if (found.empty()) {
        SendError(res, 404, "not-found", "no image for scene '" + b.image_id + "'");
        return;
      }
      res.set_content(ReadFile(found.string()), ContentType(found));
    });
  });

  srv.Post(R"(/scenes/([^/]+)/query)", [with_scene](const httplib::Request& req,
                                                    httplib::Response& res) {
    with_scene(req, res, [&](const SceneBundle& b) {
      const Json body = internal::ParseJsonText(req.body);
      if (!body.is_object()) throw Error(ErrorKind::kUsage, "query body must be an object");
      if (body.contains("region")) {
        auto box = internal::BoxFromJson(body["region"], "region");
        if (!box) throw Error(ErrorKind::kRange, "degenerate region");
        SendJson(res, RegionHitsToJson(ResolveRegion(b, *box)));
        return;
      }
      const Point p{RequireNumber(body, "x"), RequireNumber(body, "y")};
      QueryMode mode = QueryMode::kMask;
      if (body.contains("mode")) {
        if (!body["mode"].is_string()) throw Error(ErrorKind::kUsage, "'mode' must be a string");
        mode = ParseQueryMode(body["mode"].get<std::string>());
      }
      SendJson(res, ResolveResultToJson(ResolvePoint(b, p, mode)));
    });
  });

  srv.Get(R"(/scenes/([^/]+)/ambiguity)", [with_scene](const httplib::Request& req,
                                                       httplib::Response& res) {
    with_scene(req, res, [&](const SceneBundle& b) {
      int spacing = 8;
      if (req.has_param("spacing")) {
        try {
          spacing = std::stoi(req.get_param_value("spacing"));
        } catch (const std::exception&) {
          throw Error(ErrorKind::kUsage, "spacing must be an integer");
        }
      }
      SendJson(res, AmbiguityToJson(AmbiguityReport(b, spacing)));
    });
  });

  srv.Post("/reload", [this](const httplib::Request&, httplib::Response& res) {
    if (!options_.allow_ingest) {
      SendError(res, 403, "usage", "ingestion is disabled (serve.allow_ingest)");
      return;
    }
    try {
      Reload();
      auto set = scenes();
      SendJson(res, Json{{"scenes", set->scenes.size()},
                         {"load_errors", set->load_errors}}
                        .dump());
    } catch (const Error& e) {
      SendError(res, StatusFor(e.kind()), ErrorKindName(e.kind()), e.what());
    }
  });
}

}  // namespace osu
