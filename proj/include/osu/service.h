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

// Read-only HTTP service over a directory of scene bundles.
//
//   GET  /scenes                      {"scenes": [id, ...]}
//   GET  /scenes/{id}                 bundle JSON
//   GET  /scenes/{id}/image           image bytes from the image directory
//   POST /scenes/{id}/query           {"x", "y", "mode"} -> resolve result
//                                     {"region": [x1,y1,x2,y2]} -> entities
//   GET  /scenes/{id}/ambiguity?spacing=N
//   POST /reload                      rescan the bundle directory
//                                     (only with allow_ingest)
//
// Errors are JSON {"error": kind, "message": text} with 400 for bad input,
// 404 for unknown scenes and 403 for disabled endpoints.

#ifndef OSU_SERVICE_H_
#define OSU_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "osu/pipeline.h"

namespace httplib {
class Server;
}

namespace osu {

struct ServiceOptions {
  std::string bundle_dir;
  std::string image_dir;
  bool allow_ingest = false;
};

struct SceneSet {
  std::map<std::string, SceneBundle> scenes;
  std::vector<std::string> load_errors;  // one line per skipped file
};

// Loads every *.json bundle in `dir`; unreadable bundles are skipped and
// reported in load_errors. Throws Error(kNotFound) when dir is missing.
SceneSet LoadSceneDirectory(const std::string& dir);

class SceneService {
 public:
  explicit SceneService(ServiceOptions options);
  ~SceneService();

  SceneService(const SceneService&) = delete;
  SceneService& operator=(const SceneService&) = delete;

  // Rescans the bundle directory and swaps the served set in one step.
  void Reload();
  std::shared_ptr<const SceneSet> scenes() const;

  // Binds the listening socket; port 0 picks a free port. Returns the port.
  // Throws Error(kTransport) when the port is unavailable.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind. Returns at once after Stop().
  void Serve();
  // Safe from any thread, before or after Serve() has started.
  void Stop();

 private:
  void Routes();

  ServiceOptions options_;
  mutable std::mutex mu_;
  std::mutex run_mu_;  // guards serving_ and stopped_
  bool serving_ = false;
  bool stopped_ = false;
  std::shared_ptr<const SceneSet> scenes_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace osu

#endif  // OSU_SERVICE_H_
