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

#include "fixtures.h"

#include <atomic>
#include <filesystem>

#include <unistd.h>

#include "oracles.h"
#include "osu/segmenter.h"

namespace osu::testing {

FrameLexicon FixtureLexicon() {
  FrameLexicon lexicon = LoadLexiconFile(TestDataPath("lexicon.tsv"));
  LoadNounTableFile(TestDataPath("nouns.tsv"), lexicon);
  return lexicon;
}

std::vector<Annotation> FixtureAnnotations() {
  return ParseAnnotations(ReadFile(TestDataPath("annotations.json"))).records;
}

std::vector<Prediction> FixturePredictions() {
  return ParsePredictions(ReadFile(TestDataPath("predictions.json"))).records;
}

std::string FixedNow() { return "2026-01-01T00:00:00Z"; }

SceneBundle RidingBundle() {
  const FrameLexicon lexicon = FixtureLexicon();
  for (const auto& a : FixtureAnnotations()) {
    if (a.image_id != "riding_1.jpg") continue;
    BoxFillBackend backend;
    BuildOptions options;
    options.now = FixedNow;
    SceneBundle b = BuildScene(SituationFromAnnotation(a), a.image_id, a.width,
                               a.height, lexicon, backend, options);
    b.provenance.elapsed_ms = 0;
    return b;
  }
  return {};
}

std::string MakeTempDir(const std::string& stem) {
  static std::atomic<int> counter{0};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("osu_" + stem + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace osu::testing
