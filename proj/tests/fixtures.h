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

// Scene fixtures shared by tests.

#ifndef OSU_TESTS_FIXTURES_H_
#define OSU_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "osu/frames.h"
#include "osu/pipeline.h"
#include "osu/swig_data.h"

namespace osu::testing {

// tests/testdata/lexicon.tsv with nouns.tsv loaded.
FrameLexicon FixtureLexicon();
std::vector<Annotation> FixtureAnnotations();
std::vector<Prediction> FixturePredictions();

// The rider on a motorcycle from annotations.json, 640x480:
//   Agent   man        [200, 80, 360, 330]
//   Vehicle motorcycle [150, 220, 460, 420]
//   Place   road       [0, 300, 640, 480]
// built with the box-fill backend and a fixed clock.
SceneBundle RidingBundle();

// A point inside both the man and the motorcycle boxes but not the road.
inline constexpr double kOverlapX = 280;
inline constexpr double kOverlapY = 260;

// Fixed timestamp used for reproducible bundles.
std::string FixedNow();

// Fresh empty directory under the system temp dir.
std::string MakeTempDir(const std::string& stem);

}  // namespace osu::testing

#endif  // OSU_TESTS_FIXTURES_H_
