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

#include "osu/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json_util.h"
#include "osu/error.h"
#include "osu/frames.h"
#include "osu/masks.h"
#include "osu/pipeline.h"
#include "osu/roi.h"
#include "osu/segmenter.h"
#include "osu/swig_data.h"

namespace osu {
namespace {

using Clock = std::chrono::steady_clock;

struct RolePhrase {
  const char* role;
  const char* phrase;  // template fragment
  const char* noun_id;
  const char* display;
};

constexpr RolePhrase kPhrases[] = {
    {"Agent", "An {Agent} works", "n_person", "person"},
    {"Tool", " with a {Tool}", "n_hammer", "hammer"},
    {"Item", " on an {Item}", "n_plank", "plank"},
    {"Source", " from a {Source}", "n_table", "table"},
    {"Destination", " to a {Destination}", "n_shelf", "shelf"},
    {"Place", " at a ~{Place}", "n_workshop", "workshop"},
};

struct SyntheticScene {
  std::string lexicon;
  std::string nouns;
  std::string annotations;
  std::vector<Point> queries;
};

SyntheticScene MakeScene(const BenchOptions& o) {
  std::mt19937_64 rng(o.seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  SyntheticScene s;
  std::string roles, tmpl;
  for (int i = 0; i < o.entities; ++i) {
    roles += (i ? "," : "") + std::string(kPhrases[i].role);
    tmpl += kPhrases[i].phrase;
    s.nouns += std::string(kPhrases[i].noun_id) + "\t" + kPhrases[i].display + "\n";
  }
  s.lexicon = "bench\t" + roles + "\t" + tmpl + "\n";

  Annotation a;
  a.image_id = "synthetic";
  a.width = o.size;
  a.height = o.size;
  a.verb = "bench";
  for (int i = 0; i < o.entities; ++i) {
    RoleAnnotation r;
    r.role = kPhrases[i].role;
    r.nouns.fill(kPhrases[i].noun_id);
    const double w = uniform(0.2, 0.6) * o.size;
    const double h = uniform(0.2, 0.6) * o.size;
    const double x = uniform(0, o.size - w);
    const double y = uniform(0, o.size - h);
    r.box = BoundingBox{x, y, x + w, y + h};
    a.roles.push_back(std::move(r));
  }
  s.annotations = SerializeAnnotations({a});
  for (int q = 0; q < o.queries; ++q) {
    s.queries.push_back({uniform(0, o.size), uniform(0, o.size)});
  }
  return s;
}

double Ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

std::string_view BenchStageName(BenchStage stage) {
  switch (stage) {
    case BenchStage::kParse: return "parse";
    case BenchStage::kSegment: return "segment";
    case BenchStage::kDisjoint: return "disjoint";
    case BenchStage::kCaption: return "caption";
    case BenchStage::kQuery: return "query";
  }
  return "";
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  const size_t idx = static_cast<size_t>(std::clamp(rank, 1.0, double(values.size()))) - 1;
  return values[idx];
}

BenchResult RunPipelineBench(const BenchOptions& options) {
  if (options.entities < 1 || options.entities > kMaxRoles || options.size < 1 ||
      options.queries < 1 || options.repetitions < 1) {
    throw Error(ErrorKind::kUsage, "bench: entities must be 1..6 and sizes, "
                                   "queries and repetitions positive");
  }
  const SyntheticScene scene = MakeScene(options);
  BenchResult result;
  result.options = options;
  BoxFillBackend backend;

  std::vector<std::vector<double>> per_stage(kBenchStageCount);
  std::vector<double> totals;
  for (int rep = 0; rep < options.repetitions; ++rep) {
    double times[kBenchStageCount];

    auto t0 = Clock::now();
    std::istringstream lex_in(scene.lexicon), noun_in(scene.nouns);
    FrameLexicon lexicon = LoadLexicon(lex_in);
    LoadNounTable(noun_in, lexicon);
    const auto parsed = ParseAnnotations(scene.annotations);
    const GroundedSituation situation = SituationFromAnnotation(parsed.records.at(0));
    auto t1 = Clock::now();
    times[0] = Ms(t0, t1);

    SegmentRequest request{"synthetic", options.size, options.size, {}};
    for (const auto& e : situation.entries) request.prompts.push_back({e.role, *e.box});
    SegmentResponse response = backend.Segment(request);
    auto t2 = Clock::now();
    times[1] = Ms(t1, t2);

    SceneBundle bundle;
    bundle.image_id = "synthetic";
    bundle.width = options.size;
    bundle.height = options.size;
    bundle.situation = situation;
    bundle.masks = MakeDisjoint(response.entities);
    auto t3 = Clock::now();
    times[2] = Ms(t2, t3);

    bundle.caption = RenderCaption(lexicon, situation);
    for (const auto& e : situation.entries) bundle.display[e.role] = lexicon.Display(e.noun);
    auto t4 = Clock::now();
    times[3] = Ms(t3, t4);

    size_t hits = 0;
    for (const auto& q : scene.queries) {
      hits += ResolvePoint(bundle, q, QueryMode::kMask).hits.size();
    }
    auto t5 = Clock::now();
    times[4] = Ms(t4, t5);
    (void)hits;

    double total = 0;
    for (int s = 0; s < kBenchStageCount; ++s) {
      result.records.push_back({static_cast<BenchStage>(s), rep, times[s],
                                options.size, options.size, options.entities});
      per_stage[s].push_back(times[s]);
      total += times[s];
    }
    totals.push_back(total);
    result.caption = bundle.caption;
  }

  for (int s = 0; s < kBenchStageCount; ++s) {
    result.summaries.push_back({std::string(BenchStageName(static_cast<BenchStage>(s))),
                                Percentile(per_stage[s], 50),
                                Percentile(per_stage[s], 95)});
  }
  result.summaries.push_back({"total", Percentile(totals, 50), Percentile(totals, 95)});
  return result;
}

std::string BenchResultToJson(const BenchResult& result) {
  using internal::Json;
  Json records = Json::array();
  for (const auto& r : result.records) {
    records.push_back({{"stage", BenchStageName(r.stage)},
                       {"repetition", r.repetition},
                       {"elapsed_ms", r.elapsed_ms},
                       {"width", r.width},
                       {"height", r.height},
                       {"entities", r.entities}});
  }
  Json summaries = Json::array();
  for (const auto& s : result.summaries) {
    summaries.push_back({{"stage", s.stage}, {"median_ms", s.median_ms}, {"p95_ms", s.p95_ms}});
  }
  const auto& o = result.options;
  Json doc = {{"options",
               {{"size", o.size},
                {"entities", o.entities},
                {"queries", o.queries},
                {"repetitions", o.repetitions},
                {"seed", o.seed}}},
              {"caption", result.caption},
              {"summaries", std::move(summaries)},
              {"records", std::move(records)}};
  return doc.dump(2) + "\n";
}

std::string FormatBenchResult(const BenchResult& result) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %12s %12s\n", "stage", "median_ms", "p95_ms");
  out += line;
  for (const auto& s : result.summaries) {
    std::snprintf(line, sizeof(line), "%-10s %12.3f %12.3f\n", s.stage.c_str(),
                  s.median_ms, s.p95_ms);
    out += line;
  }
  return out;
}

}  // namespace osu
