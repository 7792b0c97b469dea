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

// Stage timings of the non-neural pipeline on a synthetic scene.

#ifndef OSU_BENCH_H_
#define OSU_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

namespace osu {

enum class BenchStage { kParse, kSegment, kDisjoint, kCaption, kQuery };
inline constexpr int kBenchStageCount = 5;

std::string_view BenchStageName(BenchStage stage);

struct BenchRecord {
  BenchStage stage = BenchStage::kParse;
  int repetition = 0;
  double elapsed_ms = 0;
  int width = 0;
  int height = 0;
  int entities = 0;
};

struct StageSummary {
  std::string stage;  // stage name or "total"
  double median_ms = 0;
  double p95_ms = 0;
};

struct BenchOptions {
  int size = 1042;  // square image side
  int entities = 5;
  int queries = 100;
  int repetitions = 20;
  uint64_t seed = 7;
};

struct BenchResult {
  BenchOptions options;
  std::vector<BenchRecord> records;
  std::vector<StageSummary> summaries;  // every stage, then "total"
  std::string caption;

  const StageSummary& total() const { return summaries.back(); }
};

// Runs parse -> box-fill segment -> disjoint -> caption -> point queries
// `repetitions` times. Throws Error(kUsage) for entities outside 1..6 or a
// non-positive size, query count or repetition count.
BenchResult RunPipelineBench(const BenchOptions& options);

// Nearest-rank percentile (p in [0, 100]) of unsorted values.
double Percentile(std::vector<double> values, double p);

std::string BenchResultToJson(const BenchResult& result);
std::string FormatBenchResult(const BenchResult& result);

}  // namespace osu

#endif  // OSU_BENCH_H_
