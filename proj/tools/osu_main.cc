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

// Command line front end.
//
// Exit codes: 0 ok, 2 input error, 3 strict-mode mismatch, 4 backend failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "osu/bench.h"
#include "osu/config.h"
#include "osu/convergence.h"
#include "osu/error.h"
#include "osu/frames.h"
#include "osu/metrics.h"
#include "osu/pipeline.h"
#include "osu/roi.h"
#include "osu/segmenter.h"
#include "osu/service.h"
#include "osu/swig_data.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitBackend = 4;

int ExitCodeFor(osu::ErrorKind kind) {
  switch (kind) {
    case osu::ErrorKind::kTransport:
    case osu::ErrorKind::kProtocol:
    case osu::ErrorKind::kTimeout: return kExitBackend;
    default: return kExitInput;
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw osu::Error(osu::ErrorKind::kNotFound, "cannot write " + path);
  }
}

void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    WriteTextFile(out_path, text);
  }
}

osu::Config LoadConfig(const std::string& path) {
  osu::Config config = path.empty() ? osu::Config() : osu::Config::LoadFile(path);
  config.ApplyEnvironment();
  return config;
}

osu::FrameLexicon LoadLexicon(const std::string& lexicon_path,
                              const std::string& nouns_path) {
  osu::FrameLexicon lexicon = osu::LoadLexiconFile(lexicon_path);
  if (!nouns_path.empty()) osu::LoadNounTableFile(nouns_path, lexicon);
  return lexicon;
}

const osu::Annotation& FindAnnotation(const std::vector<osu::Annotation>& all,
                                      const std::string& id) {
  for (const auto& a : all) {
    if (a.image_id == id) return a;
  }
  throw osu::Error(osu::ErrorKind::kNotFound, "no annotation for image '" + id + "'");
}

struct EvaluateArgs {
  std::string annotations;
  std::string predictions;
  std::string out_dir;
  std::string setting = "all";
  double iou_threshold = -1;
  std::string averaging = "micro";
  std::string frame_match = "per-role";
  bool strict = false;
  bool lenient = false;
};

int RunEvaluate(const EvaluateArgs& args, const osu::Config& config) {
  std::vector<osu::Setting> settings;
  if (args.setting == "all") {
    settings.assign(osu::kAllSettings.begin(), osu::kAllSettings.end());
  } else {
    for (osu::Setting s : osu::kAllSettings) {
      if (osu::SettingKey(s) == args.setting) settings.push_back(s);
    }
  }
  osu::EvalOptions options;
  options.iou_threshold = args.iou_threshold >= 0
                              ? args.iou_threshold
                              : config.GetDouble("eval.iou_threshold", 0.5);
  if (!(options.iou_threshold > 0 && options.iou_threshold <= 1)) {
    throw osu::Error(osu::ErrorKind::kUsage, "--iou-threshold must be in (0, 1]");
  }
  options.frame_match = args.frame_match == "same-annotator"
                            ? osu::FrameMatch::kSameAnnotator
                            : osu::FrameMatch::kPerRole;
  const osu::Averaging averaging =
      args.averaging == "per-verb" ? osu::Averaging::kPerVerb : osu::Averaging::kMicro;
  const osu::ParseMode mode = args.lenient ? osu::ParseMode::kLenient : osu::ParseMode::kStrict;

  auto gt = osu::ParseAnnotations(osu::ReadFile(args.annotations), mode);
  auto preds = osu::ParsePredictions(osu::ReadFile(args.predictions), mode);
  for (const auto& issue : gt.issues) {
    std::cerr << "warning: skipped annotation '" << issue.image_id << "' ("
              << issue.field << "): " << issue.message << "\n";
  }
  for (const auto& issue : preds.issues) {
    std::cerr << "warning: skipped prediction '" << issue.image_id << "' ("
              << issue.field << "): " << issue.message << "\n";
  }

  const osu::EvaluationRun run =
      osu::Evaluate(gt.records, preds.records, settings, options, averaging);
  for (const auto& w : run.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& id : run.missing_predictions) {
    std::cerr << "warning: no prediction for image '" << id << "'\n";
  }
  for (const auto& id : run.unknown_predictions) {
    std::cerr << "warning: prediction for unknown image '" << id << "'\n";
  }
  if (preds.records.empty()) {
    std::cerr << "warning: no predictions; metrics are undefined\n";
  }

  const std::string text = osu::FormatReport(run.report);
  std::cout << text;
  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    WriteTextFile(args.out_dir + "/report.txt", text);
    WriteTextFile(args.out_dir + "/report.json", osu::ReportToJson(run.report));
  }
  const bool mismatch = !run.missing_predictions.empty() || !run.unknown_predictions.empty();
  return args.strict && mismatch ? kExitMismatch : kExitOk;
}

struct CaptionArgs {
  std::string lexicon;
  std::string nouns;
  std::string annotations;
  std::string predictions;
  std::string image;
};

int RunCaption(const CaptionArgs& args) {
  const osu::FrameLexicon lexicon = LoadLexicon(args.lexicon, args.nouns);
  std::vector<std::pair<std::string, osu::GroundedSituation>> situations;
  if (!args.predictions.empty()) {
    for (const auto& p : osu::ParsePredictions(osu::ReadFile(args.predictions)).records) {
      const auto& top = p.top5.front();
      situations.emplace_back(p.image_id, osu::SituationFromFrame(*top.frame, top.verb));
    }
  } else {
    for (const auto& a : osu::ParseAnnotations(osu::ReadFile(args.annotations)).records) {
      situations.emplace_back(a.image_id, osu::SituationFromAnnotation(a));
    }
  }
  bool found = false;
  for (const auto& [id, situation] : situations) {
    if (!args.image.empty() && id != args.image) continue;
    found = true;
    const std::string caption = osu::RenderCaption(lexicon, situation);
    if (args.image.empty()) {
      std::cout << id << "\t" << caption << "\n";
    } else {
      std::cout << caption << "\n";
    }
  }
  if (!args.image.empty() && !found) {
    throw osu::Error(osu::ErrorKind::kNotFound, "no situation for image '" + args.image + "'");
  }
  return kExitOk;
}

struct BuildArgs {
  std::string lexicon;
  std::string nouns;
  std::string annotations;
  std::string predictions;
  std::string image;
  std::string image_ref;
  std::string out;
  std::string backend;
  std::string url;
  std::string dir;
  bool require_backend = false;
};

int RunBuild(const BuildArgs& args, const osu::Config& config) {
  const osu::FrameLexicon lexicon = LoadLexicon(args.lexicon, args.nouns);
  const auto gt = osu::ParseAnnotations(osu::ReadFile(args.annotations)).records;
  const osu::Annotation& annotation = FindAnnotation(gt, args.image);

  osu::GroundedSituation situation;
  if (args.predictions.empty()) {
    situation = osu::SituationFromAnnotation(annotation);
  } else {
    bool found = false;
    for (const auto& p : osu::ParsePredictions(osu::ReadFile(args.predictions)).records) {
      if (p.image_id != args.image) continue;
      const auto& top = p.top5.front();
      situation = osu::SituationFromFrame(*top.frame, top.verb);
      found = true;
    }
    if (!found) {
      throw osu::Error(osu::ErrorKind::kNotFound, "no prediction for image '" + args.image + "'");
    }
  }

  osu::SegmenterConfig seg = config.Segmenter();
  if (!args.backend.empty()) seg.backend = args.backend;
  if (!args.url.empty()) seg.url = args.url;
  if (!args.dir.empty()) seg.dir = args.dir;
  auto backend = osu::MakeBackend(seg);

  osu::BuildOptions options;
  options.image_ref = args.image_ref.empty() ? args.image : args.image_ref;
  osu::SceneBundle bundle = osu::BuildScene(situation, annotation.image_id,
                                            annotation.width, annotation.height,
                                            lexicon, *backend, options);
  if (seg.backend == "box-fill") {
    // Filled boxes stand in for real masks, so the bundle says so.
    bundle.provenance.degraded = true;
    bundle.provenance.degraded_reason = "no segmenter configured";
    std::cerr << "warning: no segmenter configured; masks are filled boxes\n";
  } else if (bundle.provenance.degraded) {
    std::cerr << "warning: segmenter failed, masks are filled boxes: "
              << bundle.provenance.degraded_reason << "\n";
  }
  if (args.out.empty() || args.out == "-") {
    std::cout << osu::SaveBundle(bundle);
  } else {
    osu::SaveBundleFile(bundle, args.out);
  }
  std::cerr << bundle.caption << "\n";
  return bundle.provenance.degraded && args.require_backend ? kExitBackend : kExitOk;
}

struct QueryArgs {
  std::string bundle;
  double x = -1;
  double y = -1;
  std::vector<double> region;
  bool center = false;
  int ambiguity = 0;
  std::string mode = "mask";
  bool json = false;
};

int RunQuery(const QueryArgs& args) {
  const osu::SceneBundle bundle = osu::LoadBundleFile(args.bundle);
  if (args.ambiguity > 0) {
    const auto summary = osu::AmbiguityReport(bundle, args.ambiguity);
    if (args.json) {
      std::cout << osu::AmbiguityToJson(summary);
    } else {
      char line[160];
      std::snprintf(line, sizeof(line),
                    "points %zu\nbbox ambiguous %zu (%.4f)\nmask ambiguous %zu (%.4f)\n",
                    summary.points, summary.bbox_ambiguous, summary.bbox_fraction(),
                    summary.mask_ambiguous, summary.mask_fraction());
      std::cout << line;
    }
    return kExitOk;
  }
  if (!args.region.empty()) {
    if (args.region.size() != 4) {
      throw osu::Error(osu::ErrorKind::kUsage, "--region takes x1,y1,x2,y2");
    }
    const auto hits = osu::ResolveRegion(
        bundle, {args.region[0], args.region[1], args.region[2], args.region[3]});
    if (args.json) {
      std::cout << osu::RegionHitsToJson(hits);
    } else {
      if (hits.empty()) std::cout << "background\n";
      for (const auto& h : hits) {
        char frac[32];
        std::snprintf(frac, sizeof(frac), "%.4f", h.fraction);
        std::cout << h.role << "\t" << h.display << "\t" << frac << "\n";
      }
    }
    return kExitOk;
  }
  const osu::QueryMode mode = osu::ParseQueryMode(args.mode);
  osu::ResolveResult result;
  if (args.center) {
    result = osu::ResolveCenter(bundle, mode);
  } else {
    if (args.x < 0 && args.y < 0) {
      throw osu::Error(osu::ErrorKind::kUsage,
                       "query needs --x/--y, --region, --center or --ambiguity");
    }
    result = osu::ResolvePoint(bundle, {args.x, args.y}, mode);
  }
  if (args.json) {
    std::cout << osu::ResolveResultToJson(result);
  } else {
    std::cout << result.spoken_text << "\n";
  }
  return kExitOk;
}

int RunBench(const osu::BenchOptions& options, const std::string& out, bool json) {
  const osu::BenchResult result = osu::RunPipelineBench(options);
  if (!out.empty()) WriteTextFile(out, osu::BenchResultToJson(result));
  std::cout << (json ? osu::BenchResultToJson(result) : osu::FormatBenchResult(result));
  return kExitOk;
}

int RunBenchActivation(const osu::ConvergenceConfig& config, const std::string& out) {
  const osu::ConvergenceReport report = osu::RunConvergenceLab(config);
  Emit(out, osu::ConvergenceReportToJson(report));
  return kExitOk;
}

struct ServeArgs {
  std::string host;
  int port = -1;
  std::string bundle_dir;
  std::string image_dir;
  bool allow_ingest = false;
};

int RunServe(const ServeArgs& args, const osu::Config& config) {
  osu::ServiceOptions options;
  options.bundle_dir = args.bundle_dir.empty() ? config.Get("serve.bundle_dir", "bundles")
                                               : args.bundle_dir;
  options.image_dir = args.image_dir.empty() ? config.Get("serve.image_dir") : args.image_dir;
  options.allow_ingest = args.allow_ingest || config.GetBool("serve.allow_ingest", false);
  const std::string host = args.host.empty() ? config.Get("serve.host", "127.0.0.1") : args.host;
  const int port = args.port >= 0 ? args.port : config.GetInt("serve.port", 8700);

  // Block the stop signals before any thread starts so that only sigwait
  // below receives them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  osu::SceneService service(options);
  for (const auto& e : service.scenes()->load_errors) std::cerr << "warning: " << e << "\n";
  const int bound = service.Bind(host, port);
  std::cerr << "serving " << service.scenes()->scenes.size() << " scenes on http://" << host
            << ":" << bound << "\n";
  std::thread server([&service] {
    service.Serve();
    ::kill(::getpid(), SIGTERM);  // wake the waiting main thread
  });
  int signal_number = 0;
  sigwait(&stop_signals, &signal_number);
  service.Stop();
  server.join();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"osu: grounded situation evaluation, scene building and region queries"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Config file with 'key = value' lines")
      ->check(CLI::ExistingFile);

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against annotations");
  evaluate->add_option("--annotations", eval.annotations, "Ground-truth JSON")->required();
  evaluate->add_option("--predictions", eval.predictions, "Predictions JSON")->required();
  evaluate->add_option("--out-dir", eval.out_dir, "Directory for report.txt and report.json");
  evaluate->add_option("--setting", eval.setting, "all|top1|top5|gt")
      ->check(CLI::IsMember({"all", "top1", "top5", "gt"}));
  evaluate->add_option("--iou-threshold", eval.iou_threshold, "Grounding IoU threshold");
  evaluate->add_option("--averaging", eval.averaging, "micro|per-verb")
      ->check(CLI::IsMember({"micro", "per-verb"}));
  evaluate->add_option("--frame-match", eval.frame_match, "per-role|same-annotator")
      ->check(CLI::IsMember({"per-role", "same-annotator"}));
  evaluate->add_flag("--strict", eval.strict, "Exit 3 when image ids do not match");
  evaluate->add_flag("--lenient", eval.lenient, "Skip malformed records instead of failing");

  CaptionArgs cap;
  auto* caption = app.add_subcommand("caption", "Render captions for situations");
  caption->add_option("--lexicon", cap.lexicon, "Verb frame lexicon")->required();
  caption->add_option("--nouns", cap.nouns, "Noun display table");
  auto* cap_src = caption->add_option_group("source");
  cap_src->add_option("--annotations", cap.annotations, "Ground-truth JSON");
  cap_src->add_option("--predictions", cap.predictions, "Predictions JSON (top-1 frame)");
  cap_src->require_option(1);
  caption->add_option("--image", cap.image, "Only this image id");

  BuildArgs bld;
  auto* build = app.add_subcommand("build", "Build a scene bundle for one image");
  build->add_option("--lexicon", bld.lexicon, "Verb frame lexicon")->required();
  build->add_option("--nouns", bld.nouns, "Noun display table");
  build->add_option("--annotations", bld.annotations, "Ground-truth JSON (image size)")
      ->required();
  build->add_option("--predictions", bld.predictions, "Use the predicted top-1 frame");
  build->add_option("--image", bld.image, "Image id")->required();
  build->add_option("--image-ref", bld.image_ref, "Image reference sent to the segmenter");
  build->add_option("--out", bld.out, "Bundle output path (default stdout)");
  build->add_option("--backend", bld.backend, "http|file|box-fill")
      ->check(CLI::IsMember({"http", "file", "box-fill"}));
  build->add_option("--url", bld.url, "Segmenter URL for the http backend");
  build->add_option("--dir", bld.dir, "Exchange directory for the file backend");
  build->add_flag("--require-backend", bld.require_backend,
                  "Exit 4 when the segmenter fails instead of degrading");

  QueryArgs qry;
  auto* query = app.add_subcommand("query", "Resolve a point or region in a bundle");
  query->add_option("--bundle", qry.bundle, "Scene bundle JSON")->required();
  query->add_option("--x", qry.x, "Pixel column");
  query->add_option("--y", qry.y, "Pixel row");
  query->add_option("--region", qry.region, "x1,y1,x2,y2")->delimiter(',');
  query->add_flag("--center", qry.center, "Resolve the image centre");
  query->add_option("--ambiguity", qry.ambiguity, "Grid spacing for an ambiguity scan");
  query->add_option("--mode", qry.mode, "mask|bbox")->check(CLI::IsMember({"mask", "bbox"}));
  query->add_flag("--json", qry.json, "Print JSON");

  osu::BenchOptions bench_opts;
  std::string bench_out;
  bool bench_json = false;
  auto* bench = app.add_subcommand("bench", "Time the pipeline stages on a synthetic scene");
  bench->add_option("--size", bench_opts.size, "Square image side");
  bench->add_option("--entities", bench_opts.entities, "Entities (1..6)");
  bench->add_option("--queries", bench_opts.queries, "Point queries per repetition");
  bench->add_option("--repetitions", bench_opts.repetitions, "Repetitions");
  bench->add_option("--seed", bench_opts.seed, "Scene seed");
  bench->add_option("--out", bench_out, "Write records as JSON");
  bench->add_flag("--json", bench_json, "Print JSON instead of a table");

  osu::ConvergenceConfig conv;
  std::string conv_out;
  std::string optimizer = "adam";
  auto* bench_act = app.add_subcommand("bench-activation",
                                       "Compare ReLU and GELU training convergence");
  bench_act->add_option("--seed", conv.seed, "Seed for data and weights");
  bench_act->add_option("--hidden", conv.hidden, "Hidden layer widths")->delimiter(',');
  bench_act->add_option("--learning-rate", conv.learning_rate, "Learning rate");
  bench_act->add_option("--epochs", conv.epochs, "Epochs");
  bench_act->add_option("--loss-threshold", conv.loss_threshold, "Target training loss");
  bench_act->add_option("--optimizer", optimizer, "sgd|adam")
      ->check(CLI::IsMember({"sgd", "adam"}));
  bench_act->add_option("--samples", conv.samples, "Training samples");
  bench_act->add_option("--batch-size", conv.batch_size, "Minibatch size");
  bench_act->add_option("--out", conv_out, "Report path (default stdout)");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Serve scene bundles over HTTP");
  serve->add_option("--host", srv.host, "Listen address");
  serve->add_option("--port", srv.port, "Port (0 picks a free one)");
  serve->add_option("--bundle-dir", srv.bundle_dir, "Directory of bundle JSON files");
  serve->add_option("--image-dir", srv.image_dir, "Directory of scene images");
  serve->add_flag("--allow-ingest", srv.allow_ingest, "Enable POST /reload");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const osu::Config config = LoadConfig(config_path);
    if (*evaluate) return RunEvaluate(eval, config);
    if (*caption) return RunCaption(cap);
    if (*build) return RunBuild(bld, config);
    if (*query) return RunQuery(qry);
    if (*bench) return RunBench(bench_opts, bench_out, bench_json);
    if (*bench_act) {
      conv.optimizer = optimizer == "sgd" ? osu::OptimizerKind::kSgd : osu::OptimizerKind::kAdam;
      return RunBenchActivation(conv, conv_out);
    }
    if (*serve) return RunServe(srv, config);
  } catch (const osu::Error& e) {
    std::cerr << "error (" << osu::ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
