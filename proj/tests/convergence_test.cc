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

#include "osu/convergence.h"

#include <cmath>

#include <gtest/gtest.h>

#include "osu/error.h"

namespace osu {
namespace {

double MaxGradientError(ActivationKind kind, uint64_t seed) {
  Mlp net({5, 4}, kind);
  net.Initialize(seed);
  const std::vector<Sample> batch = MakeRegressionTask(seed + 1, 8);
  const std::vector<double> analytic = net.Gradient(batch);
  const double h = 1e-4;
  double worst = 0;
  for (size_t i = 0; i < net.parameter_count(); ++i) {
    const double saved = net.params()[i];
    net.params()[i] = saved + h;
    const double up = net.Loss(batch);
    net.params()[i] = saved - h;
    const double down = net.Loss(batch);
    net.params()[i] = saved;
    worst = std::max(worst, std::abs((up - down) / (2 * h) - analytic[i]));
  }
  return worst;
}

TEST(MlpTest, GradientMatchesFiniteDifferences) {
  for (uint64_t seed : {0, 1, 2}) {
    EXPECT_LT(MaxGradientError(ActivationKind::kGelu, seed), 1e-5);
    EXPECT_LT(MaxGradientError(ActivationKind::kRelu, seed), 1e-5);
  }
}

TEST(MlpTest, ParameterCount) {
  Mlp net({16, 16}, ActivationKind::kRelu);
  EXPECT_EQ(net.parameter_count(), 2u * 16 + 16 + 16 * 16 + 16 + 16 + 1);
}

TEST(RegressionTaskTest, DeterministicAndInRange) {
  const auto a = MakeRegressionTask(3, 50), b = MakeRegressionTask(3, 50);
  ASSERT_EQ(a.size(), 50u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x0, b[i].x0);
    EXPECT_GE(a[i].x0, -1.0);
    EXPECT_LE(a[i].x0, 1.0);
    EXPECT_NEAR(a[i].y, std::sin(M_PI * a[i].x0) * std::cos(M_PI * a[i].x1 / 2), 1e-12);
  }
}

TEST(ConvergenceLabTest, OneEpochDeterministic) {
  ConvergenceConfig config;
  config.seed = 0;
  config.epochs = 1;
  const ConvergenceReport a = RunConvergenceLab(config);
  const ConvergenceReport b = RunConvergenceLab(config);
  EXPECT_EQ(a.relu.curve.size(), 1u);
  EXPECT_EQ(a.gelu.curve.size(), 1u);
  EXPECT_EQ(ConvergenceReportToJson(a), ConvergenceReportToJson(b));
}

TEST(ConvergenceLabTest, DefaultRunIsFiniteAndRepeatable) {
  ConvergenceConfig config;
  const std::string first = ConvergenceReportToJson(RunConvergenceLab(config));
  const ConvergenceReport report = RunConvergenceLab(config);
  EXPECT_EQ(ConvergenceReportToJson(report), first);
  for (const auto* run : {&report.relu, &report.gelu}) {
    EXPECT_FALSE(run->diverged);
    ASSERT_EQ(run->curve.size(), size_t(config.epochs));
    for (double v : run->curve) EXPECT_TRUE(std::isfinite(v));
    EXPECT_LT(run->curve.back(), run->curve.front());
  }
}

TEST(ConvergenceLabTest, DivergenceIsRecorded) {
  ConvergenceConfig config;
  config.optimizer = OptimizerKind::kSgd;
  config.learning_rate = 1e6;
  config.epochs = 20;
  const ConvergenceReport report = RunConvergenceLab(config);
  EXPECT_TRUE(report.relu.diverged || report.gelu.diverged);
  EXPECT_NO_THROW(ConvergenceReportToJson(report));
}

TEST(ConvergenceLabTest, InvalidConfigIsUsageError) {
  ConvergenceConfig config;
  config.epochs = 0;
  EXPECT_THROW(RunConvergenceLab(config), Error);
  config.epochs = 5;
  config.batch_size = 0;
  EXPECT_THROW(ValidateConfig(config), Error);
}

}  // namespace
}  // namespace osu
