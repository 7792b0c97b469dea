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

// A small seeded lab that trains the same multilayer perceptron twice, once
// with ReLU and once with GELU hidden units, and records both loss curves.
// Backpropagation is written out by hand so the gradients can be checked
// against finite differences.

#ifndef OSU_CONVERGENCE_H_
#define OSU_CONVERGENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osu/numerics.h"

namespace osu {

enum class OptimizerKind { kSgd, kAdam };

struct ConvergenceConfig {
  uint64_t seed = 0;
  std::vector<int> hidden = {16, 16};
  double learning_rate = 0.01;
  int epochs = 60;
  double loss_threshold = 0.02;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int samples = 256;
  int batch_size = 32;
};

// Throws Error(kUsage) when epochs < 1, learning_rate <= 0 or sizes are
// not positive.
void ValidateConfig(const ConvergenceConfig& config);

struct Sample {
  double x0 = 0;
  double x1 = 0;
  double y = 0;
};

// The fixed regression task y = sin(pi x0) * cos(pi x1 / 2) on
// [-1, 1]^2, drawn from `seed`.
std::vector<Sample> MakeRegressionTask(uint64_t seed, int samples);

// Fully connected 2 -> hidden... -> 1 network with a linear output. The
// parameters are stored flat, layer by layer, weights (row-major, out x in)
// before biases.
class Mlp {
 public:
  Mlp(std::vector<int> hidden, ActivationKind activation);

  size_t parameter_count() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  ActivationKind activation() const { return activation_; }

  // Glorot-uniform weights and zero biases.
  void Initialize(uint64_t seed);

  double Predict(double x0, double x1) const;
  // Mean squared error over `batch`.
  double Loss(std::span<const Sample> batch) const;
  // d Loss / d params, by backpropagation.
  std::vector<double> Gradient(std::span<const Sample> batch) const;

 private:
  struct Layer {
    int in = 0;
    int out = 0;
    size_t weights = 0;  // offset into params_
    size_t biases = 0;
  };

  std::vector<Layer> layers_;
  std::vector<double> params_;
  ActivationKind activation_;
};

struct ActivationRun {
  ActivationKind activation = ActivationKind::kRelu;
  std::vector<double> curve;  // full-dataset loss after each epoch
  std::optional<int> epochs_to_threshold;  // 1-based
  bool diverged = false;  // stopped early on a non-finite loss
};

struct ConvergenceReport {
  ConvergenceConfig config;
  ActivationRun relu;
  ActivationRun gelu;
};

ConvergenceReport RunConvergenceLab(const ConvergenceConfig& config);
std::string ConvergenceReportToJson(const ConvergenceReport& report);

}  // namespace osu

#endif  // OSU_CONVERGENCE_H_
