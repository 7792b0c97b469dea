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
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "json_util.h"
#include "osu/error.h"

namespace osu {
namespace {

// Uniform double in [0, 1) from the top 53 bits; stable across platforms.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

class Optimizer {
 public:
  Optimizer(const ConvergenceConfig& config, size_t n)
      : config_(config), m_(n, 0.0), v_(n, 0.0) {}

  void Step(std::vector<double>& params, const std::vector<double>& grad) {
    if (config_.optimizer == OptimizerKind::kSgd) {
      for (size_t i = 0; i < params.size(); ++i) {
        params[i] -= config_.learning_rate * grad[i];
      }
      return;
    }
    ++t_;
    const double b1 = config_.beta1;
    const double b2 = config_.beta2;
    const double c1 = 1.0 - std::pow(b1, t_);
    const double c2 = 1.0 - std::pow(b2, t_);
    for (size_t i = 0; i < params.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
      const double m_hat = m_[i] / c1;
      const double v_hat = v_[i] / c2;
      params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }

 private:
  const ConvergenceConfig& config_;
  std::vector<double> m_;
  std::vector<double> v_;
  int t_ = 0;
};

ActivationRun Train(const ConvergenceConfig& config,
                    const std::vector<Sample>& data, Mlp net) {
  ActivationRun run;
  run.activation = net.activation();
  Optimizer opt(config, net.parameter_count());
  // Shuffling has its own stream so both activations see the same batches.
  std::mt19937_64 order_rng(config.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<Sample> shuffled = data;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[order_rng() % i]);
    }
    double loss;
    try {
      for (size_t begin = 0; begin < shuffled.size();
           begin += static_cast<size_t>(config.batch_size)) {
        const size_t len = std::min(static_cast<size_t>(config.batch_size),
                                    shuffled.size() - begin);
        const auto grad =
            net.Gradient(std::span<const Sample>(shuffled.data() + begin, len));
        opt.Step(net.params(), grad);
      }
      loss = net.Loss(data);
    } catch (const Error&) {
      // Activations reject non-finite inputs once the weights blow up.
      loss = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(loss)) {
      run.diverged = true;
      break;
    }
    run.curve.push_back(loss);
    if (!run.epochs_to_threshold && loss <= config.loss_threshold) {
      run.epochs_to_threshold = epoch;
    }
  }
  return run;
}

internal::Json RunToJson(const ActivationRun& run) {
  internal::Json j = {{"activation", ActivationName(run.activation)},
                      {"curve", run.curve}};
  j["epochs_to_threshold"] = run.epochs_to_threshold
                                 ? internal::Json(*run.epochs_to_threshold)
                                 : internal::Json(nullptr);
  j["final_loss"] =
      run.curve.empty() ? internal::Json(nullptr) : internal::Json(run.curve.back());
  j["diverged"] = run.diverged;
  return j;
}

std::string Faster(const ConvergenceReport& r) {
  const auto& a = r.gelu.epochs_to_threshold;
  const auto& b = r.relu.epochs_to_threshold;
  if (!a && !b) return "neither";
  if (a && (!b || *a < *b)) return "gelu";
  if (b && (!a || *b < *a)) return "relu";
  return "tie";
}

}  // namespace

void ValidateConfig(const ConvergenceConfig& config) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kUsage, "convergence config: " + what);
  };
  if (config.epochs < 1) fail("epochs must be >= 1");
  if (!(config.learning_rate > 0)) fail("learning rate must be > 0");
  if (config.samples < 1) fail("samples must be >= 1");
  if (config.batch_size < 1) fail("batch size must be >= 1");
  for (int h : config.hidden) {
    if (h < 1) fail("hidden sizes must be >= 1");
  }
  if (!(config.beta1 >= 0 && config.beta1 < 1 && config.beta2 >= 0 &&
        config.beta2 < 1)) {
    fail("betas must lie in [0, 1)");
  }
}

std::vector<Sample> MakeRegressionTask(uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> data(static_cast<size_t>(samples));
  for (auto& s : data) {
    s.x0 = Uniform(rng, -1, 1);
    s.x1 = Uniform(rng, -1, 1);
    s.y = std::sin(std::numbers::pi * s.x0) * std::cos(std::numbers::pi * s.x1 / 2);
  }
  return data;
}

Mlp::Mlp(std::vector<int> hidden, ActivationKind activation)
    : activation_(activation) {
  std::vector<int> sizes = {2};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(1);
  size_t offset = 0;
  for (size_t i = 0; i + 1 < sizes.size(); ++i) {
    Layer l;
    l.in = sizes[i];
    l.out = sizes[i + 1];
    l.weights = offset;
    offset += size_t(l.in) * size_t(l.out);
    l.biases = offset;
    offset += size_t(l.out);
    layers_.push_back(l);
  }
  params_.assign(offset, 0.0);
}

void Mlp::Initialize(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::fill(params_.begin(), params_.end(), 0.0);
  for (const auto& l : layers_) {
    const double limit = std::sqrt(6.0 / (l.in + l.out));
    for (size_t k = 0; k < size_t(l.in) * size_t(l.out); ++k) {
      params_[l.weights + k] = Uniform(rng, -limit, limit);
    }
  }
}

double Mlp::Predict(double x0, double x1) const {
  std::vector<double> a = {x0, x1};
  for (size_t li = 0; li < layers_.size(); ++li) {
    const Layer& l = layers_[li];
    const bool last = li + 1 == layers_.size();
    std::vector<double> z(l.out);
    for (int o = 0; o < l.out; ++o) {
      double acc = params_[l.biases + o];
      for (int i = 0; i < l.in; ++i) acc += params_[l.weights + size_t(o) * l.in + i] * a[i];
      z[o] = last ? acc : Activate(activation_, acc);
    }
    a = std::move(z);
  }
  return a[0];
}

double Mlp::Loss(std::span<const Sample> batch) const {
  if (batch.empty()) return 0.0;
  double sum = 0;
  for (const auto& s : batch) {
    const double d = Predict(s.x0, s.x1) - s.y;
    sum += d * d;
  }
  return sum / static_cast<double>(batch.size());
}

std::vector<double> Mlp::Gradient(std::span<const Sample> batch) const {
  std::vector<double> grad(params_.size(), 0.0);
  if (batch.empty()) return grad;
  const double scale = 2.0 / static_cast<double>(batch.size());

  // Per-layer pre-activations and activations for one sample.
  std::vector<std::vector<double>> pre(layers_.size());
  std::vector<std::vector<double>> act(layers_.size() + 1);
  for (const auto& s : batch) {
    act[0] = {s.x0, s.x1};
    for (size_t li = 0; li < layers_.size(); ++li) {
      const Layer& l = layers_[li];
      const bool last = li + 1 == layers_.size();
      pre[li].assign(l.out, 0.0);
      act[li + 1].assign(l.out, 0.0);
      for (int o = 0; o < l.out; ++o) {
        double acc = params_[l.biases + o];
        for (int i = 0; i < l.in; ++i) {
          acc += params_[l.weights + size_t(o) * l.in + i] * act[li][i];
        }
        pre[li][o] = acc;
        act[li + 1][o] = last ? acc : Activate(activation_, acc);
      }
    }

    // delta = dL/d(pre-activation) of the current layer.
    std::vector<double> delta = {scale * (act.back()[0] - s.y)};
    for (size_t li = layers_.size(); li-- > 0;) {
      const Layer& l = layers_[li];
      for (int o = 0; o < l.out; ++o) {
        grad[l.biases + o] += delta[o];
        for (int i = 0; i < l.in; ++i) {
          grad[l.weights + size_t(o) * l.in + i] += delta[o] * act[li][i];
        }
      }
      if (li == 0) break;
      std::vector<double> prev(l.in, 0.0);
      for (int i = 0; i < l.in; ++i) {
        double back = 0;
        for (int o = 0; o < l.out; ++o) {
          back += params_[l.weights + size_t(o) * l.in + i] * delta[o];
        }
        prev[i] = back * ActivateGrad(activation_, pre[li - 1][i]);
      }
      delta = std::move(prev);
    }
  }
  return grad;
}

ConvergenceReport RunConvergenceLab(const ConvergenceConfig& config) {
  ValidateConfig(config);
  const auto data = MakeRegressionTask(config.seed, config.samples);

  Mlp relu(config.hidden, ActivationKind::kRelu);
  relu.Initialize(config.seed);
  Mlp gelu(config.hidden, ActivationKind::kGelu);
  gelu.params() = relu.params();

  ConvergenceReport report;
  report.config = config;
  auto relu_run = std::async(std::launch::async, Train, std::cref(config),
                             std::cref(data), std::move(relu));
  report.gelu = Train(config, data, std::move(gelu));
  report.relu = relu_run.get();
  return report;
}

std::string ConvergenceReportToJson(const ConvergenceReport& report) {
  const auto& c = report.config;
  internal::Json config = {
      {"seed", c.seed},
      {"hidden", c.hidden},
      {"learning_rate", c.learning_rate},
      {"epochs", c.epochs},
      {"loss_threshold", c.loss_threshold},
      {"optimizer", c.optimizer == OptimizerKind::kSgd ? "sgd" : "adam"},
      {"beta1", c.beta1},
      {"beta2", c.beta2},
      {"epsilon", c.epsilon},
      {"samples", c.samples},
      {"batch_size", c.batch_size},
      {"task", "y = sin(pi x0) cos(pi x1 / 2), x in [-1, 1]^2"}};
  internal::Json doc = {{"seed", c.seed},
                        {"config", std::move(config)},
                        {"runs", internal::Json::array({RunToJson(report.relu),
                                                        RunToJson(report.gelu)})},
                        {"faster_to_threshold", Faster(report)}};
  return doc.dump(2) + "\n";
}

}  // namespace osu
