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

#include "osu/numerics.h"

#include <cmath>
#include <string>

#include "osu/error.h"

namespace osu {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSeriesLimit = 3.0;
constexpr int kFractionDepth = 120;

void CheckFinite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kDomain,
                std::string(fn) + ": non-finite input " + std::to_string(x));
  }
}

// |x| < kSeriesLimit.
double ErfSeries(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return 2.0 / kSqrtPi * std::exp(-x2) * sum;
}

// x >= kSeriesLimit.
double ErfcFraction(double x) {
  double t = x;
  for (int k = kFractionDepth; k >= 1; --k) t = x + (0.5 * k) / t;
  return std::exp(-x * x) / (kSqrtPi * t);
}

}  // namespace

std::string_view ActivationName(ActivationKind kind) {
  return kind == ActivationKind::kRelu ? "relu" : "gelu";
}

double Erf(double x) {
  CheckFinite(x, "erf");
  if (std::fabs(x) < kSeriesLimit) return ErfSeries(x);
  const double tail = ErfcFraction(std::fabs(x));
  return x > 0 ? 1.0 - tail : tail - 1.0;
}

double Erfc(double x) {
  CheckFinite(x, "erfc");
  if (x >= kSeriesLimit) return ErfcFraction(x);
  if (x <= -kSeriesLimit) return 2.0 - ErfcFraction(-x);
  return 1.0 - ErfSeries(x);
}

double NormalCdf(double x) {
  CheckFinite(x, "normal_cdf");
  // The erfc form keeps relative accuracy deep in the left tail.
  return x < 0 ? 0.5 * Erfc(-x / kSqrt2) : 0.5 * (1.0 + Erf(x / kSqrt2));
}

double NormalPdf(double x) {
  CheckFinite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double Relu(double x) {
  CheckFinite(x, "relu");
  return x > 0 ? x : 0.0;
}

double ReluGrad(double x) {
  CheckFinite(x, "relu_grad");
  return x > 0 ? 1.0 : 0.0;
}

double Gelu(double x) {
  CheckFinite(x, "gelu");
  return x * NormalCdf(x);
}

double GeluGrad(double x) {
  CheckFinite(x, "gelu_grad");
  return NormalCdf(x) + x * NormalPdf(x);
}

double Activate(ActivationKind kind, double x) {
  return kind == ActivationKind::kRelu ? Relu(x) : Gelu(x);
}

double ActivateGrad(ActivationKind kind, double x) {
  return kind == ActivationKind::kRelu ? ReluGrad(x) : GeluGrad(x);
}

}  // namespace osu
