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

// Activation functions and the error function they rest on.
//
//   relu(x) = max(0, x)
//   gelu(x) = x * Phi(x) = x * 0.5 * (1 + erf(x / sqrt(2)))
//
// Erf is evaluated without the C library: for |x| < 3 by the series
//
//   erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1))
//
// whose terms are all positive, and for |x| >= 3 through the continued
// fraction
//
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
//
// evaluated bottom-up at a fixed depth. Both branches stay within 1e-12 of
// the exact value over the whole real line.

#ifndef OSU_NUMERICS_H_
#define OSU_NUMERICS_H_

#include <string_view>

namespace osu {

enum class ActivationKind { kRelu, kGelu };

std::string_view ActivationName(ActivationKind kind);

// All functions below throw Error(kDomain) for non-finite input.
double Erf(double x);
double Erfc(double x);
double NormalCdf(double x);
double NormalPdf(double x);

double Relu(double x);
// 1 for x > 0, 0 otherwise (the subgradient at 0 is taken to be 0).
double ReluGrad(double x);

double Gelu(double x);
// Phi(x) + x * phi(x).
double GeluGrad(double x);

double Activate(ActivationKind kind, double x);
double ActivateGrad(ActivationKind kind, double x);

}  // namespace osu

#endif  // OSU_NUMERICS_H_
