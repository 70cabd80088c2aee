// Copyright 2026 The weaktraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "weaktraj/kernels.hpp"

#include <cmath>
#include <string>

namespace weaktraj {
namespace {

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw WeakError(ErrorCode::NonPositiveTime, "propagation time must be positive, got " + std::to_string(t));
    }
}

double prefactor(double t, const PhysicalParams& params) {
    return std::sqrt(params.mass / (2.0 * kPi * params.hbar * t));
}

// exp(-i pi/4)
const Complex kQuarterTurn{0.70710678118654752440, -0.70710678118654752440};

}  // namespace

KernelEval free_kernel(double x_b, double x_a, double t, const PhysicalParams& params) {
    require_positive_time(t);
    const double pref = prefactor(t, params);
    const double d = x_b - x_a;
    const double phase = params.mass * d * d / (2.0 * params.hbar * t);
    return {pref * kQuarterTurn * std::polar(1.0, phase), pref};
}

Complex free_kernel_dxb(double x_b, double x_a, double t, const PhysicalParams& params) {
    const KernelEval k = free_kernel(x_b, x_a, t, params);
    return k.value * Complex(0.0, params.mass * (x_b - x_a) / (params.hbar * t));
}

// K(x_b, x_a) - K(x_b, -x_a) written as a product so that the nodes at
// m x_a x_b / (hbar t) = k pi are exact zeros instead of cancellations.
KernelEval dirichlet_kernel(double x_b, double x_a, double t, const PhysicalParams& params) {
    require_positive_time(t);
    if (!(x_b > 0.0) || !(x_a > 0.0)) {
        throw WeakError(ErrorCode::GeometryViolation, "Dirichlet kernel needs both positions on the half line x > 0");
    }
    const double pref = prefactor(t, params);
    const double mean_phase = params.mass * (x_b * x_b + x_a * x_a) / (2.0 * params.hbar * t);
    const double split = params.mass * x_a * x_b / (params.hbar * t);
    const Complex value = pref * kQuarterTurn * std::polar(1.0, mean_phase) * Complex(0.0, -2.0 * std::sin(split));
    return {value, pref};
}

Complex dirichlet_kernel_dxb(double x_b, double x_a, double t, const PhysicalParams& params) {
    const KernelEval k = dirichlet_kernel(x_b, x_a, t, params);
    const double mean_phase = params.mass * (x_b * x_b + x_a * x_a) / (2.0 * params.hbar * t);
    const double split = params.mass * x_a * x_b / (params.hbar * t);
    const double rate = params.mass / (params.hbar * t);
    const Complex carrier = k.prefactor_modulus * kQuarterTurn * std::polar(1.0, mean_phase) * Complex(0.0, -2.0);
    return k.value * Complex(0.0, rate * x_b) + carrier * (std::cos(split) * rate * x_a);
}

KernelEval kernel(KernelKind kind, double x_b, double x_a, double t, const PhysicalParams& params) {
    return kind == KernelKind::Free ? free_kernel(x_b, x_a, t, params) : dirichlet_kernel(x_b, x_a, t, params);
}

}  // namespace weaktraj
