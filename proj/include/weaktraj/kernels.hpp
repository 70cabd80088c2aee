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


#ifndef WEAKTRAJ_KERNELS_HPP_
#define WEAKTRAJ_KERNELS_HPP_

#include "weaktraj/core.hpp"

namespace weaktraj {

struct KernelEval {
    Complex value;
    /// sqrt(m / (2 pi hbar t)); used for dimension-consistent zero tests.
    double prefactor_modulus = 0.0;
};

/// Free-particle propagator <x_b|U(t)|x_a>, with sqrt(1/i) = exp(-i pi/4).
KernelEval free_kernel(double x_b, double x_a, double t, const PhysicalParams& params);

/// Half-line propagator with a Dirichlet wall at x = 0 (free kernel minus its image).
KernelEval dirichlet_kernel(double x_b, double x_a, double t, const PhysicalParams& params);

/// d/dx_b of the free kernel.
Complex free_kernel_dxb(double x_b, double x_a, double t, const PhysicalParams& params);

/// d/dx_b of the Dirichlet kernel.
Complex dirichlet_kernel_dxb(double x_b, double x_a, double t, const PhysicalParams& params);

enum class KernelKind { Free, Dirichlet };

KernelEval kernel(KernelKind kind, double x_b, double x_a, double t, const PhysicalParams& params);

/// Imaginary error function erfi(z) = -i erf(iz).
///
/// Throws WeakError(Overflow) when the result is not representable.
Complex erfi(Complex z);

namespace detail {

/// |z| at which erfi switches from the extended-precision series to the
/// optimally truncated asymptotic expansion.
inline constexpr double kErfiSeriesRadius = 6.5;

Complex erfi_series(Complex z);
Complex erfi_asymptotic(Complex z);

}  // namespace detail

}  // namespace weaktraj

#endif  // WEAKTRAJ_KERNELS_HPP_
