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


// erfi(z) for complex z.
//
// Inside |z| <= kErfiSeriesRadius the Maclaurin series is summed in binary128.
// Along the diagonals arg z = +-pi/4 the terms grow like exp(|z|^2) while the
// sum stays O(1), so double precision would lose up to 18 digits at the seam.
// Outside that disc erfi is reduced to the Faddeeva function
//     erfi(z) = -i + i exp(z^2) w(-z),     Im(-z) >= 0,
// and w is taken from its asymptotic expansion, truncated at the smallest
// term. The truncation error is O(exp(-|z|^2)) relative.

#include <cmath>
#include <limits>

#include "weaktraj/kernels.hpp"

namespace weaktraj {
namespace {

using quad = __float128;

struct QComplex {
    quad re;
    quad im;
};

QComplex operator*(QComplex a, QComplex b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
QComplex scale(QComplex a, quad s) { return {a.re * s, a.im * s}; }
quad norm2(QComplex a) { return a.re * a.re + a.im * a.im; }

constexpr quad kTwoOverSqrtPiQ = 1.12837916709551257389615890312154517168810125865800Q;
constexpr double kInvSqrtPi = 0.56418958354775628694807945156077258584405062932900;

// ln(DBL_MAX)
constexpr double kLogMax = 709.78;

}  // namespace

namespace detail {

Complex erfi_series(Complex z) {
    if (z == Complex(0.0, 0.0)) {
        return {0.0, 0.0};
    }
    const QComplex zq{static_cast<quad>(z.real()), static_cast<quad>(z.imag())};
    const QComplex z2 = zq * zq;
    const quad r2 = static_cast<quad>(std::norm(z));
    QComplex term = zq;  // z^(2k+1) / k!
    QComplex sum = zq;
    constexpr quad kRel2 = 1e-68Q;  // (1e-34)^2
    for (int k = 1; k < 2000; ++k) {
        term = scale(term * z2, 1.0Q / static_cast<quad>(k));
        const QComplex contrib = scale(term, 1.0Q / static_cast<quad>(2 * k + 1));
        sum = sum + contrib;
        if (static_cast<quad>(k) > r2 && norm2(contrib) <= kRel2 * norm2(sum)) {
            break;
        }
    }
    return {static_cast<double>(sum.re * kTwoOverSqrtPiQ), static_cast<double>(sum.im * kTwoOverSqrtPiQ)};
}

Complex erfi_asymptotic(Complex z) {
    // erfi is odd; work with Im z <= 0 so that u = -z sits in the closed upper half plane.
    if (z.imag() > 0.0) {
        return -erfi_asymptotic(-z);
    }
    const Complex u = -z;
    const Complex inv_two_u2 = 1.0 / (2.0 * u * u);
    Complex term{1.0, 0.0};
    Complex sum{1.0, 0.0};
    double last = 1.0;
    for (int k = 1; k < 4000; ++k) {
        const Complex next = term * (static_cast<double>(2 * k - 1) * inv_two_u2);
        const double mag = std::abs(next);
        if (mag >= last) {
            break;
        }
        term = next;
        sum += term;
        last = mag;
        if (mag < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    const Complex w = Complex(0.0, kInvSqrtPi) * sum / u;
    const Complex exponent = z * z + std::log(w);
    if (exponent.real() > kLogMax) {
        throw WeakError(ErrorCode::Overflow, "erfi(z) exceeds the double range");
    }
    return Complex(0.0, -1.0) + Complex(0.0, 1.0) * std::exp(exponent);
}

}  // namespace detail

Complex erfi(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw WeakError(ErrorCode::Overflow, "erfi argument is not finite");
    }
    if (std::abs(z) <= detail::kErfiSeriesRadius) {
        return detail::erfi_series(z);
    }
    return detail::erfi_asymptotic(z);
}

}  // namespace weaktraj
