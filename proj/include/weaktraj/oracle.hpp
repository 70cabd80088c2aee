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


#ifndef WEAKTRAJ_ORACLE_HPP_
#define WEAKTRAJ_ORACLE_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "weaktraj/core.hpp"
#include "weaktraj/kernels.hpp"

namespace weaktraj {

/// Regularized quadrature of kernel sandwiches.
///
/// Each integrand is a chirp e^{i A (x - c)^2} about its stationary point c;
/// it is damped by e^{-eps A (x - c)^2} and the result extrapolated to eps = 0
/// over eps_k = epsilon / 2^k. Full-line integrals use the trapezoid rule at a
/// step that puts aliasing and truncation below e^-37; half-line integrals use
/// 16-point Gauss-Legendre panels.
struct QuadratureConfig {
    double epsilon = 0.04;
    /// Lower bound on nodes per level.
    std::size_t points = 1024;
    std::size_t richardson_levels = 6;
    /// Integration is clipped to this interval when set.
    std::optional<std::pair<double, double>> domain;
    /// NonConvergent is thrown when the extrapolation error estimate exceeds
    /// tolerance * max(1, |value|).
    double tolerance = 1e-8;

    /// Cheaper table that still reaches ~1e-12 on full-line sandwiches. The
    /// half-line terms converge more slowly in eps and need the defaults.
    static QuadratureConfig full_line() {
        QuadratureConfig c;
        c.epsilon = 0.1;
        c.richardson_levels = 4;
        return c;
    }

    bool operator==(const QuadratureConfig&) const = default;
};

struct OracleEstimate {
    Complex value;
    double error_estimate = 0.0;
    /// Unextrapolated values, one per eps_k.
    std::vector<Complex> levels;
};

/// x_w(t) for a slit pre-selection and a position (or spin-tagged)
/// post-selection, numerator and denominator both by quadrature.
/// Needs 0 < t < T.
OracleEstimate quadrature_weak_position(const ValidatedScenario& s, double t, const QuadratureConfig& cfg = {});

/// |int K(x_b, x; t2) K(x, x_a; t1) dx - K(x_b, x_a; t1 + t2)| / sqrt(m / (2 pi hbar (t1 + t2))).
double chapman_kolmogorov_check(KernelKind kind, double x_a, double x_b, double t1, double t2,
                                const PhysicalParams& params, const QuadratureConfig& cfg = {});

/// |mean of x under K(x, x_a; t) g(x) - x_a| for a real Gaussian g of width
/// sigma centred on x_a; tends to 0 with t as the kernel tends to a delta.
double kernel_delta_moment_error(KernelKind kind, double x_a, double t, double sigma, const PhysicalParams& params);

enum class GridBoundary { Dirichlet, ReflectionFree };

struct GridPropagatorConfig {
    double dx = 0.01;
    double dt = 1e-3;
    double x_min = -20.0;
    double x_max = 20.0;
    /// Real potential; empty means free.
    std::function<double(double)> potential;
    GridBoundary boundary = GridBoundary::Dirichlet;
    /// Keep a hard wall at x_min even with ReflectionFree (half-line problems).
    bool wall_at_start = false;
    /// ReflectionFree only: quadratic absorbing potential over this width at each open end.
    double absorber_width = 2.0;
    double absorber_strength = 5.0;

    UniformGrid grid() const;
};

struct GridWeakValues {
    WeakValueSeries series;
    /// Relative change of <psi_f|psi_f> and <psi_b|psi_b> over the run.
    double forward_norm_drift = 0.0;
    double backward_norm_drift = 0.0;
};

/// <psi_b(t)|A|psi_f(t)> / <psi_b(t)|psi_f(t)> for A = x, p = -i hbar D_c and the
/// lattice force whose commutator with x matches H, by Crank-Nicolson
/// propagation of `pre` forward from 0 and `post` backward from T.
///
/// Both states must be sampled on cfg.grid() and vanish at its ends.
/// Throws OverlapCollapse when the overlap vanishes and UnstableStep when a
/// Dirichlet run drifts in norm by more than 1e-10.
GridWeakValues twostate_grid_weak_values(const PhysicalParams& params, const SampledState& pre,
                                         const SampledState& post, const std::vector<double>& times,
                                         const GridPropagatorConfig& cfg);

}  // namespace weaktraj

#endif  // WEAKTRAJ_ORACLE_HPP_
