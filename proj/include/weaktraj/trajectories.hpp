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


#ifndef WEAKTRAJ_TRAJECTORIES_HPP_
#define WEAKTRAJ_TRAJECTORIES_HPP_

#include <vector>

#include "weaktraj/core.hpp"

namespace weaktraj {

struct TrajectoryRequest {
    ValidatedScenario scenario;
    std::vector<double> times;
    Observable observable;
};

/// Straight line from x_i at t = 0 to x_f at t = T.
double classical_trajectory(double x_i, double x_f, double horizon, double t);

/// Weak values of x and p for any validated scenario with a closed form.
///
/// The position column holds the weak value of x (x (x) |n><n| for
/// SpinTaggedPosition); the momentum column the matching p weak value.
/// Samples at a destructive screen point are flagged diverged.
/// Throws Unsupported for sampled post-selections on the half line.
WeakValueSeries weak_trajectory(const TrajectoryRequest& req);

/// x_w(t) = x_f t/T + (1 - t/T) sum_n omega_n x_n for slit pre-selections on the full line.
WeakValueSeries discrete_weak_trajectory(const ValidatedScenario& s, const std::vector<double>& times);

/// Symmetric double slit at +-x_i with equal amplitudes.
/// Throws DivergentAtDestructivePoint on the tangent poles.
Complex double_slit_closed_form(double x_i, double x_f, const PhysicalParams& params, double t);

/// Slits at -x_i, 0, x_i with equal amplitudes: x_w(t) = x_f t/T + g (1 - t/T).
Complex triple_slit_g(double x_i, double x_f, const PhysicalParams& params);

/// Time-independent -i hbar d/dx_f ln <x_f|U(T)|phi> (free line), or its
/// post-smeared version for sampled post-selections. On the half line this is
/// the formal value at t = T.
Complex momentum_weak_value(const ValidatedScenario& s);

double momentum_eigenstate_trajectory(double p, double x_f, const PhysicalParams& params, double t);

/// Throws SingularFocus when 1 + 2 hbar T alpha / m = 0.
double gaussian_trajectory(double alpha, double beta, double x_f, const PhysicalParams& params, double t);
double gaussian_momentum(double alpha, double beta, double x_f, const PhysicalParams& params);

/// Weak position for a point source at x_i in front of a Dirichlet wall.
///
/// The Erfi argument is x0 * exp(i pi/4) * sqrt(m T / (2 hbar t (T - t))) with
/// the principal root. t = 0 and t = T return the selections exactly.
Complex lloyd_weak_trajectory(double x_i, double x_f, const PhysicalParams& params, double t);

/// m dx_w/dt for the Lloyd process, differentiated analytically.
/// Formal only: p is not self-adjoint on the half line.
Complex lloyd_weak_momentum(double x_i, double x_f, const PhysicalParams& params, double t);

/// Im p_w(T) = -(m x_i / T) cot(m x_f x_i / (hbar T)).
double lloyd_im_pw(double x_i, double x_f, const PhysicalParams& params);

/// Broken line x_i -> wall -> x_f travelled at constant speed (image source at -x_i).
double lloyd_bounce_path(double x_i, double x_f, double horizon, double t);

/// max_t |Re x_w(t) - (direct + bounce)/2| over `count` uniform interior times.
double lloyd_average_deviation(double x_i, double x_f, const PhysicalParams& params, std::size_t count);

namespace detail {

/// K_D(x_f, x_i; T) x_w(t) and K_D(x_f, x_i; T) p_w(t); finite even where K_D vanishes.
Complex lloyd_position_numerator(double x_i, double x_f, const PhysicalParams& params, double t);
Complex lloyd_momentum_numerator(double x_i, double x_f, const PhysicalParams& params, double t);

}  // namespace detail

}  // namespace weaktraj

#endif  // WEAKTRAJ_TRAJECTORIES_HPP_
