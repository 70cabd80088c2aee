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


#ifndef WEAKTRAJ_WEIGHTS_HPP_
#define WEAKTRAJ_WEIGHTS_HPP_

#include <vector>

#include "weaktraj/core.hpp"

namespace weaktraj {

/// Complex path weights omega_n, one per slit; they sum to 1.
struct WeightVector {
    std::vector<Complex> omega;

    Complex sum() const;
    /// sum_n omega_n x_n.
    Complex mean(const DiscreteSlits& slits) const;
};

/// omega(x_i) sampled on a uniform grid; its trapezoid integral is 1.
struct WeightDensity {
    UniformGrid grid;
    std::vector<Complex> values;
    /// The unnormalized integral the values were divided by.
    Complex normalization;

    Complex integral() const;
    Complex first_moment() const;
};

/// omega(x_i, x_f); values[j * xi.count + i] belongs to (xi.at(i), xf.at(j)).
struct PrepostWeight {
    UniformGrid xi;
    UniformGrid xf;
    std::vector<Complex> values;
    Complex overlap;

    Complex at(std::size_t i, std::size_t j) const { return values[j * xi.count + i]; }
    Complex integral() const;
    /// integral over x_f, leaving a density in x_i.
    std::vector<Complex> xi_marginal() const;
};

/// omega_n = c_n K(x_f, x_n; T) / sum_m c_m K(x_f, x_m; T).
WeightVector discrete_weights(const ValidatedScenario& s);

/// omega_n = c_n e_n* K_n / sum_m c_m e_m* K_m.
WeightVector spin_tagged_weights(const ValidatedScenario& s);

/// omega_n x_cl^n(t), the weak value of x (x) |n><n| on the full line.
Complex which_path_weak_value(const ValidatedScenario& s, std::size_t n, double t);

/// x^{(n)}_w / omega_n. Throws ZeroWeight when |omega_n| < kDestructiveThreshold.
Complex renormalized_which_path(const ValidatedScenario& s, std::size_t n, double t);

/// omega(x_i) for a continuous pre-selection and a position post-selection.
///
/// Sampled states use their own grid (`grid` must equal it). Momentum and
/// Gaussian states are not integrable against the kernel, so the integrand is
/// windowed by a Gaussian centred on its stationary phase point, falling to
/// e^-40 at the nearer grid edge; the window keeps that point as the first
/// moment. Throws GridTooCoarse if the grid and its every-other-point subgrid
/// disagree on the normalization by 1e-8 or more.
WeightDensity continuous_weight_density(const ValidatedScenario& s, const UniformGrid& grid);

/// omega(x_i, x_f) = psi*(x_f) K(x_f, x_i; T) phi(x_i) / overlap.
///
/// Throws ForbiddenProcess when the overlap vanishes and GridTooCoarse when
/// the subgrid normalization differs by 1e-6 or more.
PrepostWeight general_prepost_weight(const PhysicalParams& params, Geometry geometry, const SampledState& pre,
                                     const SampledState& post);

}  // namespace weaktraj

#endif  // WEAKTRAJ_WEIGHTS_HPP_
