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


#ifndef WEAKTRAJ_ANALYSIS_HPP_
#define WEAKTRAJ_ANALYSIS_HPP_

#include <optional>
#include <vector>

#include "weaktraj/core.hpp"

namespace weaktraj {

struct Extremum {
    enum class Kind { Max, Min };
    double x_f = 0.0;
    Kind kind = Kind::Max;
    double probability = 0.0;
};

struct InterferenceCurve {
    std::vector<double> xf;
    std::vector<double> probability;
    /// Sorted by x_f; located to 1e-10 or better.
    std::vector<Extremum> extrema;
};

/// P(x_f) and d/dx_f P(x_f) from the analytic amplitude derivative.
double transition_probability(const ValidatedScenario& s, double x_f);
double probability_derivative(const ValidatedScenario& s, double x_f);

/// |<x_f|U(T)|phi>|^2 on `xf` (sorted), with extrema bracketed by sign changes
/// of dP/dx_f between neighbours and refined by bisection.
InterferenceCurve interference_curve(const ValidatedScenario& s, const std::vector<double>& xf);

/// Half-open screen interval [start, stop) sampled at `count` points.
struct ScreenRange {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 256;

    std::vector<double> points() const;

    bool operator==(const ScreenRange&) const = default;
};

struct RealPoint {
    double x_f = 0.0;
    /// max |Im x_w(t)| over 32 uniform times in [0, T].
    double max_imag_xw = 0.0;
};

struct RealityReport {
    std::vector<RealPoint> real_points;
    std::vector<double> excluded_zeros;
    /// dP/dx_f vanishes on the whole range (flat probability).
    bool everywhere_real = false;
};

/// Screen points where x_w(t) stays real for all t: extrema of P with an
/// amplitude above threshold. Extrema with vanishing amplitude are reported
/// separately. Requires the free full line.
RealityReport reality_points(const ValidatedScenario& s, const ScreenRange& range);

struct ImwSample {
    double x_f = 0.0;
    /// Im x_w(t); empty at destructive points.
    std::optional<double> im_xw;
    /// Im sum_n omega_n x_n (or its continuous analogue).
    std::optional<double> im_mean;
    /// (hbar T / 2m) d ln P / dx_f by a five-point difference with step 1e-5 * span.
    std::optional<double> log_slope;
};

std::vector<ImwSample> imw_vs_interference(const ValidatedScenario& s, const std::vector<double>& xf, double t);

/// Screen points in [xf.front(), xf.back()] where Im x_w(t) has a pole,
/// found as sign changes of 1 / Im x_w(t) that do not come from a zero of Im x_w.
std::vector<double> locate_poles(const ValidatedScenario& s, const std::vector<double>& xf, double t);

struct EhrenfestOptions {
    /// Also check dp_w/dt = -(dV/dx)_w, with the force column of the series
    /// (zero when absent). Off for boundaries that exert impulsive forces.
    bool momentum_equation = true;
};

/// max over interior samples of |dx_w/dt - p_w/m| and, if enabled,
/// |dp_w/dt + (dV/dx)_w|, using three-point differences on the (possibly
/// non-uniform) time grid. Throws TooFewSamples without an interior triple of
/// non-diverged samples.
double ehrenfest_residual(const WeakValueSeries& series, const PhysicalParams& params,
                          const EhrenfestOptions& options = {});

}  // namespace weaktraj

#endif  // WEAKTRAJ_ANALYSIS_HPP_
