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


#include "weaktraj/weights.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <tuple>

#include "weaktraj/kernels.hpp"
#include "weaktraj/trajectories.hpp"

namespace weaktraj {
namespace {

double trap(const UniformGrid& g, std::size_t k) { return (k == 0 || k + 1 == g.count) ? 0.5 * g.step : g.step; }

Complex kernel_at(const PhysicalParams& p, Geometry geometry, double x_f, double x_i) {
    if (geometry == Geometry::HalfLineDirichlet) {
        if (x_f <= 0.0 || x_i <= 0.0) {
            return 0.0;
        }
        return dirichlet_kernel(x_f, x_i, p.horizon, p).value;
    }
    return free_kernel(x_f, x_i, p.horizon, p).value;
}

WeightVector slit_weights(const ValidatedScenario& s, const std::vector<Complex>* tags) {
    const auto* d = std::get_if<DiscreteSlits>(&s.pre());
    if (d == nullptr) {
        throw WeakError(ErrorCode::InvalidSelection, "discrete weights need a slit pre-selection");
    }
    const PhysicalParams& p = s.params();
    const double x_f = *s.final_position();
    WeightVector w;
    w.omega.resize(d->slits.size());
    Complex total{};
    for (std::size_t n = 0; n < d->slits.size(); ++n) {
        Complex c = d->slits[n].amplitude;
        if (tags != nullptr) {
            c *= std::conj((*tags)[n]);
        }
        w.omega[n] = c == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : c * kernel_at(p, s.geometry(), x_f, d->slits[n].position);
        total += w.omega[n];
    }
    if (is_destructive(s, total)) {
        throw WeakError(ErrorCode::DivergentAtDestructivePoint, "weights are undefined where the amplitude vanishes");
    }
    for (Complex& v : w.omega) {
        v /= total;
    }
    return w;
}

// Trapezoid sums of f over the grid and over its even-index subgrid, both
// restricted to indices [0, 2 floor((n-1)/2)].
std::pair<Complex, Complex> nested_sums(const std::vector<Complex>& f, double h) {
    const std::size_t last = 2 * ((f.size() - 1) / 2);
    Complex full{};
    Complex half{};
    for (std::size_t k = 0; k <= last; ++k) {
        const double edge = (k == 0 || k == last) ? 0.5 : 1.0;
        full += edge * h * f[k];
        if (k % 2 == 0) {
            half += edge * 2.0 * h * f[k];
        }
    }
    return {full, half};
}

}  // namespace

Complex WeightVector::sum() const {
    Complex s{};
    for (const Complex& v : omega) {
        s += v;
    }
    return s;
}

Complex WeightVector::mean(const DiscreteSlits& slits) const {
    Complex s{};
    for (std::size_t n = 0; n < omega.size(); ++n) {
        s += omega[n] * slits.slits[n].position;
    }
    return s;
}

Complex WeightDensity::integral() const {
    Complex s{};
    for (std::size_t k = 0; k < grid.count; ++k) {
        s += trap(grid, k) * values[k];
    }
    return s;
}

Complex WeightDensity::first_moment() const {
    Complex s{};
    for (std::size_t k = 0; k < grid.count; ++k) {
        s += trap(grid, k) * grid.at(k) * values[k];
    }
    return s;
}

Complex PrepostWeight::integral() const {
    Complex s{};
    for (std::size_t j = 0; j < xf.count; ++j) {
        for (std::size_t i = 0; i < xi.count; ++i) {
            s += trap(xi, i) * trap(xf, j) * at(i, j);
        }
    }
    return s;
}

std::vector<Complex> PrepostWeight::xi_marginal() const {
    std::vector<Complex> out(xi.count);
    for (std::size_t j = 0; j < xf.count; ++j) {
        for (std::size_t i = 0; i < xi.count; ++i) {
            out[i] += trap(xf, j) * at(i, j);
        }
    }
    return out;
}

WeightVector discrete_weights(const ValidatedScenario& s) {
    if (!std::holds_alternative<PositionEigenstate>(s.post())) {
        throw WeakError(ErrorCode::InvalidSelection, "discrete weights need a position post-selection");
    }
    return slit_weights(s, nullptr);
}

WeightVector spin_tagged_weights(const ValidatedScenario& s) {
    const auto* st = std::get_if<SpinTagged>(&s.post());
    if (st == nullptr) {
        throw WeakError(ErrorCode::InvalidSelection, "spin-tagged weights need a spin-tagged post-selection");
    }
    return slit_weights(s, &st->tags);
}

Complex which_path_weak_value(const ValidatedScenario& s, std::size_t n, double t) {
    if (s.half_line()) {
        throw WeakError(ErrorCode::Unsupported, "which-path lines are the free full-line result");
    }
    const WeightVector w = spin_tagged_weights(s);
    if (n >= w.omega.size()) {
        throw WeakError(ErrorCode::InvalidSelection, "slit index out of range");
    }
    const auto& slits = std::get<DiscreteSlits>(s.pre()).slits;
    return w.omega[n] * classical_trajectory(slits[n].position, *s.final_position(), s.params().horizon, t);
}

Complex renormalized_which_path(const ValidatedScenario& s, std::size_t n, double t) {
    const WeightVector w = spin_tagged_weights(s);
    if (n >= w.omega.size()) {
        throw WeakError(ErrorCode::InvalidSelection, "slit index out of range");
    }
    if (std::abs(w.omega[n]) < kDestructiveThreshold) {
        throw WeakError(ErrorCode::ZeroWeight, "slit " + std::to_string(n + 1) + " carries no weight");
    }
    return which_path_weak_value(s, n, t) / w.omega[n];
}

WeightDensity continuous_weight_density(const ValidatedScenario& s, const UniformGrid& grid) {
    if (!std::holds_alternative<PositionEigenstate>(s.post())) {
        throw WeakError(ErrorCode::InvalidSelection, "weight density needs a position post-selection");
    }
    if (grid.count < 3 || !(grid.step > 0.0)) {
        throw WeakError(ErrorCode::InvalidSelection, "weight grid needs >= 3 points and a positive step");
    }
    const PhysicalParams& p = s.params();
    const double x_f = *s.final_position();
    const double a = p.mass / (2.0 * p.hbar * p.horizon);

    std::vector<Complex> f(grid.count);
    double centre = 0.0;
    bool windowed = true;
    std::function<Complex(double)> phi;
    if (const auto* m = std::get_if<MomentumEigenstate>(&s.pre())) {
        centre = x_f - m->momentum * p.horizon / p.mass;
        phi = [k = m->momentum / p.hbar](double x) { return std::polar(1.0, k * x); };
    } else if (const auto* g = std::get_if<ComplexGaussian>(&s.pre())) {
        centre = (2.0 * a * x_f - g->beta) / (2.0 * a + 2.0 * g->alpha);
        phi = [g](double x) { return g->norm * std::polar(1.0, g->alpha * x * x + g->beta * x); };
    } else if (const auto* st = std::get_if<SampledState>(&s.pre())) {
        if (!(st->grid == grid)) {
            throw WeakError(ErrorCode::InvalidSelection, "sampled weights live on the state's own grid");
        }
        windowed = false;
    } else {
        throw WeakError(ErrorCode::InvalidSelection, "weight density needs a continuous pre-selection");
    }

    double eps = 0.0;
    if (windowed) {
        const double reach = std::min(centre - grid.start, grid.stop() - centre);
        if (!(reach > 0.0)) {
            throw WeakError(ErrorCode::GridTooCoarse, "grid does not contain the stationary point of the integrand");
        }
        eps = 40.0 / (reach * reach);
    }

    double scale = 0.0;
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double x = grid.at(k);
        const Complex phik = windowed ? phi(x) * std::exp(-eps * (x - centre) * (x - centre))
                                      : std::get<SampledState>(s.pre()).values[k];
        f[k] = phik == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : kernel_at(p, s.geometry(), x_f, x) * phik;
        scale += trap(grid, k) * std::abs(f[k]);
    }

    WeightDensity out{grid, std::move(f), {}};
    out.normalization = out.integral();
    if (std::abs(out.normalization) < kDestructiveThreshold * scale) {
        throw WeakError(ErrorCode::DivergentAtDestructivePoint, "weights are undefined where the amplitude vanishes");
    }
    const auto [full, half] = nested_sums(out.values, grid.step);
    if (std::abs(full - half) >= 1e-8 * std::abs(full)) {
        throw WeakError(ErrorCode::GridTooCoarse, "halving the grid changes the weight normalization");
    }
    for (Complex& v : out.values) {
        v /= out.normalization;
    }
    return out;
}

PrepostWeight general_prepost_weight(const PhysicalParams& params, Geometry geometry, const SampledState& pre,
                                     const SampledState& post) {
    if (pre.grid.count < 3 || post.grid.count < 3 || pre.values.size() != pre.grid.count ||
        post.values.size() != post.grid.count) {
        throw WeakError(ErrorCode::InvalidSelection, "selections need >= 3 samples matching their grids");
    }
    PrepostWeight out{pre.grid, post.grid, std::vector<Complex>(pre.grid.count * post.grid.count), {}};
    double scale = 0.0;
    for (std::size_t j = 0; j < post.grid.count; ++j) {
        const Complex psi = std::conj(post.values[j]);
        for (std::size_t i = 0; i < pre.grid.count; ++i) {
            const Complex v = psi * pre.values[i];
            Complex& cell = out.values[j * pre.grid.count + i];
            cell = v == Complex(0.0, 0.0) ? v : v * kernel_at(params, geometry, post.grid.at(j), pre.grid.at(i));
            scale += trap(pre.grid, i) * trap(post.grid, j) * std::abs(cell);
        }
    }
    out.overlap = out.integral();
    if (!(std::abs(out.overlap) >= kDestructiveThreshold * scale)) {
        throw WeakError(ErrorCode::ForbiddenProcess, "pre- and post-selection have no overlap");
    }

    // Row sums on the x_i subgrid, then the x_f subgrid.
    std::vector<Complex> rows_full(post.grid.count);
    std::vector<Complex> rows_half(post.grid.count);
    for (std::size_t j = 0; j < post.grid.count; ++j) {
        std::vector<Complex> row(out.values.begin() + static_cast<std::ptrdiff_t>(j * pre.grid.count),
                                 out.values.begin() + static_cast<std::ptrdiff_t>((j + 1) * pre.grid.count));
        std::tie(rows_full[j], rows_half[j]) = nested_sums(row, pre.grid.step);
    }
    const Complex full = nested_sums(rows_full, post.grid.step).first;
    const Complex half = nested_sums(rows_half, post.grid.step).second;
    if (std::abs(full - half) >= 1e-6 * std::abs(full)) {
        throw WeakError(ErrorCode::GridTooCoarse, "halving the grids changes the weight normalization");
    }
    for (Complex& v : out.values) {
        v /= out.overlap;
    }
    return out;
}

}  // namespace weaktraj
