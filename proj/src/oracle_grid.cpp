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


#include <algorithm>
#include <cmath>
#include <string>

#include "weaktraj/oracle.hpp"

namespace weaktraj {
namespace {

using Field = std::vector<Complex>;

// Tridiagonal M = diag(d) + off * (shift up + shift down) on the interior nodes.
struct Tridiagonal {
    std::vector<Complex> diag;
    Complex off;
};

// One Crank-Nicolson step (I + k M) y = (I - k M) x with x, y zero at both ends.
class Stepper {
public:
    Stepper(const Tridiagonal& m, Complex k) : m_(m), k_(k) {
        const std::size_t n = m.diag.size();
        c_.resize(n);
        denom_.resize(n);
        const Complex a = k * m.off;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const Complex b = 1.0 + k * m.diag[j];
            denom_[j] = (j == 1) ? b : b - a * c_[j - 1];
            c_[j] = a / denom_[j];
        }
    }

    void apply(Field& f) const {
        const std::size_t n = f.size();
        const Complex a = k_ * m_.off;
        rhs_.assign(n, 0.0);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            rhs_[j] = (1.0 - k_ * m_.diag[j]) * f[j] - a * (f[j - 1] + f[j + 1]);
        }
        // Forward sweep then back substitution; f[0] and f[n-1] stay zero.
        for (std::size_t j = 1; j + 1 < n; ++j) {
            rhs_[j] = (j == 1 ? rhs_[j] : rhs_[j] - a * rhs_[j - 1]) / denom_[j];
        }
        f[0] = 0.0;
        f[n - 1] = 0.0;
        for (std::size_t j = n - 2; j >= 1; --j) {
            f[j] = rhs_[j] - (j + 2 < n ? c_[j] * f[j + 1] : Complex(0.0, 0.0));
            if (j == 1) {
                break;
            }
        }
    }

private:
    const Tridiagonal& m_;
    Complex k_;
    std::vector<Complex> c_;
    std::vector<Complex> denom_;
    mutable Field rhs_;
};

double norm2(const Field& f) {
    double s = 0.0;
    for (const Complex& v : f) {
        s += std::norm(v);
    }
    return s;
}

void check_finite(const Field& f) {
    for (const Complex& v : f) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw WeakError(ErrorCode::UnstableStep, "non-finite value during propagation");
        }
    }
}

// Advances f over `span` (sign included in k) in steps no longer than dt.
void advance(Field& f, const Tridiagonal& m, double span, double dt, double hbar, bool adjoint) {
    if (span <= 0.0) {
        return;
    }
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / dt)));
    const double tau = span / static_cast<double>(steps);
    const Complex k = Complex(0.0, (adjoint ? -1.0 : 1.0) * tau / (2.0 * hbar));
    const Stepper step(m, k);
    for (std::size_t s = 0; s < steps; ++s) {
        step.apply(f);
    }
    check_finite(f);
}

void check_state(const SampledState& s, const UniformGrid& g, const char* which) {
    if (!(s.grid == g) || s.values.size() != g.count) {
        throw WeakError(ErrorCode::InvalidSelection, std::string(which) + " must be sampled on the propagator grid");
    }
    double peak = 0.0;
    for (const Complex& v : s.values) {
        peak = std::max(peak, std::abs(v));
    }
    if (!(peak > 0.0)) {
        throw WeakError(ErrorCode::InvalidSelection, std::string(which) + " is identically zero");
    }
    if (std::abs(s.values.front()) > 1e-8 * peak || std::abs(s.values.back()) > 1e-8 * peak) {
        throw WeakError(ErrorCode::InvalidSelection, std::string(which) + " does not vanish at the grid ends");
    }
}

}  // namespace

UniformGrid GridPropagatorConfig::grid() const {
    const auto n = static_cast<std::size_t>(std::floor((x_max - x_min) / dx + 0.5)) + 1;
    return {x_min, dx, n};
}

GridWeakValues twostate_grid_weak_values(const PhysicalParams& params, const SampledState& pre,
                                         const SampledState& post, const std::vector<double>& times,
                                         const GridPropagatorConfig& cfg) {
    if (!(cfg.dx > 0.0) || !(cfg.dt > 0.0) || !(cfg.x_max > cfg.x_min)) {
        throw WeakError(ErrorCode::NonPositiveParam, "grid needs dx > 0, dt > 0 and x_max > x_min");
    }
    const UniformGrid g = cfg.grid();
    if (g.count < 5) {
        throw WeakError(ErrorCode::InvalidSelection, "grid needs at least 5 points");
    }
    check_state(pre, g, "pre-selection");
    check_state(post, g, "post-selection");
    const double T = params.horizon;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0 && times[k] <= T) || (k > 0 && times[k] < times[k - 1])) {
            throw WeakError(ErrorCode::InvalidSelection, "times must be sorted within [0, T]");
        }
    }

    const std::size_t n = g.count;
    const double h = g.step;
    std::vector<double> v(n, 0.0);
    if (cfg.potential) {
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = cfg.potential(g.at(j));
        }
    }
    const bool absorbing = cfg.boundary == GridBoundary::ReflectionFree;
    Tridiagonal hamiltonian{std::vector<Complex>(n), Complex(-params.hbar * params.hbar / (2.0 * params.mass * h * h), 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        double w = 0.0;
        if (absorbing && cfg.absorber_width > 0.0) {
            const double x = g.at(j);
            const double into_right = x - (g.stop() - cfg.absorber_width);
            const double into_left = (g.start + cfg.absorber_width) - x;
            if (into_right > 0.0) {
                w = cfg.absorber_strength * std::pow(into_right / cfg.absorber_width, 2);
            } else if (into_left > 0.0 && !cfg.wall_at_start) {
                w = cfg.absorber_strength * std::pow(into_left / cfg.absorber_width, 2);
            }
        }
        hamiltonian.diag[j] = Complex(params.hbar * params.hbar / (params.mass * h * h) + v[j], -w);
    }
    Tridiagonal adjoint = hamiltonian;
    for (Complex& d : adjoint.diag) {
        d = std::conj(d);
    }

    GridWeakValues out;
    out.series.times = times;
    out.series.position.assign(times.size(), std::nullopt);
    out.series.momentum.assign(times.size(), std::nullopt);
    if (cfg.potential) {
        out.series.force.assign(times.size(), std::nullopt);
    }
    if (times.empty()) {
        return out;
    }

    std::vector<Field> forward(times.size());
    Field f = pre.values;
    f.front() = 0.0;
    f.back() = 0.0;
    const double f0 = norm2(f);
    double now = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        advance(f, hamiltonian, times[k] - now, cfg.dt, params.hbar, false);
        now = times[k];
        forward[k] = f;
    }
    out.forward_norm_drift = std::abs(norm2(f) - f0) / f0;

    Field b = post.values;
    b.front() = 0.0;
    b.back() = 0.0;
    const double b0 = norm2(b);
    now = T;
    for (std::size_t kk = times.size(); kk-- > 0;) {
        advance(b, adjoint, now - times[kk], cfg.dt, params.hbar, true);
        now = times[kk];
        const Field& fk = forward[kk];
        Complex overlap{};
        Complex sx{};
        Complex sp{};
        Complex sf{};
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const Complex bc = std::conj(b[j]);
            overlap += bc * fk[j];
            sx += bc * g.at(j) * fk[j];
            sp += bc * (fk[j + 1] - fk[j - 1]);
            if (cfg.potential) {
                sf += bc * ((v[j + 1] - v[j]) * fk[j + 1] + (v[j] - v[j - 1]) * fk[j - 1]);
            }
        }
        if (std::abs(overlap) < 1e-10 * std::sqrt(norm2(b) * norm2(fk))) {
            throw WeakError(ErrorCode::OverlapCollapse, "forward and backward states are orthogonal at t = " + std::to_string(times[kk]));
        }
        out.series.position[kk] = sx / overlap;
        out.series.momentum[kk] = Complex(0.0, -params.hbar / (2.0 * h)) * sp / overlap;
        if (cfg.potential) {
            out.series.force[kk] = sf / (2.0 * h * overlap);
        }
    }
    out.backward_norm_drift = std::abs(norm2(b) - b0) / b0;

    if (!absorbing && (out.forward_norm_drift > 1e-10 || out.backward_norm_drift > 1e-10)) {
        throw WeakError(ErrorCode::UnstableStep, "norm drift above 1e-10");
    }
    return out;
}

}  // namespace weaktraj
