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


#include "weaktraj/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weaktraj/kernels.hpp"

namespace weaktraj {
namespace {

constexpr Complex kI{0.0, 1.0};

void divergent(const std::string& what) { throw WeakError(ErrorCode::DivergentAtDestructivePoint, what); }

void check_times(const std::vector<double>& times, double horizon) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0 && times[k] <= horizon)) {
            throw WeakError(ErrorCode::InvalidSelection, "sample times must lie in [0, T]");
        }
        if (k > 0 && times[k] < times[k - 1]) {
            throw WeakError(ErrorCode::InvalidSelection, "sample times must be sorted");
        }
    }
}

WeakValueSeries empty_series(const std::vector<double>& times) {
    WeakValueSeries out;
    out.times = times;
    out.position.assign(times.size(), std::nullopt);
    out.momentum.assign(times.size(), std::nullopt);
    return out;
}

// One point-like contribution to the pre-selection, already multiplied by the
// conjugate spin tag (slits) or the quadrature weight (sampled states).
struct Source {
    double x;
    Complex coeff;
};

std::vector<Source> sources(const ValidatedScenario& s) {
    std::vector<Source> out;
    const auto* tagged = std::get_if<SpinTagged>(&s.post());
    if (const auto* d = std::get_if<DiscreteSlits>(&s.pre())) {
        for (std::size_t n = 0; n < d->slits.size(); ++n) {
            Complex c = d->slits[n].amplitude;
            if (tagged != nullptr) {
                c *= std::conj(tagged->tags[n]);
            }
            out.push_back({d->slits[n].position, c});
        }
    } else if (const auto* st = std::get_if<SampledState>(&s.pre())) {
        for (std::size_t k = 0; k < st->grid.count; ++k) {
            const double x = st->grid.at(k);
            if (s.half_line() && x <= 0.0) {
                out.push_back({x, 0.0});
                continue;
            }
            const double w = (k == 0 || k + 1 == st->grid.count) ? 0.5 * st->grid.step : st->grid.step;
            out.push_back({x, w * st->values[k]});
        }
    }
    return out;
}

// Series for point sources and a position-type post-selection.
WeakValueSeries source_series(const ValidatedScenario& s, const std::vector<double>& times, const Observable& obs) {
    const PhysicalParams& p = s.params();
    const double x_f = *s.final_position();
    const std::vector<Source> src = sources(s);
    WeakValueSeries out = empty_series(times);

    std::vector<Complex> amp(src.size());
    Complex total{};
    for (std::size_t n = 0; n < src.size(); ++n) {
        if (src[n].coeff == Complex(0.0, 0.0)) {
            continue;
        }
        const KernelKind kind = s.half_line() ? KernelKind::Dirichlet : KernelKind::Free;
        amp[n] = src[n].coeff * kernel(kind, x_f, src[n].x, p.horizon, p).value;
        total += amp[n];
    }
    if (is_destructive(s, total)) {
        return out;
    }

    std::size_t lo = 0;
    std::size_t hi = src.size();
    if (obs.kind == Observable::Kind::SpinTaggedPosition) {
        if (obs.slit >= src.size() || !std::holds_alternative<DiscreteSlits>(s.pre())) {
            throw WeakError(ErrorCode::InvalidSelection, "slit index out of range");
        }
        lo = obs.slit;
        hi = obs.slit + 1;
    }

    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        Complex num_x{};
        Complex num_p{};
        for (std::size_t n = lo; n < hi; ++n) {
            if (src[n].coeff == Complex(0.0, 0.0)) {
                continue;
            }
            if (s.half_line()) {
                num_x += src[n].coeff * detail::lloyd_position_numerator(src[n].x, x_f, p, t);
                num_p += src[n].coeff * detail::lloyd_momentum_numerator(src[n].x, x_f, p, t);
            } else {
                const Complex w = amp[n] / total;
                num_x += w * classical_trajectory(src[n].x, x_f, p.horizon, t);
                num_p += w * (p.mass * (x_f - src[n].x) / p.horizon);
            }
        }
        if (s.half_line()) {
            num_x /= total;
            num_p /= total;
        }
        out.position[k] = num_x;
        out.momentum[k] = num_p;
    }
    if (!s.half_line() && obs.kind != Observable::Kind::SpinTaggedPosition) {
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (times[k] == p.horizon) {
                out.position[k] = Complex(x_f, 0.0);
            }
        }
    }
    return out;
}

// <x|U(T)|phi> and its derivative for a validated pre and a free screen point.
std::pair<Complex, Complex> amplitude_at(const ValidatedScenario& s, double x) {
    const Scenario probe{s.params(), s.geometry(), s.pre(), PositionEigenstate{x}};
    const ValidatedScenario v = validate_scenario(probe);
    return {transition_amplitude(v), transition_amplitude_derivative(v)};
}

WeakValueSeries sampled_post_series(const ValidatedScenario& s, const std::vector<double>& times) {
    if (s.half_line()) {
        throw WeakError(ErrorCode::Unsupported, "sampled post-selections on the half line are handled by the grid oracle");
    }
    const PhysicalParams& p = s.params();
    const auto& post = std::get<SampledState>(s.post());
    Complex den{};
    Complex sum_xa{};
    Complex sum_da{};
    for (std::size_t k = 0; k < post.grid.count; ++k) {
        if (post.values[k] == Complex(0.0, 0.0)) {
            continue;
        }
        const double x = post.grid.at(k);
        const double h = (k == 0 || k + 1 == post.grid.count) ? 0.5 * post.grid.step : post.grid.step;
        const auto [a, da] = amplitude_at(s, x);
        const Complex wgt = h * std::conj(post.values[k]);
        den += wgt * a;
        sum_xa += wgt * x * a;
        sum_da += wgt * da;
    }
    WeakValueSeries out = empty_series(times);
    if (is_destructive(s, den)) {
        return out;
    }
    const Complex pw = -kI * p.hbar * sum_da / den;
    for (std::size_t k = 0; k < times.size(); ++k) {
        out.position[k] = (sum_xa + kI * p.hbar * (p.horizon - times[k]) / p.mass * sum_da) / den;
        out.momentum[k] = pw;
    }
    return out;
}

}  // namespace

double classical_trajectory(double x_i, double x_f, double horizon, double t) {
    return ((x_f - x_i) * t + x_i * horizon) / horizon;
}

WeakValueSeries weak_trajectory(const TrajectoryRequest& req) {
    const ValidatedScenario& s = req.scenario;
    const PhysicalParams& p = s.params();
    check_times(req.times, p.horizon);

    if (std::holds_alternative<SampledState>(s.post())) {
        if (req.observable.kind == Observable::Kind::SpinTaggedPosition) {
            throw WeakError(ErrorCode::InvalidSelection, "spin-tagged observable needs a spin-tagged post-selection");
        }
        return sampled_post_series(s, req.times);
    }
    if (req.observable.kind == Observable::Kind::SpinTaggedPosition && !std::holds_alternative<SpinTagged>(s.post())) {
        throw WeakError(ErrorCode::InvalidSelection, "spin-tagged observable needs a spin-tagged post-selection");
    }

    const double x_f = *s.final_position();
    if (const auto* m = std::get_if<MomentumEigenstate>(&s.pre())) {
        WeakValueSeries out = empty_series(req.times);
        for (std::size_t k = 0; k < req.times.size(); ++k) {
            out.position[k] = momentum_eigenstate_trajectory(m->momentum, x_f, p, req.times[k]);
            out.momentum[k] = m->momentum;
        }
        return out;
    }
    if (const auto* g = std::get_if<ComplexGaussian>(&s.pre())) {
        WeakValueSeries out = empty_series(req.times);
        const double pw = gaussian_momentum(g->alpha, g->beta, x_f, p);
        for (std::size_t k = 0; k < req.times.size(); ++k) {
            out.position[k] = gaussian_trajectory(g->alpha, g->beta, x_f, p, req.times[k]);
            out.momentum[k] = pw;
        }
        return out;
    }
    return source_series(s, req.times, req.observable);
}

WeakValueSeries discrete_weak_trajectory(const ValidatedScenario& s, const std::vector<double>& times) {
    if (!std::holds_alternative<DiscreteSlits>(s.pre()) || !std::holds_alternative<PositionEigenstate>(s.post())) {
        throw WeakError(ErrorCode::InvalidSelection, "discrete trajectory needs slits and a position post-selection");
    }
    if (s.half_line()) {
        throw WeakError(ErrorCode::GeometryViolation, "discrete trajectory is the free full-line result");
    }
    return weak_trajectory({s, times, Observable{}});
}

Complex double_slit_closed_form(double x_i, double x_f, const PhysicalParams& params, double t) {
    const double theta = params.mass * x_f * x_i / (params.hbar * params.horizon);
    const double c = std::cos(theta);
    if (std::abs(c) < kDestructiveThreshold) {
        divergent("double slit amplitude vanishes at this screen point");
    }
    const double frac = t / params.horizon;
    return {x_f * frac, -x_i * std::sin(theta) / c * (1.0 - frac)};
}

Complex triple_slit_g(double x_i, double x_f, const PhysicalParams& params) {
    const double theta = params.mass * x_f * x_i / (params.hbar * params.horizon);
    const double phi = params.mass * x_i * x_i / (2.0 * params.hbar * params.horizon);
    const Complex rot = std::polar(1.0, phi);
    const Complex den = 1.0 + 2.0 * rot * std::cos(theta);
    if (std::abs(den) < 3.0 * kDestructiveThreshold) {
        divergent("triple slit amplitude vanishes at this screen point");
    }
    return -2.0 * kI * x_i * rot * std::sin(theta) / den;
}

Complex momentum_weak_value(const ValidatedScenario& s) {
    const PhysicalParams& p = s.params();
    if (std::holds_alternative<SampledState>(s.post())) {
        const WeakValueSeries ws = sampled_post_series(s, {p.horizon});
        if (ws.diverged(0)) {
            divergent("overlap vanishes");
        }
        return *ws.momentum[0];
    }
    const Complex a = transition_amplitude(s);
    if (is_destructive(s, a)) {
        divergent("amplitude vanishes at this screen point");
    }
    return -kI * p.hbar * transition_amplitude_derivative(s) / a;
}

double momentum_eigenstate_trajectory(double p, double x_f, const PhysicalParams& params, double t) {
    return x_f + p / params.mass * (t - params.horizon);
}

namespace {

void check_focus(double alpha, const PhysicalParams& params) {
    if (std::abs(1.0 + 2.0 * params.hbar * params.horizon * alpha / params.mass) < 1e-14) {
        throw WeakError(ErrorCode::SingularFocus, "1 + 2 hbar T alpha / m vanishes");
    }
}

}  // namespace

double gaussian_trajectory(double alpha, double beta, double x_f, const PhysicalParams& params, double t) {
    check_focus(alpha, params);
    const double T = params.horizon;
    const double shift = (x_f * alpha + 0.5 * beta) / (alpha + params.mass / (2.0 * params.hbar * T));
    return x_f - (1.0 - t / T) * shift;
}

double gaussian_momentum(double alpha, double beta, double x_f, const PhysicalParams& params) {
    check_focus(alpha, params);
    return params.mass * (x_f * alpha + 0.5 * beta) / (params.horizon * alpha + params.mass / (2.0 * params.hbar));
}

namespace {

struct LloydParts {
    Complex carrier;  // K_D(x_f, x_i; T) / (2 sin theta)
    double theta;
    double x0, x0p;
    Complex e1, e2;
};

// erfi(w x0) and erfi(w x0') with w = e^{i pi/4} sqrt(mT / (2 hbar t (T - t)));
// at the endpoints w is infinite and erfi tends to +-i along that ray.
LloydParts lloyd_parts(double x_i, double x_f, const PhysicalParams& params, double t) {
    if (!(x_i > 0.0) || !(x_f > 0.0)) {
        throw WeakError(ErrorCode::GeometryViolation, "Lloyd selections must lie at x > 0");
    }
    const double T = params.horizon;
    if (!(t >= 0.0 && t <= T)) {
        throw WeakError(ErrorCode::InvalidSelection, "time outside [0, T]");
    }
    LloydParts out{};
    out.theta = params.mass * x_f * x_i / (params.hbar * T);
    const double mean_phase = params.mass * (x_f * x_f + x_i * x_i) / (2.0 * params.hbar * T);
    out.carrier = params.kernel_prefactor() * Complex(0.70710678118654752440, -0.70710678118654752440) *
                  std::polar(1.0, mean_phase) * (-kI);
    out.x0 = x_i + (x_f - x_i) * t / T;
    out.x0p = x_i - (x_f + x_i) * t / T;
    auto limit = [](double x) { return x > 0.0 ? kI : (x < 0.0 ? -kI : Complex(0.0, 0.0)); };
    if (t == 0.0 || t == T) {
        out.x0p = t == 0.0 ? x_i : -x_f;
        out.x0 = t == 0.0 ? x_i : x_f;
        out.e1 = limit(out.x0);
        out.e2 = limit(out.x0p);
        return out;
    }
    const Complex w = Complex(0.70710678118654752440, 0.70710678118654752440) *
                      std::sqrt(params.mass * T / (2.0 * params.hbar * t * (T - t)));
    out.e1 = erfi(w * out.x0);
    out.e2 = erfi(w * out.x0p);
    return out;
}

}  // namespace

namespace detail {

Complex lloyd_position_numerator(double x_i, double x_f, const PhysicalParams& params, double t) {
    const LloydParts q = lloyd_parts(x_i, x_f, params, t);
    return q.carrier * (q.x0 * q.e1 * std::polar(1.0, -q.theta) - q.x0p * q.e2 * std::polar(1.0, q.theta));
}

// The erfi derivative terms cancel identically, leaving only dx0/dt and dx0'/dt.
Complex lloyd_momentum_numerator(double x_i, double x_f, const PhysicalParams& params, double t) {
    const LloydParts q = lloyd_parts(x_i, x_f, params, t);
    const double T = params.horizon;
    return q.carrier * params.mass / T *
           ((x_f - x_i) * q.e1 * std::polar(1.0, -q.theta) + (x_f + x_i) * q.e2 * std::polar(1.0, q.theta));
}

}  // namespace detail

namespace {

double lloyd_sin(double x_i, double x_f, const PhysicalParams& params) {
    const double s = std::sin(params.mass * x_f * x_i / (params.hbar * params.horizon));
    if (std::abs(2.0 * s) < kDestructiveThreshold) {
        divergent("Lloyd amplitude vanishes at this screen point");
    }
    return s;
}

}  // namespace

Complex lloyd_weak_trajectory(double x_i, double x_f, const PhysicalParams& params, double t) {
    const double s = lloyd_sin(x_i, x_f, params);
    if (t == 0.0) {
        return x_i;
    }
    if (t == params.horizon) {
        return x_f;
    }
    const LloydParts q = lloyd_parts(x_i, x_f, params, t);
    return (q.x0 * q.e1 * std::polar(1.0, -q.theta) - q.x0p * q.e2 * std::polar(1.0, q.theta)) / (2.0 * s);
}

Complex lloyd_weak_momentum(double x_i, double x_f, const PhysicalParams& params, double t) {
    const double s = lloyd_sin(x_i, x_f, params);
    const LloydParts q = lloyd_parts(x_i, x_f, params, t);
    return params.mass / params.horizon *
           ((x_f - x_i) * q.e1 * std::polar(1.0, -q.theta) + (x_f + x_i) * q.e2 * std::polar(1.0, q.theta)) / (2.0 * s);
}

double lloyd_im_pw(double x_i, double x_f, const PhysicalParams& params) {
    const double s = lloyd_sin(x_i, x_f, params);
    const double theta = params.mass * x_f * x_i / (params.hbar * params.horizon);
    return -(params.mass * x_i / params.horizon) * std::cos(theta) / s;
}

double lloyd_bounce_path(double x_i, double x_f, double horizon, double t) {
    return std::abs(classical_trajectory(-x_i, x_f, horizon, t));
}

double lloyd_average_deviation(double x_i, double x_f, const PhysicalParams& params, std::size_t count) {
    double worst = 0.0;
    for (std::size_t k = 1; k <= count; ++k) {
        const double t = params.horizon * static_cast<double>(k) / static_cast<double>(count + 1);
        const double avg = 0.5 * (classical_trajectory(x_i, x_f, params.horizon, t) + lloyd_bounce_path(x_i, x_f, params.horizon, t));
        worst = std::max(worst, std::abs(lloyd_weak_trajectory(x_i, x_f, params, t).real() - avg));
    }
    return worst;
}

}  // namespace weaktraj
