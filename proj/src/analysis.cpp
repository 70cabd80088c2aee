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


#include "weaktraj/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "weaktraj/trajectories.hpp"
#include "weaktraj/weights.hpp"

namespace weaktraj {
namespace {

struct Slope {
    double value;
    bool zero;  // indistinguishable from 0 at working precision
};

Slope slope_at(const ValidatedScenario& s, double x_f) {
    const ValidatedScenario v = with_final_position(s, x_f);
    const Complex a = transition_amplitude(v);
    const Complex da = transition_amplitude_derivative(v);
    const double d = 2.0 * (std::conj(a) * da).real();
    return {d, std::abs(d) <= 1e-12 * 2.0 * std::abs(a) * std::abs(da)};
}

// Sign-change bisection of dP/dx_f on [lo, hi].
double bisect_slope(const ValidatedScenario& s, double lo, double hi, double d_lo) {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const Slope m = slope_at(s, mid);
        if (m.zero) {
            return mid;
        }
        if ((m.value > 0.0) == (d_lo > 0.0)) {
            lo = mid;
            d_lo = m.value;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Root {
    double x;
    int left_sign;   // sign of dP just left of the root, 0 if unknown
    int right_sign;
};

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Roots of dP/dx_f over the points `xs`; the last point only closes a bracket
// when `include_last` is set.
std::vector<Root> slope_roots(const ValidatedScenario& s, const std::vector<double>& xs, bool include_last,
                              bool* all_zero) {
    std::vector<Slope> d(xs.size());
    bool flat = true;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        d[k] = slope_at(s, xs[k]);
        flat = flat && d[k].zero;
    }
    if (all_zero != nullptr) {
        *all_zero = flat && !xs.empty();
    }
    std::vector<Root> roots;
    if (flat) {
        return roots;
    }
    const std::size_t usable = include_last ? xs.size() : xs.size() - 1;
    auto neighbour_sign = [&](std::size_t k, int dir) {
        for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k) + dir; j >= 0 && j < static_cast<std::ptrdiff_t>(xs.size()); j += dir) {
            if (!d[static_cast<std::size_t>(j)].zero) {
                return sign_of(d[static_cast<std::size_t>(j)].value);
            }
        }
        return 0;
    };
    for (std::size_t k = 0; k < usable; ++k) {
        if (d[k].zero) {
            roots.push_back({xs[k], neighbour_sign(k, -1), neighbour_sign(k, +1)});
            continue;
        }
        if (k + 1 < xs.size() && !d[k + 1].zero && sign_of(d[k].value) != sign_of(d[k + 1].value)) {
            const double x = bisect_slope(s, xs[k], xs[k + 1], d[k].value);
            if (!include_last && k + 1 == xs.size() - 1 && x >= xs.back() - 1e-10) {
                continue;
            }
            roots.push_back({x, sign_of(d[k].value), sign_of(d[k + 1].value)});
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
    std::vector<Root> unique;
    for (const Root& r : roots) {
        if (unique.empty() || r.x - unique.back().x > 1e-9) {
            unique.push_back(r);
        }
    }
    return unique;
}

std::optional<double> im_xw_at(const ValidatedScenario& v, double t) {
    const WeakValueSeries ws = weak_trajectory({v, {t}, Observable{}});
    if (ws.diverged(0)) {
        return std::nullopt;
    }
    return ws.position[0]->imag();
}

}  // namespace

double transition_probability(const ValidatedScenario& s, double x_f) {
    return std::norm(transition_amplitude(with_final_position(s, x_f)));
}

double probability_derivative(const ValidatedScenario& s, double x_f) { return slope_at(s, x_f).value; }

InterferenceCurve interference_curve(const ValidatedScenario& s, const std::vector<double>& xf) {
    if (!std::is_sorted(xf.begin(), xf.end())) {
        throw WeakError(ErrorCode::InvalidSelection, "screen grid must be sorted");
    }
    InterferenceCurve out;
    out.xf = xf;
    out.probability.reserve(xf.size());
    for (double x : xf) {
        out.probability.push_back(transition_probability(s, x));
    }
    if (xf.size() < 2) {
        return out;
    }
    for (const Root& r : slope_roots(s, xf, true, nullptr)) {
        Extremum::Kind kind;
        if (r.left_sign > 0 || (r.left_sign == 0 && r.right_sign < 0)) {
            if (r.right_sign > 0) {
                continue;
            }
            kind = Extremum::Kind::Max;
        } else if (r.left_sign < 0 || r.right_sign > 0) {
            if (r.right_sign < 0) {
                continue;
            }
            kind = Extremum::Kind::Min;
        } else {
            continue;
        }
        out.extrema.push_back({r.x, kind, transition_probability(s, r.x)});
    }
    return out;
}

std::vector<double> ScreenRange::points() const {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(count);
    }
    return out;
}

RealityReport reality_points(const ValidatedScenario& s, const ScreenRange& range) {
    if (s.half_line()) {
        throw WeakError(ErrorCode::GeometryViolation, "the reality condition is derived for the free full line");
    }
    if (range.count < 2 || !(range.stop > range.start)) {
        throw WeakError(ErrorCode::InvalidSelection, "screen range needs >= 2 points and start < stop");
    }
    std::vector<double> xs = range.points();
    xs.push_back(range.stop);

    RealityReport out;
    const std::vector<Root> roots = slope_roots(s, xs, false, &out.everywhere_real);
    const std::vector<double> times = uniform_times(s.params().horizon, 32);
    for (const Root& r : roots) {
        const ValidatedScenario v = with_final_position(s, r.x);
        if (is_destructive(v, transition_amplitude(v))) {
            out.excluded_zeros.push_back(r.x);
            continue;
        }
        const WeakValueSeries ws = weak_trajectory({v, times, Observable{}});
        double worst = 0.0;
        for (const auto& x : ws.position) {
            worst = std::max(worst, std::abs(x->imag()));
        }
        out.real_points.push_back({r.x, worst});
    }
    return out;
}

std::vector<ImwSample> imw_vs_interference(const ValidatedScenario& s, const std::vector<double>& xf, double t) {
    if (s.half_line()) {
        throw WeakError(ErrorCode::GeometryViolation, "the log-derivative identity is derived for the free full line");
    }
    const PhysicalParams& p = s.params();
    const double span = xf.size() > 1 ? xf.back() - xf.front() : 1.0;
    const double h = 1e-5 * (span > 0.0 ? span : 1.0);
    const bool slits = std::holds_alternative<DiscreteSlits>(s.pre());

    std::vector<ImwSample> out;
    out.reserve(xf.size());
    for (double x : xf) {
        ImwSample row{x, std::nullopt, std::nullopt, std::nullopt};
        const ValidatedScenario v = with_final_position(s, x);
        const Complex a = transition_amplitude(v);
        if (is_destructive(v, a)) {
            out.push_back(row);
            continue;
        }
        row.im_xw = im_xw_at(v, t);
        if (slits) {
            row.im_mean = discrete_weights(v).mean(std::get<DiscreteSlits>(v.pre())).imag();
        } else {
            const Complex mean = x + Complex(0.0, p.hbar * p.horizon / p.mass) * transition_amplitude_derivative(v) / a;
            row.im_mean = mean.imag();
        }
        double lnp[4];
        bool ok = true;
        const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
        for (int j = 0; j < 4 && ok; ++j) {
            const ValidatedScenario vj = with_final_position(s, x + offsets[j] * h);
            const Complex aj = transition_amplitude(vj);
            ok = !is_destructive(vj, aj);
            lnp[j] = ok ? std::log(std::norm(aj)) : 0.0;
        }
        if (ok) {
            const double d = (lnp[0] - 8.0 * lnp[1] + 8.0 * lnp[2] - lnp[3]) / (12.0 * h);
            row.log_slope = p.hbar * p.horizon / (2.0 * p.mass) * d;
        }
        out.push_back(row);
    }
    return out;
}

std::vector<double> locate_poles(const ValidatedScenario& s, const std::vector<double>& xf, double t) {
    std::vector<std::optional<double>> im(xf.size());
    for (std::size_t k = 0; k < xf.size(); ++k) {
        im[k] = im_xw_at(with_final_position(s, xf[k]), t);
    }
    std::vector<double> poles;
    for (std::size_t k = 0; k < xf.size(); ++k) {
        if (!im[k]) {
            poles.push_back(xf[k]);
            continue;
        }
        if (k + 1 >= xf.size() || !im[k + 1] || sign_of(*im[k]) == sign_of(*im[k + 1]) || *im[k] == 0.0 ||
            *im[k + 1] == 0.0) {
            continue;
        }
        double lo = xf[k];
        double hi = xf[k + 1];
        double v_lo = *im[k];
        double v_hi = *im[k + 1];
        std::optional<double> hit;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const std::optional<double> v = im_xw_at(with_final_position(s, mid), t);
            if (!v) {
                hit = mid;
                break;
            }
            if (sign_of(*v) == sign_of(v_lo)) {
                lo = mid;
                v_lo = *v;
            } else {
                hi = mid;
                v_hi = *v;
            }
        }
        const double grid_scale = std::max(std::abs(*im[k]), std::abs(*im[k + 1]));
        if (hit) {
            poles.push_back(*hit);
        } else if (std::min(std::abs(v_lo), std::abs(v_hi)) > 1e3 * grid_scale) {
            poles.push_back(0.5 * (lo + hi));
        }
    }
    return poles;
}

double ehrenfest_residual(const WeakValueSeries& series, const PhysicalParams& params, const EhrenfestOptions& options) {
    const std::size_t n = series.size();
    const bool has_force = !series.force.empty();
    double worst = 0.0;
    bool any = false;
    auto ok = [&](std::size_t k) {
        return series.position[k] && series.momentum[k] && (!has_force || series.force[k]);
    };
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!ok(k - 1) || !ok(k) || !ok(k + 1)) {
            continue;
        }
        const double h1 = series.times[k] - series.times[k - 1];
        const double h2 = series.times[k + 1] - series.times[k];
        if (!(h1 > 0.0) || !(h2 > 0.0)) {
            continue;
        }
        const double c0 = -h2 / (h1 * (h1 + h2));
        const double c1 = (h2 - h1) / (h1 * h2);
        const double c2 = h1 / (h2 * (h1 + h2));
        auto diff = [&](const std::vector<std::optional<Complex>>& f) {
            return c0 * *f[k - 1] + c1 * *f[k] + c2 * *f[k + 1];
        };
        worst = std::max(worst, std::abs(diff(series.position) - *series.momentum[k] / params.mass));
        if (options.momentum_equation) {
            const Complex force = has_force ? *series.force[k] : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(diff(series.momentum) + force));
        }
        any = true;
    }
    if (!any) {
        throw WeakError(ErrorCode::TooFewSamples, "need three consecutive non-diverged samples");
    }
    return worst;
}

}  // namespace weaktraj
