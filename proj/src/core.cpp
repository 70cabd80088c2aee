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


#include "weaktraj/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "weaktraj/kernels.hpp"

namespace weaktraj {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateSlit: return "DuplicateSlit";
        case ErrorCode::NonPositiveParam: return "NonPositiveParam";
        case ErrorCode::GeometryViolation: return "GeometryViolation";
        case ErrorCode::SpinLengthMismatch: return "SpinLengthMismatch";
        case ErrorCode::InvalidSelection: return "InvalidSelection";
        case ErrorCode::NonPositiveTime: return "NonPositiveTime";
        case ErrorCode::DivergentAtDestructivePoint: return "DivergentAtDestructivePoint";
        case ErrorCode::SingularFocus: return "SingularFocus";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::ZeroWeight: return "ZeroWeight";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::ForbiddenProcess: return "ForbiddenProcess";
        case ErrorCode::NonConvergent: return "NonConvergent";
        case ErrorCode::OverlapCollapse: return "OverlapCollapse";
        case ErrorCode::UnstableStep: return "UnstableStep";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

double PhysicalParams::kernel_prefactor() const { return std::sqrt(mass / (2.0 * kPi * hbar * horizon)); }

std::vector<double> UniformGrid::points() const {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = at(k);
    }
    return out;
}

UniformGrid UniformGrid::spanning(double first, double last, std::size_t count) {
    if (count < 2) {
        return {first, 1.0, count};
    }
    return {first, (last - first) / static_cast<double>(count - 1), count};
}

std::vector<double> uniform_times(double horizon, std::size_t count) {
    if (count < 2) {
        return {horizon};
    }
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k) {
        t[k] = horizon * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    t.back() = horizon;
    return t;
}

std::size_t WeakValueSeries::diverged_count() const {
    return static_cast<std::size_t>(std::count_if(position.begin(), position.end(), [](const auto& v) { return !v; }));
}

namespace {

void fail(ErrorCode code, const std::string& what) { throw WeakError(code, what); }

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void check_params(const PhysicalParams& p) {
    for (double v : {p.mass, p.hbar, p.horizon}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            fail(ErrorCode::NonPositiveParam, "m, hbar and T must be finite and positive");
        }
    }
}

void check_sampled(const SampledState& s, bool half_line, const char* which) {
    const std::string name(which);
    if (s.grid.count < 2 || !(s.grid.step > 0.0) || !std::isfinite(s.grid.start) || !std::isfinite(s.grid.step)) {
        fail(ErrorCode::InvalidSelection, name + " grid needs >= 2 points and a positive step");
    }
    if (s.values.size() != s.grid.count) {
        fail(ErrorCode::InvalidSelection, name + " values do not match the grid size");
    }
    double norm = 0.0;
    for (const Complex& v : s.values) {
        if (!finite(v)) {
            fail(ErrorCode::InvalidSelection, name + " values must be finite");
        }
        norm += std::norm(v);
    }
    if (!(norm > 0.0)) {
        fail(ErrorCode::InvalidSelection, name + " state is identically zero");
    }
    if (half_line && s.grid.start < 0.0) {
        fail(ErrorCode::GeometryViolation, name + " grid extends past the wall at x = 0");
    }
}

void check_position(double x, bool half_line, const char* what) {
    if (!std::isfinite(x)) {
        fail(ErrorCode::InvalidSelection, std::string(what) + " must be finite");
    }
    if (half_line && !(x > 0.0)) {
        fail(ErrorCode::GeometryViolation, std::string(what) + " must lie at x > 0 on the half line");
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ValidatedScenario validate_scenario(Scenario s) {
    check_params(s.params);
    const bool half = s.geometry == Geometry::HalfLineDirichlet;

    std::visit(overloaded{
                   [&](const DiscreteSlits& d) {
                       if (d.slits.empty()) {
                           fail(ErrorCode::InvalidSelection, "at least one slit is required");
                       }
                       std::set<double> seen;
                       bool any_nonzero = false;
                       for (const Slit& slit : d.slits) {
                           check_position(slit.position, half, "slit position");
                           if (!finite(slit.amplitude)) {
                               fail(ErrorCode::InvalidSelection, "slit amplitudes must be finite");
                           }
                           if (!seen.insert(slit.position).second) {
                               fail(ErrorCode::DuplicateSlit, "two slits share x = " + std::to_string(slit.position));
                           }
                           any_nonzero = any_nonzero || slit.amplitude != Complex(0.0, 0.0);
                       }
                       if (!any_nonzero) {
                           fail(ErrorCode::InvalidSelection, "all slit amplitudes are zero");
                       }
                   },
                   [&](const MomentumEigenstate& p) {
                       if (!std::isfinite(p.momentum)) {
                           fail(ErrorCode::InvalidSelection, "momentum must be finite");
                       }
                       if (half) {
                           fail(ErrorCode::GeometryViolation, "momentum eigenstates are full-line states");
                       }
                   },
                   [&](const ComplexGaussian& g) {
                       if (!std::isfinite(g.alpha) || !std::isfinite(g.beta)) {
                           fail(ErrorCode::InvalidSelection, "Gaussian parameters must be finite");
                       }
                       if (!(g.norm > 0.0)) {
                           fail(ErrorCode::NonPositiveParam, "Gaussian normalization k must be positive");
                       }
                       if (half) {
                           fail(ErrorCode::GeometryViolation, "complex Gaussians are full-line states");
                       }
                   },
                   [&](const SampledState& st) { check_sampled(st, half, "pre-selection"); },
               },
               s.pre);

    std::visit(overloaded{
                   [&](const PositionEigenstate& p) { check_position(p.position, half, "x_f"); },
                   [&](const SpinTagged& st) {
                       check_position(st.position, half, "x_f");
                       const auto* slits = std::get_if<DiscreteSlits>(&s.pre);
                       if (slits == nullptr) {
                           fail(ErrorCode::InvalidSelection, "spin-tagged post-selection needs a slit pre-selection");
                       }
                       if (st.tags.size() != slits->slits.size()) {
                           fail(ErrorCode::SpinLengthMismatch, "need one spin tag per slit");
                       }
                       if (std::all_of(st.tags.begin(), st.tags.end(), [](Complex e) { return e == Complex(0.0, 0.0); })) {
                           fail(ErrorCode::InvalidSelection, "all spin tags are zero");
                       }
                       for (const Complex& e : st.tags) {
                           if (!finite(e)) {
                               fail(ErrorCode::InvalidSelection, "spin tags must be finite");
                           }
                       }
                   },
                   [&](const SampledState& st) { check_sampled(st, half, "post-selection"); },
               },
               s.post);

    return ValidatedScenario(std::move(s));
}

std::optional<double> ValidatedScenario::final_position() const {
    if (const auto* p = std::get_if<PositionEigenstate>(&scenario_.post)) {
        return p->position;
    }
    if (const auto* st = std::get_if<SpinTagged>(&scenario_.post)) {
        return st->position;
    }
    return std::nullopt;
}

ValidatedScenario with_final_position(const ValidatedScenario& s, double x_f) {
    Scenario copy = s.get();
    if (auto* p = std::get_if<PositionEigenstate>(&copy.post)) {
        p->position = x_f;
    } else if (auto* st = std::get_if<SpinTagged>(&copy.post)) {
        st->position = x_f;
    } else {
        fail(ErrorCode::Unsupported, "screen scans need a position-type post-selection");
    }
    return validate_scenario(std::move(copy));
}

namespace {

KernelKind kernel_kind(const ValidatedScenario& s) {
    return s.half_line() ? KernelKind::Dirichlet : KernelKind::Free;
}

Complex kernel_value(const ValidatedScenario& s, double x_f, double x) {
    return kernel(kernel_kind(s), x_f, x, s.params().horizon, s.params()).value;
}

Complex kernel_slope(const ValidatedScenario& s, double x_f, double x) {
    const PhysicalParams& p = s.params();
    return s.half_line() ? dirichlet_kernel_dxb(x_f, x, p.horizon, p) : free_kernel_dxb(x_f, x, p.horizon, p);
}

double trapezoid_weight(const UniformGrid& g, std::size_t k) {
    return (k == 0 || k + 1 == g.count) ? 0.5 * g.step : g.step;
}

// Kernel argument on a sampled half-line grid; the node on the wall contributes zero.
bool on_wall(const ValidatedScenario& s, double x) { return s.half_line() && x <= 0.0; }

Complex gaussian_focus(const ComplexGaussian& g, const PhysicalParams& p) {
    const double d = 1.0 + 2.0 * p.hbar * p.horizon * g.alpha / p.mass;
    if (std::abs(d) < 1e-14) {
        fail(ErrorCode::SingularFocus, "1 + 2 hbar T alpha / m vanishes");
    }
    return {d, 0.0};
}

struct AmplitudePair {
    Complex value;
    Complex slope;
};

// <x_f|U(T)|phi> and its x_f-derivative for a given pre-selection, optionally
// weighting slit n by conj(tag_n).
AmplitudePair position_amplitude(const ValidatedScenario& s, double x_f, const std::vector<Complex>* tags) {
    const PhysicalParams& p = s.params();
    return std::visit(
        overloaded{
            [&](const DiscreteSlits& d) {
                AmplitudePair a{};
                for (std::size_t n = 0; n < d.slits.size(); ++n) {
                    Complex c = d.slits[n].amplitude;
                    if (tags != nullptr) {
                        c *= std::conj((*tags)[n]);
                    }
                    if (c == Complex(0.0, 0.0)) {
                        continue;
                    }
                    a.value += c * kernel_value(s, x_f, d.slits[n].position);
                    a.slope += c * kernel_slope(s, x_f, d.slits[n].position);
                }
                return a;
            },
            [&](const MomentumEigenstate& m) {
                const double phase = m.momentum * x_f / p.hbar - m.momentum * m.momentum * p.horizon / (2.0 * p.mass * p.hbar);
                const Complex v = std::polar(1.0 / std::sqrt(2.0 * kPi * p.hbar), phase);
                return AmplitudePair{v, v * Complex(0.0, m.momentum / p.hbar)};
            },
            [&](const ComplexGaussian& g) {
                const Complex d = gaussian_focus(g, p);
                const Complex exponent =
                    Complex(0.0, 1.0) * (g.alpha * x_f * x_f + g.beta * x_f - p.hbar * p.horizon * g.beta * g.beta / (2.0 * p.mass)) / d;
                const Complex v = g.norm * std::exp(exponent) / std::sqrt(d);
                return AmplitudePair{v, v * Complex(0.0, 1.0) * (2.0 * g.alpha * x_f + g.beta) / d};
            },
            [&](const SampledState& st) {
                AmplitudePair a{};
                for (std::size_t k = 0; k < st.grid.count; ++k) {
                    const double x = st.grid.at(k);
                    if (on_wall(s, x) || st.values[k] == Complex(0.0, 0.0)) {
                        continue;
                    }
                    const double w = trapezoid_weight(st.grid, k);
                    a.value += w * st.values[k] * kernel_value(s, x_f, x);
                    a.slope += w * st.values[k] * kernel_slope(s, x_f, x);
                }
                return a;
            },
        },
        s.pre());
}

AmplitudePair post_amplitude(const ValidatedScenario& s) {
    if (const auto* p = std::get_if<PositionEigenstate>(&s.post())) {
        return position_amplitude(s, p->position, nullptr);
    }
    if (const auto* st = std::get_if<SpinTagged>(&s.post())) {
        return position_amplitude(s, st->position, &st->tags);
    }
    fail(ErrorCode::Unsupported, "amplitude derivative needs a position-type post-selection");
    return {};
}

double pre_scale(const ValidatedScenario& s, const std::vector<Complex>* tags) {
    const PhysicalParams& p = s.params();
    return std::visit(overloaded{
                          [&](const DiscreteSlits& d) {
                              double sum = 0.0;
                              for (std::size_t n = 0; n < d.slits.size(); ++n) {
                                  sum += std::abs(d.slits[n].amplitude) * (tags ? std::abs((*tags)[n]) : 1.0);
                              }
                              return p.kernel_prefactor() * sum;
                          },
                          [&](const MomentumEigenstate&) { return 1.0 / std::sqrt(2.0 * kPi * p.hbar); },
                          [&](const ComplexGaussian& g) { return g.norm / std::sqrt(std::abs(gaussian_focus(g, p).real())); },
                          [&](const SampledState& st) {
                              double sum = 0.0;
                              for (std::size_t k = 0; k < st.grid.count; ++k) {
                                  sum += trapezoid_weight(st.grid, k) * std::abs(st.values[k]);
                              }
                              return p.kernel_prefactor() * sum;
                          },
                      },
                      s.pre());
}

}  // namespace

Complex transition_amplitude(const ValidatedScenario& s) {
    if (const auto* post = std::get_if<SampledState>(&s.post())) {
        Complex total{};
        for (std::size_t k = 0; k < post->grid.count; ++k) {
            const double x_f = post->grid.at(k);
            if (on_wall(s, x_f) || post->values[k] == Complex(0.0, 0.0)) {
                continue;
            }
            total += trapezoid_weight(post->grid, k) * std::conj(post->values[k]) * position_amplitude(s, x_f, nullptr).value;
        }
        return total;
    }
    return post_amplitude(s).value;
}

Complex transition_amplitude_derivative(const ValidatedScenario& s) { return post_amplitude(s).slope; }

double amplitude_scale(const ValidatedScenario& s) {
    if (const auto* st = std::get_if<SpinTagged>(&s.post())) {
        return pre_scale(s, &st->tags);
    }
    if (const auto* post = std::get_if<SampledState>(&s.post())) {
        double sum = 0.0;
        for (std::size_t k = 0; k < post->grid.count; ++k) {
            sum += trapezoid_weight(post->grid, k) * std::abs(post->values[k]);
        }
        return sum * pre_scale(s, nullptr);
    }
    return pre_scale(s, nullptr);
}

bool is_destructive(const ValidatedScenario& s, Complex amplitude) {
    return std::abs(amplitude) < kDestructiveThreshold * amplitude_scale(s);
}

}  // namespace weaktraj
