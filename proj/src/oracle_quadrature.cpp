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
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "weaktraj/oracle.hpp"
#include "weaktraj/trajectories.hpp"

namespace weaktraj {
namespace {

// Damped chirp e^{i A (x-c)^2 - eps A (x-c)^2}: where to integrate and how finely.
struct Chirp {
    double rate;    // A
    double centre;  // c
    double spread;  // bound on |stationary points| of the undamped terms
    bool half_line;
};

template <class Visit>
void for_each_node(const Chirp& ch, double eps, const QuadratureConfig& cfg, Visit&& visit) {
    const double A = ch.rate;
    const double c = ch.centre;
    if (!ch.half_line) {
        const double reach = std::sqrt(37.0 / (eps * A));
        double lo = c - reach;
        double hi = c + reach;
        if (cfg.domain) {
            lo = std::max(lo, cfg.domain->first);
            hi = std::min(hi, cfg.domain->second);
        }
        const double step = 2.0 * kPi * std::sqrt(eps / (148.0 * A));
        const auto n = std::max<std::size_t>(cfg.points, static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1);
        const double h = (hi - lo) / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            const double x = lo + h * static_cast<double>(k);
            const double u = x - c;
            visit(x, ((k == 0 || k + 1 == n) ? 0.5 * h : h) * std::exp(-eps * A * u * u));
        }
        return;
    }

    using Rule = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = Rule::abscissa();
    const auto& weight = Rule::weights();
    const double reach = std::sqrt(40.0 / (eps * A));
    double lo = std::max(0.0, c - reach);
    double hi = c + reach;
    if (cfg.domain) {
        lo = std::max(lo, cfg.domain->first);
        hi = std::min(hi, cfg.domain->second);
    }
    const double omega = 2.0 * A * (hi + ch.spread);
    const double wavelengths = omega * (hi - lo) / (2.0 * kPi);
    const auto panels = std::max<std::size_t>(cfg.points / 16, static_cast<std::size_t>(std::ceil(wavelengths * 12.0 / 16.0)));
    const double width = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + width * (static_cast<double>(p) + 0.5);
        for (std::size_t j = 0; j < abscissa.size(); ++j) {
            for (double sgn : {-1.0, 1.0}) {
                const double x = mid + sgn * 0.5 * width * abscissa[j];
                const double u = x - c;
                visit(x, 0.5 * width * weight[j] * std::exp(-eps * A * u * u));
            }
        }
    }
}

// Richardson table over eps_k = eps / 2^k for an error expansion in powers of eps.
OracleEstimate extrapolate(std::vector<Complex> levels, const QuadratureConfig& cfg) {
    OracleEstimate out;
    out.levels = levels;
    std::vector<Complex> prev = levels;
    Complex last_diag = prev.back();
    Complex before = prev.back();
    for (std::size_t j = 1; j < levels.size(); ++j) {
        const double f = std::ldexp(1.0, static_cast<int>(j));
        std::vector<Complex> next;
        for (std::size_t k = 1; k < prev.size(); ++k) {
            next.push_back((f * prev[k] - prev[k - 1]) / (f - 1.0));
        }
        before = prev.back();
        prev = std::move(next);
        last_diag = prev.back();
    }
    out.value = last_diag;
    out.error_estimate = std::abs(last_diag - before);
    if (!(out.error_estimate <= cfg.tolerance * std::max(1.0, std::abs(out.value)))) {
        throw WeakError(ErrorCode::NonConvergent,
                        "extrapolated quadrature error " + std::to_string(out.error_estimate) + " above tolerance");
    }
    return out;
}

void check_config(const QuadratureConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || cfg.richardson_levels < 2 || cfg.points < 2) {
        throw WeakError(ErrorCode::NonPositiveParam, "quadrature needs epsilon > 0, >= 2 levels and >= 2 points");
    }
}

}  // namespace

OracleEstimate quadrature_weak_position(const ValidatedScenario& s, double t, const QuadratureConfig& cfg) {
    check_config(cfg);
    const PhysicalParams& p = s.params();
    const double T = p.horizon;
    if (!(t > 0.0 && t < T)) {
        throw WeakError(ErrorCode::NonPositiveTime, "quadrature needs 0 < t < T");
    }
    const auto* slits = std::get_if<DiscreteSlits>(&s.pre());
    const std::optional<double> xf = s.final_position();
    if (slits == nullptr || !xf) {
        throw WeakError(ErrorCode::Unsupported, "quadrature oracle certifies slit pre- and position post-selections");
    }
    const auto* tagged = std::get_if<SpinTagged>(&s.post());
    const KernelKind kind = s.half_line() ? KernelKind::Dirichlet : KernelKind::Free;
    const double rest = T - t;
    const double A = p.mass * T / (2.0 * p.hbar * t * rest);

    std::vector<Complex> levels;
    for (std::size_t k = 0; k < cfg.richardson_levels; ++k) {
        const double eps = std::ldexp(cfg.epsilon, -static_cast<int>(k));
        Complex num{};
        Complex den{};
        for (std::size_t n = 0; n < slits->slits.size(); ++n) {
            Complex c = slits->slits[n].amplitude;
            if (tagged != nullptr) {
                c *= std::conj(tagged->tags[n]);
            }
            if (c == Complex(0.0, 0.0)) {
                continue;
            }
            const double x_n = slits->slits[n].position;
            const Chirp ch{A, classical_trajectory(x_n, *xf, T, t), std::abs(*xf) + std::abs(x_n), s.half_line()};
            Complex sum_x{};
            Complex sum_1{};
            for_each_node(ch, eps, cfg, [&](double x, double w) {
                if (s.half_line() && x <= 0.0) {
                    return;
                }
                const Complex g = w * kernel(kind, *xf, x, rest, p).value * kernel(kind, x, x_n, t, p).value;
                sum_x += x * g;
                sum_1 += g;
            });
            num += c * sum_x;
            den += c * sum_1;
        }
        if (den == Complex(0.0, 0.0)) {
            throw WeakError(ErrorCode::DivergentAtDestructivePoint, "quadrature denominator vanishes");
        }
        levels.push_back(num / den);
    }
    return extrapolate(std::move(levels), cfg);
}

double chapman_kolmogorov_check(KernelKind kind, double x_a, double x_b, double t1, double t2,
                                const PhysicalParams& params, const QuadratureConfig& cfg) {
    check_config(cfg);
    if (!(t1 > 0.0) || !(t2 > 0.0)) {
        throw WeakError(ErrorCode::NonPositiveTime, "composition needs t1, t2 > 0");
    }
    const double total = t1 + t2;
    const double A = params.mass * total / (2.0 * params.hbar * t1 * t2);
    const bool half = kind == KernelKind::Dirichlet;
    const Chirp ch{A, x_a + (x_b - x_a) * t1 / total, std::abs(x_a) + std::abs(x_b), half};
    std::vector<Complex> levels;
    for (std::size_t k = 0; k < cfg.richardson_levels; ++k) {
        const double eps = std::ldexp(cfg.epsilon, -static_cast<int>(k));
        Complex sum{};
        for_each_node(ch, eps, cfg, [&](double x, double w) {
            if (half && x <= 0.0) {
                return;
            }
            sum += w * kernel(kind, x_b, x, t2, params).value * kernel(kind, x, x_a, t1, params).value;
        });
        levels.push_back(sum);
    }
    QuadratureConfig loose = cfg;
    loose.tolerance = std::numeric_limits<double>::infinity();
    const OracleEstimate est = extrapolate(std::move(levels), loose);
    const KernelEval direct = kernel(kind, x_b, x_a, total, params);
    const double err = std::abs(est.value - direct.value) / direct.prefactor_modulus;
    if (!(est.error_estimate <= cfg.tolerance * direct.prefactor_modulus)) {
        throw WeakError(ErrorCode::NonConvergent, "composition quadrature did not converge");
    }
    return err;
}

double kernel_delta_moment_error(KernelKind kind, double x_a, double t, double sigma, const PhysicalParams& params) {
    if (!(t > 0.0)) {
        throw WeakError(ErrorCode::NonPositiveTime, "kernel time must be positive");
    }
    if (!(sigma > 0.0)) {
        throw WeakError(ErrorCode::NonPositiveParam, "sigma must be positive");
    }
    using Rule = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = Rule::abscissa();
    const auto& weight = Rule::weights();
    double lo = x_a - 12.0 * sigma;
    const double hi = x_a + 12.0 * sigma;
    if (kind == KernelKind::Dirichlet) {
        lo = std::max(lo, 0.0);
    }
    // Resolve both the window and the kernel chirp m (x - x_a)^2 / (2 hbar t).
    const double omega = params.mass * (hi - lo + std::abs(x_a)) / (params.hbar * t) + 1.0 / sigma;
    const auto panels = static_cast<std::size_t>(std::ceil(omega * (hi - lo) / (2.0 * kPi) * 12.0 / 16.0)) + 16;
    const double width = (hi - lo) / static_cast<double>(panels);
    Complex m0{};
    Complex m1{};
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + width * (static_cast<double>(p) + 0.5);
        for (std::size_t j = 0; j < abscissa.size(); ++j) {
            for (double sgn : {-1.0, 1.0}) {
                const double x = mid + sgn * 0.5 * width * abscissa[j];
                const double u = (x - x_a) / sigma;
                const Complex g = 0.5 * width * weight[j] * std::exp(-0.5 * u * u) * kernel(kind, x, x_a, t, params).value;
                m0 += g;
                m1 += x * g;
            }
        }
    }
    return std::abs(m1 / m0 - x_a);
}

}  // namespace weaktraj
