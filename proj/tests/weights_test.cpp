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


#include <gtest/gtest.h>

#include <random>

#include "weaktraj/kernels.hpp"
#include "weaktraj/trajectories.hpp"
#include "weaktraj/weights.hpp"

namespace weaktraj {
namespace {

const PhysicalParams kNatural{};

ValidatedScenario slits(std::vector<Slit> s, double xf, PhysicalParams p = kNatural) {
    return validate_scenario({p, Geometry::FullLine, DiscreteSlits{std::move(s)}, PositionEigenstate{xf}});
}

ValidatedScenario tagged(std::vector<Slit> s, double xf, std::vector<Complex> tags) {
    return validate_scenario({kNatural, Geometry::FullLine, DiscreteSlits{std::move(s)}, SpinTagged{xf, std::move(tags)}});
}

std::vector<Slit> random_slits(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Slit> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back({3.0 * u(rng) + 7.0 * static_cast<double>(k), Complex(u(rng), u(rng))});
    }
    return out;
}

TEST(DiscreteWeights, SingleSlit) {
    const WeightVector w = discrete_weights(slits({{0.3, Complex(0.2, -0.9)}}, 1.7));
    ASSERT_EQ(w.omega.size(), 1u);
    EXPECT_LE(std::abs(w.omega[0] - 1.0), 1e-15);
}

TEST(DiscreteWeights, DoubleSlitQuarterPeriod) {
    const double c = 1 / std::sqrt(2.0);
    const WeightVector w = discrete_weights(slits({{-1.0, c}, {1.0, c}}, kPi / 4));
    EXPECT_LE(std::abs(w.omega[0] - Complex(0.5, 0.5)), 1e-14);
    EXPECT_LE(std::abs(w.omega[1] - Complex(0.5, -0.5)), 1e-14);
    const WeightVector bright = discrete_weights(slits({{-1.0, c}, {1.0, c}}, 0.0));
    EXPECT_LE(std::abs(bright.omega[0] - 0.5), 1e-15);
    EXPECT_LE(std::abs(bright.omega[1] - 0.5), 1e-15);
}

TEST(DiscreteWeights, SumAndAverageIdentity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const PhysicalParams p{0.5 + std::abs(u(rng)), 0.3 + 0.2 * std::abs(u(rng)), 0.5 + 0.25 * std::abs(u(rng))};
            const auto v = slits(random_slits(rng, n), u(rng), p);
            const WeightVector w = discrete_weights(v);
            EXPECT_LE(std::abs(w.sum() - 1.0), 1e-12);
            const auto& sl = std::get<DiscreteSlits>(v.pre());
            for (double frac : {0.2, 0.7}) {
                const double t = frac * p.horizon;
                const WeakValueSeries ws = weak_trajectory({v, {t}, Observable{}});
                Complex avg{};
                for (std::size_t k = 0; k < n; ++k) {
                    avg += w.omega[k] * classical_trajectory(sl.slits[k].position, *v.final_position(), p.horizon, t);
                }
                EXPECT_LE(std::abs(avg - *ws.position[0]), 1e-10 * std::max(1.0, std::abs(avg)));
            }
        }
    }
}

TEST(DiscreteWeights, InvariantUnderGlobalAmplitudeFactor) {
    std::mt19937_64 rng(8);
    const auto base = random_slits(rng, 4);
    auto scaled = base;
    for (auto& s : scaled) {
        s.amplitude *= std::polar(3.7, 1.1);
    }
    const WeightVector a = discrete_weights(slits(base, 0.9));
    const WeightVector b = discrete_weights(slits(scaled, 0.9));
    for (std::size_t k = 0; k < a.omega.size(); ++k) {
        EXPECT_LE(std::abs(a.omega[k] - b.omega[k]), 1e-13);
    }
}

TEST(DiscreteWeights, DestructivePointThrows) {
    const double c = 1 / std::sqrt(2.0);
    try {
        discrete_weights(slits({{-1.0, c}, {1.0, c}}, kPi / 2));
        FAIL();
    } catch (const WeakError& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivergentAtDestructivePoint);
    }
}

TEST(SpinTaggedWeights, DeltaTagSelectsOneSlit) {
    std::mt19937_64 rng(9);
    const auto s = random_slits(rng, 3);
    for (std::size_t l = 0; l < 3; ++l) {
        std::vector<Complex> tags(3, 0.0);
        tags[l] = 1.0;
        const WeightVector w = spin_tagged_weights(tagged(s, 0.4, tags));
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_LE(std::abs(w.omega[k] - (k == l ? 1.0 : 0.0)), 1e-15);
        }
    }
}

TEST(SpinTaggedWeights, UniformTagsReduceToUntagged) {
    std::mt19937_64 rng(10);
    const auto s = random_slits(rng, 5);
    const WeightVector a = spin_tagged_weights(tagged(s, -0.8, std::vector<Complex>(5, 1 / std::sqrt(5.0))));
    const WeightVector b = discrete_weights(slits(s, -0.8));
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_LE(std::abs(a.omega[k] - b.omega[k]), 1e-13);
    }
}

TEST(WhichPath, SumsToTaggedTrajectory) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_slits(rng, 3);
        const auto v = tagged(s, 2 * u(rng), {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))});
        const double t = 0.5 + 0.4 * u(rng);
        Complex total{};
        for (std::size_t n = 0; n < 3; ++n) {
            const Complex xn = which_path_weak_value(v, n, t);
            const WeakValueSeries ws = weak_trajectory({v, {t}, Observable{Observable::Kind::SpinTaggedPosition, n}});
            EXPECT_LE(std::abs(xn - *ws.position[0]), 1e-10 * std::max(1.0, std::abs(xn)));
            total += xn;
        }
        const WeakValueSeries all = weak_trajectory({v, {t}, Observable{}});
        EXPECT_LE(std::abs(total - *all.position[0]), 1e-10 * std::max(1.0, std::abs(total)));
    }
}

TEST(WhichPath, RenormalizedIsClassicalLine) {
    const double c = 1 / std::sqrt(2.0);
    const auto v = tagged({{-1.0, c}, {1.0, c}}, 0.9, {Complex(0.6, 0.0), Complex(0.0, 0.8)});
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        for (std::size_t n = 0; n < 2; ++n) {
            const Complex r = renormalized_which_path(v, n, t);
            EXPECT_LE(std::abs(r - classical_trajectory(n == 0 ? -1.0 : 1.0, 0.9, 1.0, t)), 1e-14);
            EXPECT_LE(std::abs(r.imag()), 1e-14);
        }
    }
}

TEST(WhichPath, ZeroWeightSlit) {
    const auto v = tagged({{-1.0, 0.5}, {1.0, 0.5}}, 0.3, {1.0, 0.0});
    try {
        renormalized_which_path(v, 1, 0.5);
        FAIL();
    } catch (const WeakError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroWeight);
    }
    EXPECT_THROW(renormalized_which_path(v, 2, 0.5), WeakError);
    const auto lloyd = validate_scenario({kNatural, Geometry::HalfLineDirichlet, DiscreteSlits{{{1.0, 1.0}}}, SpinTagged{1.0, {1.0}}});
    EXPECT_THROW(which_path_weak_value(lloyd, 0, 0.5), WeakError);
}

TEST(WeightDensity, GaussianPreSelection) {
    const ComplexGaussian g{0.3, -0.4, 1.0};
    const double xf = 0.8;
    const auto v = validate_scenario({kNatural, Geometry::FullLine, g, PositionEigenstate{xf}});
    const WeightDensity d = continuous_weight_density(v, UniformGrid::spanning(-20.0, 20.0, 4097));
    EXPECT_LE(std::abs(d.integral() - 1.0), 1e-8);
    const double a = kNatural.mass / (2 * kNatural.hbar * kNatural.horizon);
    const double stationary = (2 * a * xf - g.beta) / (2 * a + 2 * g.alpha);
    EXPECT_LE(std::abs(d.first_moment() - stationary), 1e-7);
    for (double t : {0.1, 0.5, 0.9}) {
        const Complex avg = (1 - t) * d.first_moment() + t * xf;
        EXPECT_LE(std::abs(avg - gaussian_trajectory(g.alpha, g.beta, xf, kNatural, t)), 1e-7);
    }
}

TEST(WeightDensity, MomentumPreSelection) {
    const PhysicalParams p{1.3, 0.8, 1.5};
    const double mom = 0.6, xf = -0.4;
    const auto v = validate_scenario({p, Geometry::FullLine, MomentumEigenstate{mom}, PositionEigenstate{xf}});
    const WeightDensity d = continuous_weight_density(v, UniformGrid::spanning(-25.0, 25.0, 4097));
    EXPECT_LE(std::abs(d.integral() - 1.0), 1e-8);
    for (double t : {0.2, 0.6}) {
        const Complex avg = (1 - t / p.horizon) * d.first_moment() + t / p.horizon * xf;
        EXPECT_LE(std::abs(avg - momentum_eigenstate_trajectory(mom, xf, p, t)), 1e-7);
    }
}

TEST(WeightDensity, SampledStateAndCoarseGrid) {
    const UniformGrid g = UniformGrid::spanning(-8.0, 8.0, 2049);
    SampledState st{g, {}};
    for (double x : g.points()) {
        st.values.push_back(std::exp(-x * x / 2) * std::polar(1.0, 0.7 * x));
    }
    const auto v = validate_scenario({kNatural, Geometry::FullLine, st, PositionEigenstate{0.5}});
    const WeightDensity d = continuous_weight_density(v, g);
    EXPECT_LE(std::abs(d.integral() - 1.0), 1e-12);
    const WeakValueSeries ws = weak_trajectory({v, {0.3}, Observable{}});
    EXPECT_LE(std::abs(0.7 * d.first_moment() + 0.3 * 0.5 - *ws.position[0]), 1e-10);
    EXPECT_THROW(continuous_weight_density(v, UniformGrid::spanning(-8.0, 8.0, 101)), WeakError);

    const UniformGrid coarse = UniformGrid::spanning(-8.0, 8.0, 33);
    SampledState rough{coarse, {}};
    for (double x : coarse.points()) {
        rough.values.push_back(std::exp(-x * x / 2) * std::polar(1.0, 3.0 * x));
    }
    try {
        continuous_weight_density(validate_scenario({kNatural, Geometry::FullLine, rough, PositionEigenstate{0.5}}), coarse);
        FAIL();
    } catch (const WeakError& e) {
        EXPECT_EQ(e.code(), ErrorCode::GridTooCoarse);
    }
}

SampledState gaussian_state(const UniformGrid& g, double centre, double sigma, double k) {
    SampledState s{g, {}};
    for (double x : g.points()) {
        s.values.push_back(std::exp(-(x - centre) * (x - centre) / (4 * sigma * sigma)) * std::polar(1.0, k * x));
    }
    return s;
}

TEST(PrepostWeight, NormalizedAndSymmetric) {
    const UniformGrid gi = UniformGrid::spanning(-6.0, 6.0, 513);
    const UniformGrid gf = UniformGrid::spanning(-5.0, 7.0, 513);
    const SampledState pre = gaussian_state(gi, -0.5, 0.7, 0.4);
    const SampledState post = gaussian_state(gf, 1.0, 0.6, -0.2);
    const PrepostWeight w = general_prepost_weight(kNatural, Geometry::FullLine, pre, post);
    EXPECT_LE(std::abs(w.integral() - 1.0), 1e-10);

    SampledState pre_swapped{gf, {}};
    for (const Complex& c : post.values) {
        pre_swapped.values.push_back(std::conj(c));
    }
    SampledState post_swapped{gi, {}};
    for (const Complex& c : pre.values) {
        post_swapped.values.push_back(std::conj(c));
    }
    const PrepostWeight r = general_prepost_weight(kNatural, Geometry::FullLine, pre_swapped, post_swapped);
    double worst = 0.0;
    for (std::size_t i = 0; i < gi.count; i += 16) {
        for (std::size_t j = 0; j < gf.count; j += 16) {
            worst = std::max(worst, std::abs(w.at(i, j) - r.at(j, i)));
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(PrepostWeight, NarrowPostApproachesPositionWeights) {
    const UniformGrid gi = UniformGrid::spanning(-8.0, 8.0, 2049);
    const SampledState pre = gaussian_state(gi, 0.0, 1.0, 0.5);
    const double xf = 0.9;
    const WeightDensity exact = continuous_weight_density(validate_scenario({kNatural, Geometry::FullLine, pre, PositionEigenstate{xf}}), gi);
    double previous = 1e300;
    for (double sigma : {0.1, 0.05, 0.025}) {
        const SampledState post = gaussian_state(UniformGrid::spanning(xf - 12 * sigma, xf + 12 * sigma, 401), xf, sigma, 0.0);
        const std::vector<Complex> marginal = general_prepost_weight(kNatural, Geometry::FullLine, pre, post).xi_marginal();
        double err = 0.0;
        for (std::size_t i = 0; i < gi.count; ++i) {
            err = std::max(err, std::abs(marginal[i] - exact.values[i]));
        }
        EXPECT_LT(err, previous) << sigma;
        previous = err;
    }
    EXPECT_LT(previous, 5e-3);
}

TEST(PrepostWeight, ForbiddenProcess) {
    // Free evolution keeps parity, so an even pre-selection never reaches an odd post-selection.
    const UniformGrid g = UniformGrid::spanning(-6.0, 6.0, 257);
    SampledState even{g, {}}, odd{g, {}};
    for (double x : g.points()) {
        even.values.push_back(std::exp(-x * x / 2));
        odd.values.push_back(x * std::exp(-x * x / 2));
    }
    try {
        general_prepost_weight(kNatural, Geometry::FullLine, even, odd);
        FAIL();
    } catch (const WeakError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ForbiddenProcess);
    }
}

}  // namespace
}  // namespace weaktraj
