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

#ifndef WEAKTRAJ_CORE_HPP_
#define WEAKTRAJ_CORE_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace weaktraj {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Relative amplitude threshold below which a screen point counts as destructive.
inline constexpr double kDestructiveThreshold = 1e-10;

enum class ErrorCode {
    DuplicateSlit,
    NonPositiveParam,
    GeometryViolation,
    SpinLengthMismatch,
    InvalidSelection,
    NonPositiveTime,
    DivergentAtDestructivePoint,
    SingularFocus,
    Overflow,
    ZeroWeight,
    GridTooCoarse,
    ForbiddenProcess,
    NonConvergent,
    OverlapCollapse,
    UnstableStep,
    TooFewSamples,
    Unsupported,
};

std::string_view to_string(ErrorCode code);

class WeakError : public std::runtime_error {
public:
    WeakError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Mass, reduced Planck constant and the post-selection time T.
struct PhysicalParams {
    double mass = 1.0;
    double hbar = 1.0;
    double horizon = 1.0;

    /// sqrt(m / (2 pi hbar T)), the modulus of the free kernel over the full horizon.
    double kernel_prefactor() const;

    bool operator==(const PhysicalParams&) const = default;
};

enum class Geometry { FullLine, HalfLineDirichlet };

/// x_k = start + k * step for k in [0, count).
struct UniformGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double at(std::size_t k) const { return start + step * static_cast<double>(k); }
    double stop() const { return count == 0 ? start : at(count - 1); }
    std::vector<double> points() const;

    static UniformGrid spanning(double first, double last, std::size_t count);

    bool operator==(const UniformGrid&) const = default;
};

struct Slit {
    double position = 0.0;
    Complex amplitude{1.0, 0.0};

    bool operator==(const Slit&) const = default;
};

struct DiscreteSlits {
    std::vector<Slit> slits;
    bool operator==(const DiscreteSlits&) const = default;
};

struct MomentumEigenstate {
    double momentum = 0.0;
    bool operator==(const MomentumEigenstate&) const = default;
};

/// k * exp(i alpha x^2 + i beta x).
struct ComplexGaussian {
    double alpha = 0.0;
    double beta = 0.0;
    double norm = 1.0;
    bool operator==(const ComplexGaussian&) const = default;
};

struct SampledState {
    UniformGrid grid;
    std::vector<Complex> values;
    bool operator==(const SampledState&) const = default;
};

using PreSelection = std::variant<DiscreteSlits, MomentumEigenstate, ComplexGaussian, SampledState>;

struct PositionEigenstate {
    double position = 0.0;
    bool operator==(const PositionEigenstate&) const = default;
};

/// |x_f> (x) sum_n e_n |n>, tagging each slit with an auxiliary spin state.
struct SpinTagged {
    double position = 0.0;
    std::vector<Complex> tags;
    bool operator==(const SpinTagged&) const = default;
};

using PostSelection = std::variant<PositionEigenstate, SpinTagged, SampledState>;

struct Observable {
    enum class Kind { Position, Momentum, SpinTaggedPosition };
    Kind kind = Kind::Position;
    std::size_t slit = 0;  // only read for SpinTaggedPosition

    bool operator==(const Observable&) const = default;
};

struct Scenario {
    PhysicalParams params;
    Geometry geometry = Geometry::FullLine;
    PreSelection pre;
    PostSelection post;

    bool operator==(const Scenario&) const = default;
};

/// A scenario that has passed validate_scenario. Immutable.
class ValidatedScenario {
public:
    const Scenario& get() const noexcept { return scenario_; }
    const PhysicalParams& params() const noexcept { return scenario_.params; }
    Geometry geometry() const noexcept { return scenario_.geometry; }
    const PreSelection& pre() const noexcept { return scenario_.pre; }
    const PostSelection& post() const noexcept { return scenario_.post; }

    bool half_line() const noexcept { return scenario_.geometry == Geometry::HalfLineDirichlet; }

    /// Screen position of a position-type post-selection; nullopt for sampled posts.
    std::optional<double> final_position() const;

    bool operator==(const ValidatedScenario&) const = default;

private:
    explicit ValidatedScenario(Scenario s) : scenario_(std::move(s)) {}
    friend ValidatedScenario validate_scenario(Scenario s);

    Scenario scenario_;
};

ValidatedScenario validate_scenario(Scenario s);

/// Same process, post-selected at a different screen position (keeps spin tags).
ValidatedScenario with_final_position(const ValidatedScenario& s, double x_f);

/// <psi|U(T)|phi>.
Complex transition_amplitude(const ValidatedScenario& s);

/// d/dx_f <x_f|U(T)|phi> for position-type post-selections.
Complex transition_amplitude_derivative(const ValidatedScenario& s);

/// Magnitude against which kDestructiveThreshold is applied for this scenario.
double amplitude_scale(const ValidatedScenario& s);

bool is_destructive(const ValidatedScenario& s, Complex amplitude);

/// Sampled time series of complex weak values. Diverged samples hold no value.
struct WeakValueSeries {
    std::vector<double> times;
    std::vector<std::optional<Complex>> position;
    std::vector<std::optional<Complex>> momentum;
    /// (dV/dx)_w when the producer knows it (grid propagation); otherwise empty.
    std::vector<std::optional<Complex>> force;

    std::size_t size() const noexcept { return times.size(); }
    bool diverged(std::size_t k) const { return !position[k].has_value(); }
    std::size_t diverged_count() const;
};

/// `count` equally spaced times from 0 to T inclusive (count >= 2).
std::vector<double> uniform_times(double horizon, std::size_t count);

}  // namespace weaktraj

#endif  // WEAKTRAJ_CORE_HPP_
