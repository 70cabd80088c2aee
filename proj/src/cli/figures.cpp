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


#include "weaktraj/cli/figures.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <stdexcept>

#include "weaktraj/analysis.hpp"
#include "weaktraj/cli/commands.hpp"
#include "weaktraj/trajectories.hpp"
#include "weaktraj/weights.hpp"

namespace weaktraj::cli {
namespace {

const PhysicalParams kNatural{};
constexpr double kSlitWidth = 0.15;
constexpr std::size_t kTimes = 65;

ValidatedScenario slits(std::vector<double> xs, double xf) {
    const double c = 1.0 / std::sqrt(static_cast<double>(xs.size()));
    DiscreteSlits d;
    for (double x : xs) {
        d.slits.push_back({x, c});
    }
    return validate_scenario({kNatural, Geometry::FullLine, d, PositionEigenstate{xf}});
}

ValidatedScenario lloyd(double xf) {
    return validate_scenario({kNatural, Geometry::HalfLineDirichlet, DiscreteSlits{{{1.0, 1.0}}}, PositionEigenstate{xf}});
}

// Unit-area Gaussians of width kSlitWidth at each slit, weighted like the point slits.
SampledState finite_slits(const std::vector<Slit>& point, double lo, double hi) {
    const UniformGrid g = UniformGrid::spanning(lo, hi, 1601);
    const double norm = 1.0 / (std::sqrt(2.0 * kPi) * kSlitWidth);
    SampledState s{g, {}};
    for (double x : g.points()) {
        Complex v{};
        for (const Slit& sl : point) {
            const double d = (x - sl.position) / kSlitWidth;
            v += sl.amplitude * norm * std::exp(-0.5 * d * d);
        }
        s.values.push_back(v);
    }
    return s;
}

OutputTable probability_pair(const ValidatedScenario& point, Geometry geometry, const SampledState& finite,
                             const ScreenRange& screen) {
    const auto smeared = validate_scenario({kNatural, geometry, finite, PositionEigenstate{screen.start}});
    OutputTable t({"x_f", "prob_point", "prob_finite"});
    for (double x : screen.points()) {
        t.add_row({format_number(x), format_number(transition_probability(point, x)),
                   format_number(transition_probability(smeared, x))});
    }
    return t;
}

// Trajectories for several post-selections, each row weighted by P(x_f) / max P.
OutputTable weighted_trajectories(const std::vector<double>& xfs, const std::function<ValidatedScenario(double)>& make,
                                  bool with_paths) {
    std::vector<std::string> header{"x_f", "t", "re_xw", "im_xw", "weight"};
    if (with_paths) {
        header.insert(header.end(), {"direct_path", "bounce_path"});
    }
    OutputTable t(header);
    double pmax = 0.0;
    for (double x : xfs) {
        pmax = std::max(pmax, transition_probability(make(x), x));
    }
    const std::vector<double> times = uniform_times(kNatural.horizon, kTimes);
    for (double x : xfs) {
        const ValidatedScenario v = make(x);
        const double w = transition_probability(v, x) / pmax;
        const WeakValueSeries ws = weak_trajectory({v, times, Observable{}});
        for (std::size_t k = 0; k < ws.size(); ++k) {
            std::vector<std::string> row{format_number(x), format_number(times[k]),
                                         format_number(ws.position[k] ? std::optional(ws.position[k]->real()) : std::nullopt),
                                         format_number(ws.position[k] ? std::optional(ws.position[k]->imag()) : std::nullopt),
                                         format_number(w)};
            if (with_paths) {
                row.push_back(format_number(classical_trajectory(1.0, x, kNatural.horizon, times[k])));
                row.push_back(format_number(lloyd_bounce_path(1.0, x, kNatural.horizon, times[k])));
            }
            t.add_row(std::move(row));
        }
    }
    return t;
}

OutputTable xf_scan(const ValidatedScenario& v, const std::vector<double>& xs, double t) {
    OutputTable table({"x_f", "re_xw", "im_xw", "prob"});
    for (double x : xs) {
        const ValidatedScenario s = with_final_position(v, x);
        const WeakValueSeries ws = weak_trajectory({s, {t}, Observable{}});
        const auto& p = ws.position[0];
        table.add_row({format_number(x), format_number(p ? std::optional(p->real()) : std::nullopt),
                       format_number(p ? std::optional(p->imag()) : std::nullopt),
                       format_number(transition_probability(s, x))});
    }
    return table;
}

std::vector<double> steps(double lo, double step, std::size_t n) {
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(lo + step * static_cast<double>(k));
    }
    return out;
}

std::map<std::string, OutputTable> figure_double_slit_probability() {
    const ValidatedScenario v = slits({-1.0, 1.0}, 0.0);
    const auto& point = std::get<DiscreteSlits>(v.pre()).slits;
    std::map<std::string, OutputTable> out;
    out.emplace("fig1_probability.csv", probability_pair(v, Geometry::FullLine, finite_slits(point, -2.0, 2.0), {-8.0, 8.0, 800}));
    return out;
}

std::map<std::string, OutputTable> figure_double_slit_trajectories() {
    std::map<std::string, OutputTable> out;
    out.emplace("fig2_trajectories.csv",
                weighted_trajectories(steps(-4.0, 0.25, 33), [](double x) { return slits({-1.0, 1.0}, x); }, false));
    return out;
}

std::map<std::string, OutputTable> figure_double_slit_scan() {
    const ValidatedScenario v = slits({-1.0, 1.0}, 0.0);
    const double t = 0.5 * kNatural.horizon;
    const std::vector<double> xs = ScreenRange{-10.0, 10.0, 2000}.points();
    std::map<std::string, OutputTable> out;
    out.emplace("fig3_xf_scan.csv", xf_scan(v, xs, t));

    std::vector<double> zeros;
    for (const Extremum& e : interference_curve(v, xs).extrema) {
        const ValidatedScenario s = with_final_position(v, e.x_f);
        if (e.kind == Extremum::Kind::Min && is_destructive(s, transition_amplitude(s))) {
            zeros.push_back(e.x_f);
        }
    }
    OutputTable poles({"pole_x_f", "zero_x_f", "distance"});
    for (double p : locate_poles(v, xs, t)) {
        const auto nearest = std::min_element(zeros.begin(), zeros.end(),
                                              [&](double a, double b) { return std::abs(a - p) < std::abs(b - p); });
        const std::optional<double> z = nearest == zeros.end() ? std::nullopt : std::optional(*nearest);
        poles.add_row({format_number(p), format_number(z), format_number(z ? std::optional(std::abs(*z - p)) : std::nullopt)});
    }
    out.emplace("fig3_poles.csv", std::move(poles));
    return out;
}

std::map<std::string, OutputTable> figure_triple_slit_scan() {
    const ValidatedScenario v = slits({-1.0, 0.0, 1.0}, 0.0);
    const double t = 0.5 * kNatural.horizon;
    const std::vector<double> xs = ScreenRange{-10.0, 10.0, 2000}.points();
    std::map<std::string, OutputTable> out;
    out.emplace("fig4_xf_scan.csv", xf_scan(v, xs, t));
    std::vector<double> minima;
    for (const Extremum& e : interference_curve(v, xs).extrema) {
        if (e.kind == Extremum::Kind::Min) {
            minima.push_back(e.x_f);
        }
    }
    out.emplace("fig4_minima.csv", xf_scan(v, minima, t));
    return out;
}

std::map<std::string, OutputTable> figure_which_path() {
    const double e = 1.0 / std::sqrt(2.0);
    const auto make = [&](double xf) {
        return validate_scenario({kNatural, Geometry::FullLine, DiscreteSlits{{{1.0, e}, {-1.0, e}}}, SpinTagged{xf, {e, e}}});
    };
    std::map<std::string, OutputTable> out;
    OutputTable paths({"x_f", "t", "re_renorm_1", "im_renorm_1", "re_renorm_2", "im_renorm_2"});
    for (double xf : {-1.5, 0.0, 0.5, 1.5}) {
        const ValidatedScenario v = make(xf);
        for (double t : uniform_times(kNatural.horizon, kTimes)) {
            const Complex a = renormalized_which_path(v, 0, t);
            const Complex b = renormalized_which_path(v, 1, t);
            paths.add_row({format_number(xf), format_number(t), format_number(a.real()), format_number(a.imag()),
                           format_number(b.real()), format_number(b.imag())});
        }
    }
    out.emplace("fig5_paths.csv", std::move(paths));
    OutputTable prob({"x_f", "prob"});
    const ValidatedScenario v = make(0.0);
    for (double x : ScreenRange{-8.0, 8.0, 800}.points()) {
        prob.add_row({format_number(x), format_number(transition_probability(v, x))});
    }
    out.emplace("fig5_probability.csv", std::move(prob));
    return out;
}

std::map<std::string, OutputTable> figure_lloyd() {
    const ValidatedScenario v = lloyd(1.0);
    const auto& point = std::get<DiscreteSlits>(v.pre()).slits;
    std::map<std::string, OutputTable> out;
    out.emplace("fig6_probability.csv",
                probability_pair(v, Geometry::HalfLineDirichlet, finite_slits(point, 0.0, 2.5), {0.01, 8.01, 800}));
    out.emplace("fig6_trajectories.csv", weighted_trajectories(steps(0.25, 0.25, 16), lloyd, true));
    return out;
}

}  // namespace

std::map<std::string, OutputTable> figure_tables(int id) {
    switch (id) {
        case 1:
            return figure_double_slit_probability();
        case 2:
            return figure_double_slit_trajectories();
        case 3:
            return figure_double_slit_scan();
        case 4:
            return figure_triple_slit_scan();
        case 5:
            return figure_which_path();
        case 6:
            return figure_lloyd();
        default:
            throw std::out_of_range("unknown figure id " + std::to_string(id) + " (expected 1..6)");
    }
}

int cmd_figure(int id, const std::string& dir, std::ostream& log, std::ostream& err) {
    std::map<std::string, OutputTable> tables;
    try {
        tables = figure_tables(id);
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
    std::filesystem::create_directories(dir);
    for (const auto& [name, table] : tables) {
        const std::string path = (std::filesystem::path(dir) / name).string();
        table.write_file(path);
        log << path << '\n';
    }
    return kExitOk;
}

}  // namespace weaktraj::cli
