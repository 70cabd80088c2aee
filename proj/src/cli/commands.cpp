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


#include "weaktraj/cli/commands.hpp"

#include <algorithm>

#include "json.hpp"
#include "weaktraj/cli/output_table.hpp"
#include "weaktraj/trajectories.hpp"
#include "weaktraj/weights.hpp"

namespace weaktraj::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kDefaultTimes = 101;

std::vector<double> time_grid(const ScenarioFile& f, std::optional<std::size_t> override_count) {
    const std::size_t n = override_count.value_or(f.time_count.value_or(kDefaultTimes));
    if (n < 2) {
        throw ParseError("need at least 2 time samples");
    }
    return uniform_times(f.scenario.params.horizon, n);
}

ScreenRange screen_of(const ScenarioFile& f, std::optional<ScreenRange> override_range) {
    if (override_range) {
        return *override_range;
    }
    if (!f.screen) {
        throw ParseError("no screen grid: pass --screen a:b:N or add screen_grid to the file");
    }
    return *f.screen;
}

std::optional<double> re(const std::optional<Complex>& c) { return c ? std::optional(c->real()) : std::nullopt; }
std::optional<double> im(const std::optional<Complex>& c) { return c ? std::optional(c->imag()) : std::nullopt; }

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace

int exit_code_for(const WeakError& e) {
    switch (e.code()) {
        case ErrorCode::ZeroWeight:
            return kExitZeroWeight;
        case ErrorCode::NonConvergent:
            return kExitOracle;
        default:
            return kExitValidate;
    }
}

int cmd_trajectory(const ScenarioFile& f, std::optional<std::size_t> times, std::ostream& out, std::ostream& err) {
    const ValidatedScenario v = validate_scenario(f.scenario);
    const WeakValueSeries ws = weak_trajectory({v, time_grid(f, times), f.observable});
    OutputTable table({"t", "re_xw", "im_xw", "re_pw", "im_pw", "diverged"});
    for (std::size_t k = 0; k < ws.size(); ++k) {
        table.add_row({format_number(ws.times[k]), format_number(re(ws.position[k])), format_number(im(ws.position[k])),
                       format_number(re(ws.momentum[k])), format_number(im(ws.momentum[k])),
                       ws.diverged(k) ? "1" : "0"});
    }
    table.write(out);
    if (const std::size_t d = ws.diverged_count()) {
        err << "warning: " << d << " of " << ws.size()
            << " samples diverged; the transition amplitude vanishes at this post-selection\n";
    }
    return kExitOk;
}

int cmd_probability(const ScenarioFile& f, std::optional<ScreenRange> screen, std::ostream& out, std::ostream&) {
    const ValidatedScenario v = validate_scenario(f.scenario);
    const InterferenceCurve c = interference_curve(v, screen_of(f, screen).points());

    struct Row {
        double x;
        double p;
        const Extremum* e;
    };
    std::vector<Row> rows;
    for (std::size_t k = 0; k < c.xf.size(); ++k) {
        rows.push_back({c.xf[k], c.probability[k], nullptr});
    }
    for (const Extremum& e : c.extrema) {
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.x == e.x_f; });
        if (it != rows.end()) {
            it->e = &e;
        } else {
            rows.push_back({e.x_f, e.probability, &e});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x < b.x; });

    OutputTable table({"x_f", "prob", "is_extremum", "extremum_kind"});
    for (const Row& r : rows) {
        const char* kind = r.e == nullptr ? "none" : r.e->kind == Extremum::Kind::Max ? "max" : "min";
        table.add_row({format_number(r.x), format_number(r.p), r.e ? "1" : "0", kind});
    }
    table.write(out);
    return kExitOk;
}

int cmd_reality(const ScenarioFile& f, std::optional<ScreenRange> screen, std::ostream& out, std::ostream&) {
    const ValidatedScenario v = validate_scenario(f.scenario);
    const RealityReport r = reality_points(v, screen_of(f, screen));
    json doc;
    if (r.everywhere_real) {
        doc["real_points"] = "ALL";
        doc["max_imag_xw"] = json::array();
    } else {
        doc["real_points"] = json::array();
        doc["max_imag_xw"] = json::array();
        for (const RealPoint& p : r.real_points) {
            doc["real_points"].push_back(p.x_f);
            doc["max_imag_xw"].push_back(p.max_imag_xw);
        }
    }
    doc["excluded_zeros"] = r.excluded_zeros;
    out << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_whichpath(const ScenarioFile& f, std::size_t slit, std::optional<std::size_t> times, std::ostream& out,
                  std::ostream&) {
    const ValidatedScenario v = validate_scenario(f.scenario);
    if (!std::holds_alternative<SpinTagged>(v.post())) {
        throw WeakError(ErrorCode::InvalidSelection, "whichpath needs a spin_tagged post-selection");
    }
    const std::size_t n = std::get<SpinTagged>(v.post()).tags.size();
    if (slit == 0 || slit > n) {
        throw WeakError(ErrorCode::InvalidSelection, "--slit must be in 1.." + std::to_string(n));
    }
    const std::vector<double> ts = time_grid(f, times);
    // Throws ZeroWeight before any output is written.
    renormalized_which_path(v, slit - 1, ts.front());
    OutputTable table({"t", "re_xw_n", "im_xw_n", "re_renorm", "im_renorm"});
    for (double t : ts) {
        const Complex raw = which_path_weak_value(v, slit - 1, t);
        const Complex ren = renormalized_which_path(v, slit - 1, t);
        table.add_row({format_number(t), format_number(raw.real()), format_number(raw.imag()), format_number(ren.real()),
                       format_number(ren.imag())});
    }
    table.write(out);
    return kExitOk;
}

int cmd_oracle_check(const ScenarioFile& f, OracleLevel level, std::ostream& out, std::ostream& err) {
    const ValidatedScenario v = validate_scenario(f.scenario);
    if (!std::holds_alternative<DiscreteSlits>(v.pre()) || !v.final_position()) {
        throw WeakError(ErrorCode::Unsupported, "oracle-check covers slit pre-selections with a position-type post");
    }
    const bool fast = level == OracleLevel::Fast;
    const double tolerance = v.half_line() ? 1e-6 : 1e-8;
    QuadratureConfig cfg;
    if (f.oracle) {
        cfg = *f.oracle;
    } else {
        if (!v.half_line() && fast) {
            cfg = QuadratureConfig::full_line();
        }
        cfg.tolerance = tolerance;
    }

    std::vector<double> screen{*v.final_position()};
    // full adds up to 8 screen points from the file's screen grid.
    if (f.screen && !fast) {
        const std::vector<double> pts = f.screen->points();
        const std::size_t stride = std::max<std::size_t>(1, (pts.size() + 7) / 8);
        for (std::size_t k = 0; k < pts.size(); k += stride) {
            screen.push_back(pts[k]);
        }
    }
    const std::size_t nt = fast ? 5 : 20;
    const double T = v.params().horizon;
    std::vector<double> times;
    for (std::size_t k = 0; k < nt; ++k) {
        times.push_back(T * static_cast<double>(k + 1) / static_cast<double>(nt + 1));
    }

    json entries = json::array();
    double worst = 0.0;
    std::size_t failed = 0, skipped = 0;
    for (double xf : screen) {
        const ValidatedScenario s = with_final_position(v, xf);
        const WeakValueSeries closed = weak_trajectory({s, times, Observable{}});
        if (closed.diverged_count() > 0) {
            entries.push_back({{"x_f", xf}, {"status", "skipped"}, {"reason", "destructive post-selection"}});
            ++skipped;
            continue;
        }
        for (std::size_t k = 0; k < times.size(); ++k) {
            json e = {{"x_f", xf}, {"t", times[k]}, {"closed_form", complex_json(*closed.position[k])}};
            try {
                // full escalates up to two extra levels before reporting non-convergence.
                QuadratureConfig c = cfg;
                OracleEstimate q;
                for (int extra = 0;; ++extra) {
                    try {
                        q = quadrature_weak_position(s, times[k], c);
                        break;
                    } catch (const WeakError& ex) {
                        if (fast || extra == 2 || ex.code() != ErrorCode::NonConvergent) {
                            throw;
                        }
                        ++c.richardson_levels;
                    }
                }
                e["levels"] = q.levels.size();
                const double r = std::abs(q.value - *closed.position[k]) / std::max(1.0, std::abs(*closed.position[k]));
                worst = std::max(worst, r);
                e["oracle"] = complex_json(q.value);
                e["error_estimate"] = q.error_estimate;
                e["residual"] = r;
                e["status"] = r <= tolerance ? "ok" : "fail";
                failed += r <= tolerance ? 0 : 1;
            } catch (const WeakError& ex) {
                e["status"] = "fail";
                e["error"] = ex.what();
                ++failed;
            }
            entries.push_back(std::move(e));
        }
    }
    const json doc = {{"level", fast ? "fast" : "full"}, {"tolerance", tolerance}, {"max_residual", worst},
                      {"failed", failed},                {"skipped", skipped},     {"entries", entries}};
    out << doc.dump(2) << '\n';
    if (skipped > 0) {
        err << "warning: " << skipped << " destructive post-selection(s) skipped\n";
    }
    return failed == 0 ? kExitOk : kExitOracle;
}

}  // namespace weaktraj::cli
