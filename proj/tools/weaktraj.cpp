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


#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "weaktraj/cli/commands.hpp"
#include "weaktraj/cli/figures.hpp"

namespace {

using namespace weaktraj::cli;

struct FileOptions {
    std::string path;
    bool dump = false;
};

void add_file(CLI::App* cmd, FileOptions& o) {
    cmd->add_option("scenario", o.path, "scenario file (JSON)")->required();
    cmd->add_flag("--dump-scenario", o.dump, "print the parsed scenario in canonical form and exit");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-value trajectories for pre- and post-selected processes"};
    app.require_subcommand(1);

    FileOptions traj_f, prob_f, real_f, which_f, oracle_f;
    std::optional<std::size_t> traj_times, which_times;
    std::string prob_screen, real_screen;
    std::size_t slit = 0;
    int figure_id = 0;
    std::string out_dir = ".";
    std::string level = "fast";

    CLI::App* traj = app.add_subcommand("trajectory", "x_w(t), p_w(t) as CSV");
    add_file(traj, traj_f);
    traj->add_option("--times", traj_times, "number of uniform times in [0, T]");

    CLI::App* prob = app.add_subcommand("probability", "interference curve with tagged extrema as CSV");
    add_file(prob, prob_f);
    prob->add_option("--screen", prob_screen, "a:b:N, half-open");

    CLI::App* real = app.add_subcommand("reality", "screen points with real x_w(t) as JSON");
    add_file(real, real_f);
    real->add_option("--screen", real_screen, "a:b:N, half-open");

    CLI::App* which = app.add_subcommand("whichpath", "spin-tagged weak trajectory of one slit as CSV");
    add_file(which, which_f);
    which->add_option("--slit", slit, "slit number, from 1")->required();
    which->add_option("--times", which_times, "number of uniform times in [0, T]");

    CLI::App* fig = app.add_subcommand("figure", "write a figure dataset");
    fig->add_option("id", figure_id, "figure id 1..6")->required();
    fig->add_option("--out", out_dir, "output directory");

    CLI::App* oracle = app.add_subcommand("oracle-check", "closed forms against the quadrature oracle as JSON");
    add_file(oracle, oracle_f);
    oracle->add_option("--level", level, "fast or full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    const auto with_file = [](const FileOptions& o, auto&& body) {
        return run_guarded(std::cerr, [&] {
            const ScenarioFile f = load_scenario_file(o.path);
            if (o.dump) {
                weaktraj::validate_scenario(f.scenario);
                std::cout << dump_scenario_file(f);
                return static_cast<int>(kExitOk);
            }
            return body(f);
        });
    };
    const auto screen = [](const std::string& s) {
        return s.empty() ? std::nullopt : std::optional(parse_screen(s));
    };

    if (*traj) {
        return with_file(traj_f, [&](const ScenarioFile& f) { return cmd_trajectory(f, traj_times, std::cout, std::cerr); });
    }
    if (*prob) {
        return with_file(prob_f, [&](const ScenarioFile& f) { return cmd_probability(f, screen(prob_screen), std::cout, std::cerr); });
    }
    if (*real) {
        return with_file(real_f, [&](const ScenarioFile& f) { return cmd_reality(f, screen(real_screen), std::cout, std::cerr); });
    }
    if (*which) {
        return with_file(which_f, [&](const ScenarioFile& f) { return cmd_whichpath(f, slit, which_times, std::cout, std::cerr); });
    }
    if (*fig) {
        return run_guarded(std::cerr, [&] { return cmd_figure(figure_id, out_dir, std::cout, std::cerr); });
    }
    if (*oracle) {
        return with_file(oracle_f, [&](const ScenarioFile& f) {
            if (level != "fast" && level != "full") {
                throw ParseError("--level must be fast or full");
            }
            return cmd_oracle_check(f, level == "fast" ? OracleLevel::Fast : OracleLevel::Full, std::cout, std::cerr);
        });
    }
    return kExitFailure;
}
