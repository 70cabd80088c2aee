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


#ifndef WEAKTRAJ_CLI_COMMANDS_HPP_
#define WEAKTRAJ_CLI_COMMANDS_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "weaktraj/cli/scenario_file.hpp"

namespace weaktraj::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitParse = 2,
    kExitValidate = 3,
    kExitZeroWeight = 4,
    kExitOracle = 5,
};

/// Maps a library error raised while running a command to its exit code.
int exit_code_for(const WeakError& e);

/// The subcommands return an exit code; data goes to `out`, warnings to `err`.
/// Parse and library errors propagate as exceptions; run_guarded maps them.
int cmd_trajectory(const ScenarioFile& f, std::optional<std::size_t> times, std::ostream& out, std::ostream& err);
int cmd_probability(const ScenarioFile& f, std::optional<ScreenRange> screen, std::ostream& out, std::ostream& err);
int cmd_reality(const ScenarioFile& f, std::optional<ScreenRange> screen, std::ostream& out, std::ostream& err);
/// `slit` is 1-based.
int cmd_whichpath(const ScenarioFile& f, std::size_t slit, std::optional<std::size_t> times, std::ostream& out,
                  std::ostream& err);

enum class OracleLevel { Fast, Full };

int cmd_oracle_check(const ScenarioFile& f, OracleLevel level, std::ostream& out, std::ostream& err);

/// Runs `body`, printing the error to `err` and returning its exit code on failure.
template <class F>
int run_guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const WeakError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace weaktraj::cli

#endif  // WEAKTRAJ_CLI_COMMANDS_HPP_
