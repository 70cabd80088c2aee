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


#ifndef WEAKTRAJ_CLI_SCENARIO_FILE_HPP_
#define WEAKTRAJ_CLI_SCENARIO_FILE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "weaktraj/analysis.hpp"
#include "weaktraj/core.hpp"
#include "weaktraj/oracle.hpp"

namespace weaktraj::cli {

/// Malformed document: bad JSON, wrong type, missing or unknown key.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a scenario document carries. `scenario` is not validated yet.
struct ScenarioFile {
    Scenario scenario;
    Observable observable;
    std::optional<std::size_t> time_count;
    std::optional<ScreenRange> screen;
    std::optional<QuadratureConfig> oracle;

    bool operator==(const ScenarioFile&) const = default;
};

ScenarioFile parse_scenario_file(std::string_view text);
ScenarioFile load_scenario_file(const std::string& path);

/// Canonical JSON; parse_scenario_file(dump_scenario_file(f)) == f.
std::string dump_scenario_file(const ScenarioFile& f);

/// "a:b:N" into a half-open screen range.
ScreenRange parse_screen(std::string_view text);

}  // namespace weaktraj::cli

#endif  // WEAKTRAJ_CLI_SCENARIO_FILE_HPP_
