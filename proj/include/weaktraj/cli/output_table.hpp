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


#ifndef WEAKTRAJ_CLI_OUTPUT_TABLE_HPP_
#define WEAKTRAJ_CLI_OUTPUT_TABLE_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace weaktraj::cli {

inline constexpr const char* kDivergedToken = "DIVERGED";

/// 17 significant digits, scientific notation.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

/// CSV table with a fixed header. Cells are stored already formatted.
class OutputTable {
public:
    explicit OutputTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

    /// Throws std::invalid_argument if the width differs from the header.
    void add_row(std::vector<std::string> cells);

    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace weaktraj::cli

#endif  // WEAKTRAJ_CLI_OUTPUT_TABLE_HPP_
