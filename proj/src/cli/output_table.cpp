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


#include "weaktraj/cli/output_table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace weaktraj::cli {

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0;  // no "-0"
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string format_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(kDivergedToken); }

OutputTable::OutputTable(std::vector<std::string> header) : header_(std::move(header)) {}

void OutputTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
}

void OutputTable::write(std::ostream& out) const {
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            out << (k ? "," : "") << cells[k];
        }
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        line(r);
    }
}

void OutputTable::write_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write(f);
}

}  // namespace weaktraj::cli
