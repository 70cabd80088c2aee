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


#ifndef WEAKTRAJ_CLI_FIGURES_HPP_
#define WEAKTRAJ_CLI_FIGURES_HPP_

#include <map>
#include <ostream>
#include <string>

#include "weaktraj/cli/output_table.hpp"

namespace weaktraj::cli {

/// Figure datasets, natural units, slits at +-1 (Lloyd source at 1).
///
///   1  double slit P(x_f), point slits and Gaussian slits of width 0.15
///   2  double slit x_w(t) for 33 post-selections, weighted by P / max P
///   3  double slit x_w(T/2) against x_f, plus located poles and zeros
///   4  triple slit x_w(T/2) against x_f, plus its minima
///   5  renormalized which-path lines for e_n = 1/sqrt(2), plus P(x_f)
///   6  Lloyd mirror: P(x_f) point and Gaussian source, x_w(t) weighted by P
///
/// Keys are file names. Throws std::out_of_range for an unknown id.
std::map<std::string, OutputTable> figure_tables(int id);

/// Writes figure_tables(id) into `dir` (created if missing) and lists the files on `log`.
int cmd_figure(int id, const std::string& dir, std::ostream& log, std::ostream& err);

}  // namespace weaktraj::cli

#endif  // WEAKTRAJ_CLI_FIGURES_HPP_
