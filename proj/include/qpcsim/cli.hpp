// Copyright 2026 The qpcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "qpcsim/experiments.hpp"

namespace qpcsim {

// Command-line front end. Subcommands: single, optimal, singlet, compare,
// tomo. Angles are taken in degrees here and converted at this boundary
// only. A flat JSON config file (keys = long flag names with underscores)
// may provide any flag's value; explicit flags win.

/// argv without the program name: {"single", "--theta", "90", ...}.
/// Unknown flags, malformed values, and flags a subcommand does not use
/// are rejected with a message naming the flag.
ScenarioConfig parse_invocation(const std::vector<std::string>& argv);

/// The flag list that parses back to exactly this configuration.
std::vector<std::string> render_flags(const ScenarioConfig& cfg);

std::string usage_text();

/// Exit code 0 on success, 1 on usage/config/IO errors, 2 on numerical
/// failure (positivity or convergence), with a diagnostic on stderr.
int run_main(const std::vector<std::string>& argv);

}  // namespace qpcsim
