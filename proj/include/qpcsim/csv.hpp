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

namespace qpcsim {

struct ScenarioResult;

/// Shortest decimal representation that round-trips to the same double.
std::string format_real(double value);

/// CSV document: header, data rows, then a '#'-prefixed comment block
/// echoing the resolved configuration and the summary scalars. UTF-8, LF
/// line endings, byte-identical for identical results.
std::string render_csv(const ScenarioResult& result);

/// Render and write; unwritable sinks raise io_error.
void write_csv(const ScenarioResult& result, const std::string& path);

}  // namespace qpcsim
