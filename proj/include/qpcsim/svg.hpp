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

namespace qpcsim {

struct ScenarioResult;

struct PlotOptions {
  std::string x_label;                // defaults to the result's axis label
  std::string y_label;
  std::vector<std::string> series;    // empty = every column
};

/// Self-contained 800x600 SVG line chart: linear axes with labeled ticks,
/// one polyline per selected series, and a legend. The viewport is the
/// data bounding box with a 5% margin. Non-finite samples break the line.
std::string render_svg_plot(const ScenarioResult& result, const PlotOptions& options);

/// Render and write; unwritable sinks raise io_error, an empty selection
/// raises invalid_argument.
void write_svg_plot(const ScenarioResult& result, const std::string& path,
                    const PlotOptions& options);

}  // namespace qpcsim
