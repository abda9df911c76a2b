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

#include "qpcsim/csv.hpp"

#include <charconv>
#include <fstream>

#include "qpcsim/experiments.hpp"

namespace qpcsim {

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string render_csv(const ScenarioResult& result) {
  std::string out;
  out += result.axis_label;
  for (const auto& [name, values] : result.columns) {
    out += ',';
    out += name;
  }
  out += '\n';

  for (std::size_t row = 0; row < result.axis.size(); ++row) {
    out += format_real(result.axis[row]);
    for (const auto& [name, values] : result.columns) {
      out += ',';
      out += format_real(values[row]);
    }
    out += '\n';
  }

  for (const auto& [key, value] : result.metadata) {
    out += "# " + key + " = " + value + '\n';
  }
  for (const auto& [key, value] : result.summary) {
    out += "# " + key + " = " + format_real(value) + '\n';
  }
  return out;
}

void write_csv(const ScenarioResult& result, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open '" + path + "' for writing");
  file << render_csv(result);
  if (!file) throw io_error("failed while writing '" + path + "'");
}

}  // namespace qpcsim
