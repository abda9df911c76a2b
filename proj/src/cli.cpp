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

#include "qpcsim/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qpcsim/csv.hpp"
#include "qpcsim/svg.hpp"

namespace qpcsim {

namespace {

double parse_double(const std::string& flag, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument(flag + ": not a number: '" + text + "'");
  }
  return value;
}

std::int64_t parse_int(const std::string& flag, const std::string& text) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument(flag + ": not an integer: '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// Grid syntax: "start:stop:N" (linear), "start:stop:Nlog" (log-spaced),
/// or an explicit comma list "v1,v2,...".
std::vector<double> parse_alpha_grid(const std::string& spec) {
  const std::string flag = "--alpha-grid";
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument(flag + ": expected start:stop:N, got '" + spec + "'");
    }
    std::string count = parts[2];
    bool log_spaced = false;
    if (count.size() >= 3 && count.substr(count.size() - 3) == "log") {
      log_spaced = true;
      count = count.substr(0, count.size() - 3);
    }
    const double start = parse_double(flag, parts[0]);
    const double stop = parse_double(flag, parts[1]);
    const auto n = parse_int(flag, count);
    if (n < 2 || n > 100000) {
      throw std::invalid_argument(flag + ": point count must lie in [2, 100000]");
    }
    return log_spaced ? log_grid(start, stop, static_cast<int>(n))
                      : linear_grid(start, stop, static_cast<int>(n));
  }
  std::vector<double> values;
  for (const std::string& part : split(spec, ',')) {
    values.push_back(parse_double(flag, part));
  }
  return values;
}

bool uses_angles(Scenario s) {
  return s == Scenario::single_dd || s == Scenario::optimal_coupling;
}

bool uses_level(Scenario s) {
  return s == Scenario::single_dd || s == Scenario::optimal_coupling;
}

bool uses_thorough(Scenario s) {
  return s == Scenario::singlet_pair || s == Scenario::measure_compare;
}

void reject_inapplicable(const ScenarioConfig& cfg, const std::string& flag) {
  const std::string name = scenario_name(cfg.scenario);
  if (flag == "--alpha" && cfg.scenario == Scenario::optimal_coupling) {
    throw std::invalid_argument("--alpha is not used by 'optimal'; use --alpha-grid");
  }
  if (flag == "--alpha-grid" && cfg.scenario != Scenario::optimal_coupling) {
    throw std::invalid_argument("--alpha-grid is only used by 'optimal'");
  }
  if ((flag == "--theta" || flag == "--phi") && !uses_angles(cfg.scenario)) {
    throw std::invalid_argument(flag + " is not used by '" + name + "'");
  }
  if (flag == "--level" && !uses_level(cfg.scenario)) {
    throw std::invalid_argument("--level is not used by '" + name + "'");
  }
  if (flag == "--thorough" && !uses_thorough(cfg.scenario)) {
    throw std::invalid_argument("--thorough is not used by '" + name + "'");
  }
}

/// Apply one key/value pair; `flag` is the long name with leading dashes.
void apply_setting(ScenarioConfig& cfg, const std::string& flag, const std::string& value) {
  reject_inapplicable(cfg, flag);
  if (flag == "--alpha") {
    cfg.alpha = parse_double(flag, value);
  } else if (flag == "--alpha-grid") {
    cfg.alpha_grid = parse_alpha_grid(value);
  } else if (flag == "--theta") {
    cfg.theta_deg = parse_double(flag, value);
  } else if (flag == "--phi") {
    cfg.phi_deg = parse_double(flag, value);
  } else if (flag == "--delta") {
    cfg.delta = parse_double(flag, value);
  } else if (flag == "--tau-max") {
    cfg.grid.tau_max = parse_double(flag, value);
  } else if (flag == "--dt") {
    cfg.grid.dt = parse_double(flag, value);
  } else if (flag == "--stride") {
    cfg.grid.stride = parse_int(flag, value);
  } else if (flag == "--level") {
    cfg.threshold_level = parse_double(flag, value);
  } else if (flag == "--out") {
    cfg.out_csv = value;
  } else if (flag == "--svg") {
    cfg.out_svg = value;
  } else if (flag == "--thorough") {
    if (value == "true") {
      cfg.thorough = true;
    } else if (value == "false") {
      cfg.thorough = false;
    } else {
      throw std::invalid_argument("--thorough: expected true or false, got '" + value + "'");
    }
  } else {
    throw std::invalid_argument("unknown flag: " + flag);
  }
}

std::string key_to_flag(const std::string& key) {
  std::string flag = "--" + key;
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return flag;
}

void apply_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw io_error("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config file '" + path + "' must hold a flat JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = key_to_flag(key);
    if (flag == "--alpha-grid" && value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += format_real(v.get<double>());
      }
      apply_setting(cfg, flag, joined);
    } else if (value.is_boolean()) {
      apply_setting(cfg, flag, value.get<bool>() ? "true" : "false");
    } else if (value.is_string()) {
      apply_setting(cfg, flag, value.get<std::string>());
    } else if (value.is_number()) {
      apply_setting(cfg, flag, format_real(value.get<double>()));
    } else {
      throw std::invalid_argument("config key '" + key + "' has an unsupported type");
    }
  }
}

ScenarioConfig defaults_for(Scenario scenario) {
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  switch (scenario) {
    case Scenario::singlet_pair:
      cfg.alpha = 20.0;
      break;
    case Scenario::measure_compare:
      cfg.alpha = 20.0;
      cfg.grid.tau_max = 200.0;
      break;
    default:
      break;
  }
  return cfg;
}

PlotOptions plot_options_for(const ScenarioConfig& cfg) {
  PlotOptions options;
  switch (cfg.scenario) {
    case Scenario::single_dd:
      options.series = {"S", "R"};
      options.y_label = "bits";
      break;
    case Scenario::optimal_coupling:
      options.series = {"tau_E"};
      options.y_label = "entanglement time";
      break;
    case Scenario::singlet_pair:
      options.series = {"EoF", "S_pair"};
      options.y_label = "bits";
      break;
    case Scenario::measure_compare:
      options.series = {"D"};
      options.y_label = "Frobenius distance";
      break;
    case Scenario::tomography_dump:
      options.series = {"min_eig", "tp_dev", "herm_dev"};
      options.y_label = "diagnostic";
      break;
  }
  return options;
}

}  // namespace

ScenarioConfig parse_invocation(const std::vector<std::string>& argv) {
  if (argv.empty()) {
    throw std::invalid_argument("missing subcommand\n" + usage_text());
  }
  ScenarioConfig cfg = defaults_for(parse_scenario(argv[0]));

  // Collect the flags first so the config file can be applied before any
  // explicit flag, whatever their order on the command line.
  std::vector<std::pair<std::string, std::string>> settings;
  std::string config_path;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& flag = argv[i];
    if (flag.rfind("--", 0) != 0) {
      throw std::invalid_argument("expected a flag, got '" + flag + "'");
    }
    if (flag == "--thorough") {
      settings.emplace_back(flag, "true");
      continue;
    }
    if (i + 1 >= argv.size()) {
      throw std::invalid_argument(flag + ": missing value");
    }
    const std::string& value = argv[++i];
    if (flag == "--config") {
      config_path = value;
    } else {
      settings.emplace_back(flag, value);
    }
  }

  if (!config_path.empty()) apply_config_file(cfg, config_path);
  for (const auto& [flag, value] : settings) apply_setting(cfg, flag, value);

  cfg.validate();
  return cfg;
}

std::vector<std::string> render_flags(const ScenarioConfig& cfg) {
  std::vector<std::string> out{scenario_name(cfg.scenario)};
  auto push = [&out](const std::string& flag, const std::string& value) {
    out.push_back(flag);
    out.push_back(value);
  };
  if (cfg.scenario == Scenario::optimal_coupling) {
    std::string joined;
    for (double v : cfg.alpha_grid) {
      if (!joined.empty()) joined += ',';
      joined += format_real(v);
    }
    push("--alpha-grid", joined);
  } else {
    push("--alpha", format_real(cfg.alpha));
  }
  if (uses_angles(cfg.scenario)) {
    push("--theta", format_real(cfg.theta_deg));
    push("--phi", format_real(cfg.phi_deg));
  }
  push("--delta", format_real(cfg.delta));
  push("--tau-max", format_real(cfg.grid.tau_max));
  push("--dt", format_real(cfg.grid.dt));
  push("--stride", std::to_string(cfg.grid.stride));
  if (uses_level(cfg.scenario)) push("--level", format_real(cfg.threshold_level));
  if (uses_thorough(cfg.scenario) && cfg.thorough) out.push_back("--thorough");
  if (!cfg.out_csv.empty()) push("--out", cfg.out_csv);
  if (!cfg.out_svg.empty()) push("--svg", cfg.out_svg);
  return out;
}

std::string usage_text() {
  return
      "usage: qpcsim <subcommand> [flags]\n"
      "\n"
      "subcommands:\n"
      "  single    entropy and entanglement rate of the monitored dot\n"
      "  optimal   entanglement time across a coupling grid (theta = 0)\n"
      "  singlet   dot pair from the singlet with one side monitored\n"
      "  compare   Frobenius distance to the projection-averaged start\n"
      "  tomo      channel matrices and CPTP diagnostics over time\n"
      "\n"
      "flags (not every subcommand uses every flag):\n"
      "  --alpha <x>        coupling gamma_d/omega0 (single/singlet/compare/tomo)\n"
      "  --alpha-grid <g>   start:stop:N, start:stop:Nlog, or v1,v2,... (optimal)\n"
      "  --theta <deg>      initial polar angle (single/optimal)\n"
      "  --phi <deg>        initial azimuthal angle (single/optimal)\n"
      "  --delta <x>        detuning epsilon/omega0 (default 0)\n"
      "  --tau-max <x>      time horizon in tau = omega0 t\n"
      "  --dt <x>           integration step in tau (max 0.01)\n"
      "  --stride <n>       output decimation\n"
      "  --level <x>        entanglement-time threshold (single/optimal)\n"
      "  --thorough         cross-check every sample (singlet/compare)\n"
      "  --out <path>       write the series as CSV\n"
      "  --svg <path>       write a line plot as SVG\n"
      "  --config <path>    flat JSON file of flag values; flags override\n";
}

int run_main(const std::vector<std::string>& argv) {
  if (!argv.empty() && (argv[0] == "--help" || argv[0] == "-h" || argv[0] == "help")) {
    std::cout << usage_text();
    return 0;
  }
  try {
    const ScenarioConfig cfg = parse_invocation(argv);
    const ScenarioResult result = run_scenario(cfg);

    std::cout << "scenario: " << scenario_name(cfg.scenario) << '\n';
    for (const auto& [key, value] : result.summary) {
      std::cout << key << " = " << format_real(value) << '\n';
    }
    if (!cfg.out_csv.empty()) {
      write_csv(result, cfg.out_csv);
      std::cout << "wrote " << cfg.out_csv << '\n';
    }
    if (!cfg.out_svg.empty()) {
      write_svg_plot(result, cfg.out_svg, plot_options_for(cfg));
      std::cout << "wrote " << cfg.out_svg << '\n';
    }
    return 0;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qpcsim
