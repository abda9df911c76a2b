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

// End-to-end acceptance suite. Every check runs at a pinned tolerance and
// prints exactly one PASS/FAIL line; the exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qpcsim/cli.hpp"
#include "qpcsim/csv.hpp"
#include "qpcsim/svg.hpp"
#include "support/xml_check.hpp"

using namespace qpcsim;

namespace {

constexpr double kPi = std::numbers::pi;

struct Harness {
  int failures = 0;

  void run(int id, const std::string& name, double budget_s,
           const std::function<void(std::vector<std::string>&, std::string&)>& body) {
    std::vector<std::string> problems;
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(problems, note);
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_s) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds budget %.0f s", elapsed,
                    budget_s);
      problems.emplace_back(buf);
    }

    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
    if (problems.empty()) {
      std::printf("[PASS] %02d %s%s%s (%s)\n", id, name.c_str(),
                  note.empty() ? "" : " -- ", note.c_str(), timing);
    } else {
      ++failures;
      std::printf("[FAIL] %02d %s -- %s (%s)\n", id, name.c_str(), problems[0].c_str(),
                  timing);
      for (std::size_t i = 1; i < problems.size(); ++i) {
        std::printf("       %s\n", problems[i].c_str());
      }
    }
    std::fflush(stdout);
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void expect(std::vector<std::string>& problems, bool ok, const std::string& msg) {
  if (!ok) problems.push_back(msg);
}

const std::vector<double>& column(const ScenarioResult& r, const std::string& name) {
  for (const auto& [key, values] : r.columns) {
    if (key == name) return values;
  }
  throw std::runtime_error("missing column " + name);
}

double summary_value(const ScenarioResult& r, const std::string& name) {
  for (const auto& [key, value] : r.summary) {
    if (key == name) return value;
  }
  throw std::runtime_error("missing summary " + name);
}

/// Evolve to exactly tau by shrinking the step to divide it.
Trajectory evolve_to(const DensityMatrix& start, const GeneratorParams& g, double tau,
                     double max_dt = 1e-3) {
  const auto n = static_cast<std::int64_t>(std::ceil(tau / max_dt - 1e-12));
  return evolve_single(start, g, {tau, tau / static_cast<double>(n), n});
}

/// Swallow the CLI's stdout/stderr while exercising exit codes.
class StreamSilencer {
 public:
  StreamSilencer()
      : out_(std::cout.rdbuf(sink_.rdbuf())), err_(std::cerr.rdbuf(sink_.rdbuf())) {}
  ~StreamSilencer() {
    std::cout.rdbuf(out_);
    std::cerr.rdbuf(err_);
  }

 private:
  std::stringstream sink_;
  std::streambuf* out_;
  std::streambuf* err_;
};

DensityMatrix singlet_state() { return DensityMatrix{MatrixX(singlet_matrix())}; }

void criterion_zero_coupling(std::vector<std::string>& problems, std::string& note) {
  double worst = 0.0;
  for (double theta_deg : {0.0, 90.0}) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::single_dd;
    cfg.alpha = 0.0;
    cfg.theta_deg = theta_deg;
    cfg.grid = {20.0, 1e-3, 100};
    for (double s : column(run_single_dd(cfg), "S")) worst = std::max(worst, s);
  }
  expect(problems, worst < 1e-9, "max S = " + fmt(worst) + " >= 1e-9");
  note = "max S = " + fmt(worst);
}

void criterion_rabi(std::vector<std::string>& problems, std::string& note) {
  const GeneratorParams g = GeneratorParams::normalized(0.0);
  const DensityMatrix start = initial_state({0.0, 0.0});
  double worst = 0.0;
  for (double tau : {kPi / 8.0, kPi / 4.0, kPi / 2.0, 3.0}) {
    const Trajectory traj = evolve_to(start, g, tau);
    const double expected = std::cos(tau) * std::cos(tau);
    const double err = std::abs(traj.states.back().matrix()(0, 0).real() - expected);
    worst = std::max(worst, err);
    expect(problems, err < 1e-8,
           "|sigma11 - cos^2| = " + fmt(err) + " at tau = " + fmt(tau));
  }
  note = "max err = " + fmt(worst);
}

void criterion_dephasing_oracle(std::vector<std::string>& problems, std::string& note) {
  const GeneratorParams g{0.0, 0.0, 1.3};  // no tunneling: time is absolute
  Matrix2 start;
  start << 0.5, 0.5, 0.5, 0.5;
  const DensityMatrix sigma0{MatrixX(start)};
  double worst = 0.0;
  for (double t : {0.5, 2.0, 5.0}) {
    const DensityMatrix out = evolve_exact_oracle(sigma0, g, t);
    const double err =
        std::abs(out.matrix()(0, 1) - Complex(0.5 * std::exp(-1.3 * t / 2.0)));
    worst = std::max(worst, err);
    expect(problems, err < 1e-10, "|sigma12 - analytic| = " + fmt(err) + " at t = " + fmt(t));
  }
  note = "max err = " + fmt(worst);
}

void criterion_oracle_agreement(std::vector<std::string>& problems, std::string& note) {
  const DensityMatrix start2 = initial_state({kPi / 3.0, 0.8});
  const DensityMatrix start4 = singlet_state();
  double worst = 0.0;
  for (double alpha : {0.0, 1.0, 5.0, 20.0}) {
    const GeneratorParams g = GeneratorParams::normalized(alpha);
    for (double tau : {0.5, 1.0, 5.0}) {
      const auto n = static_cast<std::int64_t>(std::llround(tau / 1e-3));
      const TimeGrid grid{tau, 1e-3, n};
      const double err2 = (evolve_single(start2, g, grid).states.back().matrix() -
                           evolve_exact_oracle(start2, g, tau).matrix())
                              .cwiseAbs()
                              .maxCoeff();
      const double err4 = (evolve_pair_one_sided(start4, g, grid).states.back().matrix() -
                           evolve_exact_oracle(start4, g, tau).matrix())
                              .cwiseAbs()
                              .maxCoeff();
      worst = std::max({worst, err2, err4});
      expect(problems, err2 <= 1e-8 && err4 <= 1e-8,
             "entrywise deviation " + fmt(std::max(err2, err4)) + " at alpha = " +
                 fmt(alpha) + ", tau = " + fmt(tau));
    }
  }
  note = "max deviation = " + fmt(worst);
}

void criterion_rate_signatures(std::vector<std::string>& problems, std::string& note) {
  const TimeGrid grid{0.02, 1e-3, 1};
  const auto first_interior_rate = [&](double theta_deg, double alpha) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::single_dd;
    cfg.alpha = alpha;
    cfg.theta_deg = theta_deg;
    cfg.grid = grid;
    return column(run_single_dd(cfg), "R")[1];
  };

  for (double alpha : {1.0, 5.0, 20.0}) {
    const double rate = first_interior_rate(0.0, alpha);
    expect(problems, std::abs(rate) < 5e-2,
           "localized start: |R| = " + fmt(std::abs(rate)) + " at alpha = " + fmt(alpha));
  }
  double prev = 0.0;
  for (double alpha : {1.0, 5.0, 20.0}) {
    const double rate = first_interior_rate(90.0, alpha);
    expect(problems, rate > 0.5,
           "superposition start: R = " + fmt(rate) + " at alpha = " + fmt(alpha));
    expect(problems, rate > prev,
           "superposition rate not increasing at alpha = " + fmt(alpha));
    prev = rate;
  }
  note = "R(theta=90, alpha=20) = " + fmt(prev);
}

void criterion_optimal_coupling(std::vector<std::string>& problems, std::string& note) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::optimal_coupling;
  cfg.alpha_grid = log_grid(0.5, 50.0, 25);
  cfg.grid = {25.0, 1e-3, 10};
  cfg.threshold_level = 0.95;
  const ScenarioResult result = find_optimal_coupling(cfg);

  const double alpha_opt = summary_value(result, "alpha_opt");
  const double tau_opt = summary_value(result, "tau_E_opt");
  const auto& times = column(result, "tau_E");
  expect(problems, alpha_opt >= 2.0 && alpha_opt <= 15.0,
         "alpha_opt = " + fmt(alpha_opt) + " outside [2, 15]");
  expect(problems, tau_opt >= 0.5 && tau_opt <= 2.0,
         "tau_E(alpha_opt) = " + fmt(tau_opt) + " outside [0.5, 2]");
  expect(problems, std::isfinite(times.front()) && times.front() > tau_opt,
         "tau_E(0.5) = " + fmt(times.front()) + " does not exceed the minimum");
  expect(problems, std::isfinite(times.back()) && times.back() > tau_opt,
         "tau_E(50) = " + fmt(times.back()) + " does not exceed the minimum");
  expect(problems,
         alpha_opt != cfg.alpha_grid.front() && alpha_opt != cfg.alpha_grid.back(),
         "minimum sits on the grid boundary");
  note = "alpha_opt = " + fmt(alpha_opt) + ", tau_E = " + fmt(tau_opt);
}

void criterion_strong_coupling(std::vector<std::string>& problems, std::string& note) {
  const auto entropy_at = [](double theta_deg, double alpha, double tau) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::single_dd;
    cfg.alpha = alpha;
    cfg.theta_deg = theta_deg;
    const auto n = static_cast<std::int64_t>(std::llround(tau / 1e-3));
    cfg.grid = {tau, 1e-3, n / 2};
    return column(run_single_dd(cfg), "S").back();
  };

  const double loc10 = entropy_at(0.0, 10.0, 2.0);
  const double loc20 = entropy_at(0.0, 20.0, 2.0);
  const double loc40 = entropy_at(0.0, 40.0, 2.0);
  expect(problems, loc40 < loc20 && loc20 < loc10,
         "localized ordering violated: S = {" + fmt(loc10) + ", " + fmt(loc20) + ", " +
             fmt(loc40) + "} at alpha = {10, 20, 40}");

  const double sup10 = entropy_at(90.0, 10.0, 0.2);
  const double sup20 = entropy_at(90.0, 20.0, 0.2);
  const double sup40 = entropy_at(90.0, 40.0, 0.2);
  expect(problems, sup40 > sup20 && sup20 > sup10,
         "superposition ordering violated: S = {" + fmt(sup10) + ", " + fmt(sup20) +
             ", " + fmt(sup40) + "} at alpha = {10, 20, 40}");
  note = "S(theta=0, tau=2): " + fmt(loc10) + " > " + fmt(loc20) + " > " + fmt(loc40);
}

void criterion_singlet_pair(std::vector<std::string>& problems, std::string& note) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::singlet_pair;
  cfg.alpha = 20.0;
  cfg.grid = {10.0, 1e-3, 10};
  const ScenarioResult result = run_singlet_pair(cfg);

  const double eof0 = column(result, "EoF").front();
  const double s0 = column(result, "S_pair").front();
  const double tau_d = summary_value(result, "tau_D");
  const double tau_e2 = summary_value(result, "tau_E2");
  expect(problems, std::abs(eof0 - 1.0) <= 1e-9, "EoF(0) = " + fmt(eof0));
  expect(problems, s0 < 1e-9, "S_pair(0) = " + fmt(s0));
  expect(problems, std::isfinite(tau_d), "tau_D never reached");
  expect(problems, std::isfinite(tau_e2), "tau_E2 never reached");
  expect(problems, tau_d < tau_e2,
         "tau_D = " + fmt(tau_d) + " not below tau_E2 = " + fmt(tau_e2));
  note = "tau_D = " + fmt(tau_d) + ", tau_E2 = " + fmt(tau_e2) +
         ", ratio = " + fmt(tau_e2 / tau_d);
}

void criterion_measure_compare(std::vector<std::string>& problems, std::string& note) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::measure_compare;
  cfg.alpha = 20.0;
  cfg.grid = {200.0, 1e-3, 100};
  const ScenarioResult result = run_measure_compare(cfg);

  const double d0 = summary_value(result, "D_0");
  const double dmax = summary_value(result, "D_max");
  const double dend = summary_value(result, "D_end");
  const double eof_s = summary_value(result, "EoF_schrodinger_end");
  const double eof_m = summary_value(result, "EoF_measured_end");
  expect(problems, std::abs(d0 - 1.0 / std::sqrt(2.0)) <= 1e-9, "D(0) = " + fmt(d0));
  expect(problems, dmax <= d0 + 1e-12,
         "max D = " + fmt(dmax) + " exceeds D(0) = " + fmt(d0));
  expect(problems, dend < 0.05, "D(200) = " + fmt(dend));
  expect(problems, eof_s < 1e-2, "EoF under continuous evolution ends at " + fmt(eof_s));
  expect(problems, eof_m < 1e-2, "EoF under the projection average ends at " + fmt(eof_m));
  note = "D(0) = " + fmt(d0) + ", D(200) = " + fmt(dend);
}

void criterion_channel_suite(std::vector<std::string>& problems, std::string& note) {
  const DensityMatrix singlet = singlet_state();
  double worst_cross = 0.0;
  for (double alpha : {1.0, 5.0, 20.0}) {
    const GeneratorParams g = GeneratorParams::normalized(alpha);
    for (double tau : {0.0, 0.5, 1.0, 5.0}) {
      const ChoiMatrix j = tomograph(g, tau);
      const CptpReport report = verify_cptp(j);
      const std::string at = " at alpha = " + fmt(alpha) + ", tau = " + fmt(tau);
      expect(problems, report.hermiticity_deviation <= 1e-8,
             "hermiticity " + fmt(report.hermiticity_deviation) + at);
      expect(problems, std::abs(j.mat.trace().real() - 2.0) <= 1e-8,
             "trace " + fmt(j.mat.trace().real()) + at);
      expect(problems, report.min_eigenvalue >= -1e-8,
             "min eigenvalue " + fmt(report.min_eigenvalue) + at);
      expect(problems, report.tp_deviation <= 1e-6,
             "TP deviation " + fmt(report.tp_deviation) + at);

      Matrix2 completeness = Matrix2::Zero();
      for (const Matrix2& op : choi_to_kraus(j).ops) completeness += op.adjoint() * op;
      const double kraus_err =
          (completeness - Matrix2::Identity()).cwiseAbs().maxCoeff();
      expect(problems, kraus_err <= 1e-6, "Kraus completeness " + fmt(kraus_err) + at);

      if (tau > 0.0) {
        const auto n = static_cast<std::int64_t>(std::llround(tau / 1e-3));
        const Trajectory direct = evolve_pair_one_sided(singlet, g, {tau, 1e-3, n});
        const double cross = (apply_one_sided(j, singlet).matrix() -
                              direct.states.back().matrix())
                                 .cwiseAbs()
                                 .maxCoeff();
        worst_cross = std::max(worst_cross, cross);
        expect(problems, cross <= 1e-6, "one-sided contraction off by " + fmt(cross) + at);
      }
    }
  }
  note = "max cross-path deviation = " + fmt(worst_cross);
}

void criterion_measures(std::vector<std::string>& problems, std::string& note) {
  const double pure = von_neumann_entropy(DensityMatrix(MatrixX(projector_left())));
  const double mixed2 =
      von_neumann_entropy(DensityMatrix(MatrixX(0.5 * Matrix2::Identity())));
  const double mixed4 =
      von_neumann_entropy(DensityMatrix(MatrixX(0.25 * Matrix4::Identity())));
  expect(problems, pure <= 1e-12, "entropy of a pure state = " + fmt(pure));
  expect(problems, std::abs(mixed2 - 1.0) <= 1e-12, "S(I2/2) = " + fmt(mixed2));
  expect(problems, std::abs(mixed4 - 2.0) <= 1e-12, "S(I4/4) = " + fmt(mixed4));

  expect(problems, std::abs(concurrence(singlet_state()) - 1.0) <= 1e-12,
         "C(singlet) != 1");
  Matrix4 mixture = Matrix4::Zero();
  mixture(1, 1) = 0.5;
  mixture(2, 2) = 0.5;
  expect(problems, concurrence(DensityMatrix{MatrixX(mixture)}) == 0.0,
         "C(classical mixture) != 0");
  for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    Matrix4 rho = mixture;
    rho(1, 2) = -0.5 * gamma;
    rho(2, 1) = -0.5 * gamma;
    const double c = concurrence(DensityMatrix{MatrixX(rho)});
    expect(problems, std::abs(c - gamma) <= 1e-10,
           "C = " + fmt(c) + " for coherence " + fmt(gamma));
    if (gamma == 0.5) {
      const double eof = entropy_of_formation(DensityMatrix{MatrixX(rho)});
      expect(problems, std::abs(eof - 0.3546) <= 5e-4, "EoF(C=0.5) = " + fmt(eof));
      note = "EoF(C=0.5) = " + fmt(eof);
    }
  }
}

void criterion_formats(std::vector<std::string>& problems, std::string& note) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qpcsim_acceptance";
  fs::create_directories(dir);
  const fs::path csv_a = dir / "a.csv";
  const fs::path csv_b = dir / "b.csv";
  const fs::path svg_path = dir / "plot.svg";

  const auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
  };

  int code_ok = -1, code_usage = -1, code_numeric = -1;
  {
    StreamSilencer quiet;
    code_ok = run_main({"single", "--alpha", "5", "--theta", "90", "--tau-max", "2",
                        "--out", csv_a.string()});
    run_main({"single", "--alpha", "5", "--theta", "90", "--tau-max", "2", "--out",
              csv_b.string()});
    run_main({"singlet", "--tau-max", "2", "--svg", svg_path.string()});
    code_usage = run_main({"single", "--dt", "0.5"});
    code_numeric =
        run_main({"single", "--alpha", "20000", "--dt", "0.01", "--tau-max", "1"});
  }

  expect(problems, code_ok == 0, "valid run exited with " + std::to_string(code_ok));
  expect(problems, code_usage == 1,
         "dt violation exited with " + std::to_string(code_usage));
  expect(problems, code_numeric == 2,
         "unstable run exited with " + std::to_string(code_numeric));

  const std::string a = slurp(csv_a);
  expect(problems, !a.empty() && a == slurp(csv_b), "CSV runs are not byte-identical");

  std::string xml_error;
  const bool well_formed =
      testsupport::xml_well_formed(slurp(svg_path), &xml_error);
  expect(problems, well_formed, "SVG not well-formed: " + xml_error);

  std::error_code ec;
  fs::remove_all(dir, ec);
  note = "exit codes 0/1/2 verified";
}

}  // namespace

int main() {
  Harness h;
  h.run(1, "zero-coupling purity", 1.0, criterion_zero_coupling);
  h.run(2, "tunneling oscillation against the analytic solution", 1.0, criterion_rabi);
  h.run(3, "coherence decay against the superoperator oracle", 1.0,
        criterion_dephasing_oracle);
  h.run(4, "integrator vs superoperator exponential", 10.0, criterion_oracle_agreement);
  h.run(5, "entanglement rate signatures at tau = 0", 5.0, criterion_rate_signatures);
  h.run(6, "optimal coupling search", 30.0, criterion_optimal_coupling);
  h.run(7, "strong-coupling monotonicity", 5.0, criterion_strong_coupling);
  h.run(8, "singlet pair: disentangles before the pair entangles", 10.0,
        criterion_singlet_pair);
  h.run(9, "projection average vs continuous evolution", 60.0, criterion_measure_compare);
  h.run(10, "channel suite: CPTP, Kraus, one-sided contraction", 10.0,
        criterion_channel_suite);
  h.run(11, "measure unit checks", 1.0, criterion_measures);
  h.run(12, "determinism, formats, exit codes", 5.0, criterion_formats);

  if (h.failures == 0) {
    std::printf("all 12 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", h.failures);
  }
  return h.failures;
}
