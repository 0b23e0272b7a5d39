// Copyright 2026 The bellsim Authors
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

// Command-line front end: run experiments, verify analytic identities, emit
// noise tables, and check circuits against coupling maps.
//
// Exit codes: 0 success; 1 numerical failure or failed check; 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <bellsim/bellsim.hpp>

namespace {

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunOptions {
  std::string config;
  std::string variant = "I";
  long long shots = 4096;
  std::uint64_t seed = 1;
  double depolarizing = -1.0;  // < 0 means off
  std::string channel;
  double channel_p = 1.0;
  double channel_theta = 0.0;
  int workers = 1;
  std::string output;
  std::string format = "json";
};

// CLI11 only processes set_config on the top-level command, so the run
// subcommand applies its file here: each key fills its option unless the
// command line or environment already set it.
void apply_run_config(CLI::App* run, const std::string& path) {
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    CLI::Option* opt = run->get_option_no_throw("--" + item.fullname());
    if (opt == nullptr) {
      throw std::invalid_argument("unknown option in config file: " + item.fullname());
    }
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

int cmd_run(const RunOptions& opt) {
  bellsim::NoiseConfig noise;
  if (opt.depolarizing >= 0.0 && !opt.channel.empty()) {
    throw std::invalid_argument("choose either --depolarizing or --channel, not both");
  }
  if (opt.depolarizing >= 0.0) {
    noise.kind = bellsim::NoiseKind::Depolarizing;
    noise.rate = opt.depolarizing;
  } else if (!opt.channel.empty()) {
    noise.kind = bellsim::NoiseKind::Channel;
    noise.channel.kind = bellsim::parse_channel_kind(opt.channel);
    noise.channel.p = opt.channel_p;
    noise.channel.theta = opt.channel_theta;
    bellsim::make_channel(noise.channel);  // validate parameters up front
  }
  const bellsim::ExperimentPlan plan = bellsim::make_plan(bellsim::parse_variant(opt.variant));
  const bellsim::ExperimentResult result =
      bellsim::run_experiment(plan, opt.shots, opt.seed, noise, opt.workers);
  std::cout << bellsim::human_table(result);
  if (!opt.output.empty()) {
    if (opt.format == "json") {
      write_or_print(opt.output, bellsim::result_to_json(result, plan).dump(2) + "\n");
    } else {
      write_or_print(opt.output, bellsim::result_to_csv(result));
    }
    std::cout << "wrote " << opt.output << "\n";
  }
  return 0;
}

int cmd_verify(double perturb) {
  const auto checks = bellsim::run_identity_suite(perturb);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    std::printf("%s  %-55s residual %.3e (tolerance %.0e)\n", c.pass ? "pass" : "FAIL",
                c.name.c_str(), c.residual, c.tolerance);
    if (!c.pass) ++failed;
  }
  std::printf("%zu/%zu identities hold\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}

int cmd_noise_table(const std::string& channel, int points, const std::string& output) {
  const bellsim::ChannelKind kind = bellsim::parse_channel_kind(channel);
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  write_or_print(output, bellsim::noise_table_csv(kind, points));
  return 0;
}

int cmd_feasibility(const std::string& circuit_path, const std::string& variant,
                    const std::string& map_source, bool strict_direction) {
  bellsim::CircuitSpec circuit;
  if (!circuit_path.empty() && !variant.empty()) {
    throw std::invalid_argument("choose either --circuit or --variant, not both");
  }
  if (!circuit_path.empty()) {
    circuit = bellsim::parse_circuit(read_file(circuit_path), circuit_path);
  } else if (!variant.empty()) {
    const auto plan = bellsim::make_plan(bellsim::parse_variant(variant));
    circuit = plan.circuits.front();  // all circuits of a variant share one topology
  } else {
    throw std::invalid_argument("feasibility needs --circuit or --variant");
  }
  const bellsim::CouplingMap map = bellsim::load_coupling_map(map_source);
  const bellsim::FeasibilityReport report =
      bellsim::check_feasibility(circuit, map, !strict_direction);
  std::printf("circuit %s (%d wires) on map %s (%d qubits): %s\n", circuit.name.c_str(),
              circuit.n_qubits, map.name.c_str(), map.n_qubits,
              report.feasible ? "feasible" : "infeasible");
  if (report.feasible) {
    for (std::size_t w = 0; w < report.assignment.size(); ++w) {
      std::printf("  wire q%zu -> physical qubit %d\n", w, report.assignment[w]);
    }
    return 0;
  }
  for (const auto& v : report.violations) {
    if (v.control_qubit < 0) {
      std::printf("  op %zu: wires q%d q%d cannot be placed (register too large)\n", v.op_index,
                  v.control_wire, v.target_wire);
    } else {
      std::printf("  op %zu: wires q%d q%d land on qubits %d %d with no edge\n", v.op_index,
                  v.control_wire, v.target_wire, v.control_qubit, v.target_qubit);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH Bell-test circuit simulator and experiment harness"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Run a seeded shot experiment");
  run->add_option("--config", run_opt.config, "Read options from a key=value file (flags override)");
  run->add_option("--variant", run_opt.variant, "Experiment variant")
      ->check(CLI::IsMember({"I", "II", "III-quantum", "III-classical", "IV"}))
      ->capture_default_str();
  run->add_option("--shots", run_opt.shots, "Shots per circuit")
      ->check(CLI::Range(2LL, 1LL << 40).description("shots must be >= 2"))
      ->capture_default_str();
  run->add_option("--seed", run_opt.seed, "Root seed for the shot substreams")
      ->envname("BELLSIM_SEED")
      ->capture_default_str();
  run->add_option("--depolarizing", run_opt.depolarizing,
                  "Per-op depolarizing rate (applies a random Pauli per touched qubit)")
      ->check(CLI::Range(0.0, 0.1));
  run->add_option("--channel", run_opt.channel, "State-prep noise channel: B, P, BP, A, GA, D");
  run->add_option("--p", run_opt.channel_p, "Channel probability parameter")
      ->capture_default_str();
  run->add_option("--theta", run_opt.channel_theta, "Channel damping angle")
      ->capture_default_str();
  run->add_option("--workers", run_opt.workers, "Shot sampling threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  run->add_option("--output", run_opt.output, "Write the result document to this path");
  run->add_option("--format", run_opt.format, "Result document format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  double perturb = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "Run the analytic identity suite");
  verify->add_option("--perturb", perturb,
                     "Shift the S diagonalizer angle (self-test hook; nonzero must fail)");

  std::string nt_channel;
  int nt_points = 11;
  std::string nt_output;
  CLI::App* noise_table = app.add_subcommand("noise-table", "Closed form vs computed channel sweep");
  noise_table->add_option("--channel", nt_channel, "Channel: B, P, BP, A, GA, D")->required();
  noise_table->add_option("--points", nt_points, "Grid points")->capture_default_str();
  noise_table->add_option("--output", nt_output, "Write CSV here instead of stdout");

  std::string fz_circuit;
  std::string fz_variant;
  std::string fz_map;
  bool fz_strict = false;
  CLI::App* feas = app.add_subcommand("feasibility", "Check a circuit against a coupling map");
  feas->add_option("--circuit", fz_circuit, "Circuit dump file");
  feas->add_option("--variant", fz_variant, "Use a built-in variant circuit instead of a file");
  feas->add_option("--map", fz_map, "Coupling map file, or builtin qx2-class / vigo-class")
      ->required();
  feas->add_flag("--strict-direction", fz_strict,
                 "Require CNOT directions to match the map exactly");

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      if (!run_opt.config.empty()) apply_run_config(run, run_opt.config);
      return cmd_run(run_opt);
    }
    if (verify->parsed()) return cmd_verify(perturb);
    if (noise_table->parsed()) return cmd_noise_table(nt_channel, nt_points, nt_output);
    if (feas->parsed()) return cmd_feasibility(fz_circuit, fz_variant, fz_map, fz_strict);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
