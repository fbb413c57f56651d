// Copyright 2026 The vrmccfr Authors
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

// Command-line runner.
//
//   vrmccfr run --game leduc --algo vr-mccfr-plus --iters 100000 --out a.csv
//   vrmccfr compare --game leduc --algos mccfr,vr-mccfr-plus --seeds 10
//   vrmccfr kuhn-example

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vrmccfr/experiment.hpp"
#include "vrmccfr/worked_example.hpp"

namespace {

using namespace vrmccfr;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

void print_validation(const Validation& v) {
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
}

int run_command(const std::vector<std::string>& args) {
  ParsedConfig parsed = parse_config(args);
  if (!parsed.help.empty()) {
    std::cout << parsed.help;
    return 0;
  }
  print_validation(parsed.validation);
  if (!parsed.validation.ok()) return kUsageError;
  const RunArtifacts artifacts = run_experiment(parsed.config);
  if (parsed.config.out_path.empty()) {
    std::cout << format_csv(artifacts.series);
  } else {
    const std::string path = resolve_output_path(parsed.config.out_path);
    write_csv(artifacts.series, path);
    std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

int compare_command(const std::vector<std::string>& args) {
  CLI::App app{"vrmccfr compare"};
  RunConfig base;
  base.timing = true;
  std::vector<std::string> algos{"mccfr", "vr-mccfr-plus"};
  std::string reference = "mccfr";
  int seeds = 10;
  std::uint64_t first_seed = 0;
  std::string out_dir = "results";
  app.add_option("--game", base.game, "kuhn or leduc");
  app.add_option("--algos", algos, "algorithms to compare")->delimiter(',');
  app.add_option("--reference", reference, "algorithm speedups are relative to");
  app.add_option("--seeds", seeds, "number of paired seeds");
  app.add_option("--first-seed", first_seed, "first seed");
  app.add_option("--iters", base.iterations, "iterations per run");
  app.add_option("--alpha", base.alpha, "baseline decay in (0, 1]");
  app.add_option("--probes", base.probes, "variance probes per node (0 = off)");
  app.add_option("--window", base.variance_window, "variance smoothing window");
  app.add_flag("--timing,!--no-timing", base.timing, "record elapsed_ms");
  app.add_option("--out-dir", out_dir, "output directory");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (seeds < 1) {
    std::cerr << "error: --seeds: must be >= 1\n";
    return kUsageError;
  }
  std::vector<RunConfig> configs;
  Algo ref_algo;
  try {
    ref_algo = parse_algo(reference);
    for (const std::string& name : algos) {
      RunConfig c = base;
      c.algo = parse_algo(name);
      const Validation v = validate(c);
      print_validation(v);
      if (!v.ok()) return kUsageError;
      configs.push_back(c);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::filesystem::path dir(resolve_output_path(out_dir));
  std::vector<SeedRun> runs;
  for (int k = 0; k < seeds; ++k) {
    for (RunConfig c : configs) {
      c.seed = first_seed + static_cast<std::uint64_t>(k);
      const RunArtifacts a = run_experiment(c);
      const std::string name = std::string(to_string(c.algo)) + "_seed" +
                               std::to_string(c.seed) + ".csv";
      write_csv(a.series, (dir / name).string());
      std::cerr << to_string(c.algo) << " seed " << c.seed << ": "
                << a.series.back().exploitability << "\n";
      runs.push_back({c.algo, c.seed, a.series});
    }
  }
  write_text_atomic((dir / "summary.csv").string(),
                    format_summary(summarize(runs)));
  write_text_atomic((dir / "speedup.csv").string(),
                    format_speedups(speedups(runs, ref_algo)));
  std::cerr << "wrote " << dir.string() << "\n";
  return 0;
}

int kuhn_example_command() {
  bool ok = true;
  std::printf("%-10s %22s %22s\n", "quantity", "computed", "expected");
  for (const WorkedValue& v : kuhn_worked_example()) {
    const bool match = std::abs(v.computed - v.expected) <= 1e-12;
    ok = ok && match;
    std::printf("%-10s %22.17g %22.17g%s\n", v.name.c_str(), v.computed,
                v.expected, match ? "" : "  MISMATCH");
  }
  return ok ? 0 : kRuntimeError;
}

void usage() {
  std::cerr << "usage: vrmccfr <run|compare|kuhn-example> [options]\n"
               "       vrmccfr <command> --help\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage();
    return kUsageError;
  }
  const std::string command = argv[1];
  const std::vector<std::string> args(argv + 2, argv + argc);
  try {
    if (command == "run") return run_command(args);
    if (command == "compare") return compare_command(args);
    if (command == "kuhn-example") return kuhn_example_command();
    if (command == "--help" || command == "-h") {
      usage();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  std::cerr << "error: unknown command '" << command << "'\n";
  usage();
  return kUsageError;
}
