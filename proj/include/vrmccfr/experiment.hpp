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

#ifndef VRMCCFR_EXPERIMENT_HPP_
#define VRMCCFR_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vrmccfr/mccfr.hpp"

namespace vrmccfr {

enum class Algo { kCfr, kCfrPlus, kMccfr, kMccfrPlus, kVrMccfr, kVrMccfrPlus };
enum class Cadence { kGeometric, kLinear };

std::string_view to_string(Algo algo);
std::string_view to_string(BaselineKind kind);
// Throws std::invalid_argument on unknown names.
Algo parse_algo(std::string_view name);
BaselineKind parse_baseline(std::string_view name);

bool is_sampled(Algo algo);

struct RunConfig {
  std::string game = "leduc";
  Algo algo = Algo::kVrMccfrPlus;
  // Unset means "the algorithm's default": learned-sa for vr-*, none otherwise.
  std::optional<BaselineKind> baseline;
  bool bootstrap = true;
  double alpha = 0.5;
  std::int64_t iterations = 1000;
  std::uint64_t seed = 0;
  Cadence cadence = Cadence::kGeometric;
  std::int64_t eval_every = 100;  // linear cadence step
  int probes = 0;                 // 0 disables the variance probe
  std::int64_t variance_window = 100;
  bool allow_no_baseline = false;  // vr-* with baseline none
  bool timing = true;              // elapsed_ms column; blank when off
  std::string out_path;

  BaselineKind effective_baseline() const;
  McOptions mc_options() const;
};

// Collects every problem instead of stopping at the first one.
struct Validation {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

Validation validate(const RunConfig& config);

struct ParsedConfig {
  RunConfig config;
  Validation validation;
  std::string help;  // set when --help was given; nothing else is parsed
};

// Parses `run` flags (no program name). Unknown flags and malformed values
// land in validation.errors. `--config FILE` reads the same keys from TOML.
ParsedConfig parse_config(const std::vector<std::string>& args);

struct SeriesRecord {
  std::int64_t iteration = 0;
  double exploitability = 0.0;
  std::optional<double> variance;
  std::optional<double> elapsed_ms;

  bool operator==(const SeriesRecord&) const = default;
};

struct RunArtifacts {
  std::vector<SeriesRecord> series;
  std::size_t info_sets = 0;  // regret-table entries at the end of the run
};

// Evaluation points: geometric 1, 2, 5, 10, 20, 50, ... or every eval_every
// iterations; the final iteration is always included.
std::vector<std::int64_t> checkpoints(std::int64_t iterations, Cadence cadence,
                                      std::int64_t eval_every);

// Runs the configured solver in memory. Variance at a checkpoint t is the
// mean probe result over iterations (t - variance_window, t].
RunArtifacts run_experiment(const RunConfig& config);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader =
    "iteration,exploitability,variance,elapsed_ms";

// Writes through a temporary file and renames it into place; nothing is left
// behind on failure.
void write_csv(const std::vector<SeriesRecord>& series,
               const std::string& path);
std::vector<SeriesRecord> read_csv(const std::string& path);
std::string format_csv(const std::vector<SeriesRecord>& series);
void write_text_atomic(const std::string& path, const std::string& text);

// Prefixes relative paths with $VRMCCFR_OUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

// Linear interpolation between order statistics.
double percentile(std::vector<double> values, double p);

struct SeedRun {
  Algo algo;
  std::uint64_t seed;
  std::vector<SeriesRecord> series;
};

struct SummaryRow {
  std::string algo;
  std::int64_t iteration;
  double median;
  double p5;
  double p95;
};

std::vector<SummaryRow> summarize(const std::vector<SeedRun>& runs);

struct SpeedupRow {
  std::string algo;
  double target;
  std::uint64_t seed;
  std::optional<std::int64_t> reference_iterations;
  std::optional<std::int64_t> iterations;
  std::optional<double> speedup;  // reference / algo
};

// For every target (the reference algorithm's median at each checkpoint) and
// seed, the first checkpoint at which each run reaches it. Only runs sharing
// a seed with the reference are compared.
std::vector<SpeedupRow> speedups(const std::vector<SeedRun>& runs,
                                 Algo reference);

std::string format_summary(const std::vector<SummaryRow>& rows);
std::string format_speedups(const std::vector<SpeedupRow>& rows);

}  // namespace vrmccfr

#endif  // VRMCCFR_EXPERIMENT_HPP_
