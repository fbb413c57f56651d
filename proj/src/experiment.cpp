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

#include "vrmccfr/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "CLI11.hpp"
#include "vrmccfr/cfr.hpp"
#include "vrmccfr/eval.hpp"
#include "vrmccfr/poker.hpp"

namespace vrmccfr {
namespace {

constexpr std::pair<Algo, std::string_view> kAlgoNames[] = {
    {Algo::kCfr, "cfr"},           {Algo::kCfrPlus, "cfr-plus"},
    {Algo::kMccfr, "mccfr"},       {Algo::kMccfrPlus, "mccfr-plus"},
    {Algo::kVrMccfr, "vr-mccfr"},  {Algo::kVrMccfrPlus, "vr-mccfr-plus"},
};

constexpr std::pair<BaselineKind, std::string_view> kBaselineNames[] = {
    {BaselineKind::kNone, "none"},
    {BaselineKind::kLearnedStateAction, "learned-sa"},
    {BaselineKind::kLearnedState, "learned-s"},
    {BaselineKind::kOracle, "oracle"},
};

void append_double(std::string& out, double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::logic_error("to_chars failed");
  out.append(buf, end);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && end == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(Algo algo) {
  for (const auto& [a, name] : kAlgoNames) {
    if (a == algo) return name;
  }
  return "?";
}

std::string_view to_string(BaselineKind kind) {
  for (const auto& [k, name] : kBaselineNames) {
    if (k == kind) return name;
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (const auto& [a, n] : kAlgoNames) {
    if (n == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

BaselineKind parse_baseline(std::string_view name) {
  for (const auto& [k, n] : kBaselineNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown baseline '" + std::string(name) + "'");
}

bool is_sampled(Algo algo) {
  return algo != Algo::kCfr && algo != Algo::kCfrPlus;
}

BaselineKind RunConfig::effective_baseline() const {
  if (baseline) return *baseline;
  return algo == Algo::kVrMccfr || algo == Algo::kVrMccfrPlus
             ? BaselineKind::kLearnedStateAction
             : BaselineKind::kNone;
}

McOptions RunConfig::mc_options() const {
  McOptions o;
  switch (algo) {
    case Algo::kMccfrPlus:
    case Algo::kVrMccfrPlus:
      o = McOptions::mccfr_plus();
      break;
    default:
      o = McOptions::mccfr();
      break;
  }
  o.baseline = {effective_baseline(), bootstrap};
  o.alpha = alpha;
  o.seed = seed;
  return o;
}

Validation validate(const RunConfig& config) {
  Validation v;
  std::shared_ptr<const Game> game;
  try {
    game = make_game(config.game);
  } catch (const std::invalid_argument&) {
    v.errors.push_back("--game: unknown game '" + config.game +
                       "' (expected kuhn or leduc)");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    v.errors.push_back("--alpha: must lie in (0, 1]");
  }
  if (config.iterations < 1) v.errors.push_back("--iters: must be >= 1");
  if (config.cadence == Cadence::kLinear && config.eval_every < 1) {
    v.errors.push_back("--eval-every: must be >= 1");
  }
  if (config.probes < 0 || config.probes == 1) {
    v.errors.push_back("--probes: must be 0 (off) or >= 2");
  }
  if (config.variance_window < 1) {
    v.errors.push_back("--window: must be >= 1");
  }
  const BaselineKind kind = config.effective_baseline();
  const bool vr =
      config.algo == Algo::kVrMccfr || config.algo == Algo::kVrMccfrPlus;
  if (!is_sampled(config.algo)) {
    if (kind != BaselineKind::kNone) {
      v.errors.push_back(
          "--baseline: baselines apply to sampled algorithms only");
    }
    if (config.probes > 0) {
      v.warnings.push_back("--probes ignored for full-traversal algorithms");
    }
  } else if (!vr && kind != BaselineKind::kNone) {
    v.errors.push_back("--baseline: use vr-mccfr or vr-mccfr-plus with a "
                       "baseline");
  } else if (vr && kind == BaselineKind::kNone && !config.allow_no_baseline) {
    v.errors.push_back("--baseline none with " +
                       std::string(to_string(config.algo)) +
                       " needs --allow-no-baseline");
  }
  if (kind == BaselineKind::kOracle) {
    if (!config.bootstrap) {
      v.warnings.push_back("oracle baseline without bootstrapping keeps "
                           "variance from deeper nodes");
    }
    if (game && game->num_histories() > McOptions{}.oracle_history_limit) {
      v.errors.push_back("--baseline oracle: game too large");
    }
  }
  return v;
}

ParsedConfig parse_config(const std::vector<std::string>& args) {
  ParsedConfig out;
  RunConfig& c = out.config;
  CLI::App app{"vrmccfr run"};
  app.set_config("--config", "", "TOML file with the same keys");
  std::string algo(to_string(c.algo));
  std::string baseline;
  std::string cadence = "geometric";
  app.add_option("--game", c.game, "kuhn or leduc");
  app.add_option("--algo", algo,
                 "cfr, cfr-plus, mccfr, mccfr-plus, vr-mccfr, vr-mccfr-plus");
  app.add_option("--baseline", baseline, "none, learned-sa, learned-s, oracle");
  app.add_flag("--bootstrap,!--no-bootstrap", c.bootstrap,
               "propagate baseline-corrected child values");
  app.add_option("--alpha", c.alpha, "baseline decay in (0, 1]");
  app.add_option("--iters", c.iterations, "number of iterations");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--cadence", cadence, "geometric or linear");
  app.add_option("--eval-every", c.eval_every, "linear cadence step");
  app.add_option("--probes", c.probes, "variance probes per node (0 = off)");
  app.add_option("--window", c.variance_window, "variance smoothing window");
  app.add_flag("--allow-no-baseline", c.allow_no_baseline,
               "permit vr-* with baseline none");
  app.add_flag("--timing,!--no-timing", c.timing, "record elapsed_ms");
  app.add_option("--out", c.out_path, "output CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.help = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.validation.errors.push_back(e.what());
    return out;
  }
  try {
    c.algo = parse_algo(algo);
  } catch (const std::invalid_argument& e) {
    out.validation.errors.push_back(std::string("--algo: ") + e.what());
  }
  if (!baseline.empty()) {
    try {
      c.baseline = parse_baseline(baseline);
    } catch (const std::invalid_argument& e) {
      out.validation.errors.push_back(std::string("--baseline: ") + e.what());
    }
  }
  if (cadence == "geometric") {
    c.cadence = Cadence::kGeometric;
  } else if (cadence == "linear") {
    c.cadence = Cadence::kLinear;
  } else {
    out.validation.errors.push_back("--cadence: expected geometric or linear");
  }
  Validation more = validate(c);
  out.validation.errors.insert(out.validation.errors.end(),
                               more.errors.begin(), more.errors.end());
  out.validation.warnings = std::move(more.warnings);
  return out;
}

std::vector<std::int64_t> checkpoints(std::int64_t iterations, Cadence cadence,
                                      std::int64_t eval_every) {
  std::vector<std::int64_t> out;
  if (iterations < 1) return out;
  if (cadence == Cadence::kLinear) {
    if (eval_every < 1) throw ContractError("checkpoints: eval_every < 1");
    for (std::int64_t t = eval_every; t < iterations; t += eval_every) {
      out.push_back(t);
    }
  } else {
    for (std::int64_t decade = 1; decade < iterations; decade *= 10) {
      for (std::int64_t m : {1, 2, 5}) {
        if (decade * m < iterations) out.push_back(decade * m);
      }
    }
  }
  out.push_back(iterations);
  return out;
}

RunArtifacts run_experiment(const RunConfig& config) {
  const Validation v = validate(config);
  if (!v.ok()) throw std::invalid_argument(v.errors.front());
  const std::shared_ptr<const Game> game = make_game(config.game);
  const std::vector<std::int64_t> points =
      checkpoints(config.iterations, config.cadence, config.eval_every);

  using Clock = std::chrono::steady_clock;
  Clock::duration spent{};
  RunArtifacts out;
  auto record = [&](std::int64_t t, const Strategy& average) {
    SeriesRecord r;
    r.iteration = t;
    r.exploitability = exploitability(*game, average, t).exploitability;
    if (config.timing) {
      r.elapsed_ms =
          std::chrono::duration<double, std::milli>(spent).count();
    }
    out.series.push_back(r);
  };

  if (!is_sampled(config.algo)) {
    CfrSolver solver(game, config.algo == Algo::kCfrPlus
                               ? CfrOptions::cfr_plus()
                               : CfrOptions::vanilla());
    std::int64_t t = 0;
    for (std::int64_t point : points) {
      const auto start = Clock::now();
      for (; t < point; ++t) solver.iteration();
      spent += Clock::now() - start;
      record(point, solver.average_strategy());
    }
    out.info_sets = solver.stores().regrets.size();
    return out;
  }

  McSolver solver(game, config.mc_options());
  const bool probing = config.probes > 0;
  // Iterations whose probe result feeds some checkpoint window.
  std::vector<std::int64_t> probe_from;
  std::map<std::int64_t, std::pair<double, std::size_t>> probe_sums;
  auto in_window = [&](std::int64_t t) {
    for (std::int64_t point : points) {
      if (t <= point && t > point - config.variance_window) return true;
    }
    return false;
  };
  McSolver::Observer observer = [&](const Trajectory& traj, Player i) {
    const std::int64_t t = solver.iterations();
    if (!in_window(t)) return;
    ProbeOptions po;
    po.probes = config.probes;
    po.seed = CounterRng(config.seed, static_cast<std::uint64_t>(t),
                         static_cast<std::uint64_t>(index_of(i)),
                         0x7661726961ull)();
    const VarianceRecord vr = variance_probe(solver, traj, i, po);
    auto& [sum, pairs] = probe_sums[t];
    sum += vr.mean_variance * static_cast<double>(vr.pairs);
    pairs += vr.pairs;
  };

  for (std::int64_t point : points) {
    while (solver.iterations() < point) {
      const auto start = Clock::now();
      if (probing) {
        // Probe time is excluded from elapsed_ms.
        Clock::duration probe_time{};
        McSolver::Observer timed = [&](const Trajectory& traj, Player i) {
          const auto ps = Clock::now();
          observer(traj, i);
          probe_time += Clock::now() - ps;
        };
        solver.iteration(timed);
        spent += Clock::now() - start - probe_time;
      } else {
        solver.iteration();
        spent += Clock::now() - start;
      }
    }
    record(point, solver.average_strategy());
    if (probing) {
      double total = 0.0;
      int count = 0;
      for (auto it = probe_sums.lower_bound(point - config.variance_window + 1);
           it != probe_sums.end() && it->first <= point; ++it) {
        if (it->second.second == 0) continue;
        total += it->second.first / static_cast<double>(it->second.second);
        ++count;
      }
      if (count > 0) out.series.back().variance = total / count;
    }
  }
  out.info_sets = solver.stores().regrets.size();
  return out;
}

std::string format_csv(const std::vector<SeriesRecord>& series) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SeriesRecord& r : series) {
    out += std::to_string(r.iteration);
    out += ',';
    append_double(out, r.exploitability);
    out += ',';
    if (r.variance) append_double(out, *r.variance);
    out += ',';
    if (r.elapsed_ms) append_double(out, *r.elapsed_ms);
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const std::string tmp =
      path + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (f) f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f || !f.flush()) {
      fs::remove(tmp, ec);
      throw IoError("cannot write '" + path + "'");
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

void write_csv(const std::vector<SeriesRecord>& series,
               const std::string& path) {
  if (series.empty()) throw ContractError("write_csv: empty series");
  write_text_atomic(path, format_csv(series));
}

std::vector<SeriesRecord> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(f, line) || line != kCsvHeader) {
    throw IoError("'" + path + "': unexpected header");
  }
  std::vector<SeriesRecord> out;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    const auto fields = split(line, ',');
    SeriesRecord r;
    bool ok = fields.size() == 4 && parse_number(fields[0], r.iteration) &&
              parse_number(fields[1], r.exploitability);
    for (int k : {2, 3}) {
      if (!ok || fields[k].empty()) continue;
      double x = 0.0;
      ok = parse_number(fields[k], x);
      (k == 2 ? r.variance : r.elapsed_ms) = x;
    }
    if (!ok) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) +
                    ": malformed record");
    }
    out.push_back(r);
  }
  return out;
}

std::string resolve_output_path(const std::string& path) {
  const char* dir = std::getenv("VRMCCFR_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ContractError("percentile: no values");
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (rank - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<SeedRun>& runs) {
  std::vector<Algo> order;
  std::map<std::pair<Algo, std::int64_t>, std::vector<double>> groups;
  for (const SeedRun& run : runs) {
    if (std::find(order.begin(), order.end(), run.algo) == order.end()) {
      order.push_back(run.algo);
    }
    for (const SeriesRecord& r : run.series) {
      groups[{run.algo, r.iteration}].push_back(r.exploitability);
    }
  }
  std::vector<SummaryRow> out;
  for (Algo algo : order) {
    for (const auto& [key, values] : groups) {
      if (key.first != algo) continue;
      out.push_back({std::string(to_string(algo)), key.second,
                     percentile(values, 50), percentile(values, 5),
                     percentile(values, 95)});
    }
  }
  return out;
}

std::vector<SpeedupRow> speedups(const std::vector<SeedRun>& runs,
                                 Algo reference) {
  auto first_reaching = [](const std::vector<SeriesRecord>& series,
                           double target) -> std::optional<std::int64_t> {
    for (const SeriesRecord& r : series) {
      if (r.exploitability <= target) return r.iteration;
    }
    return std::nullopt;
  };
  std::vector<double> targets;
  for (const SummaryRow& row : summarize(runs)) {
    if (row.algo == to_string(reference)) targets.push_back(row.median);
  }
  std::vector<SpeedupRow> out;
  for (const SeedRun& run : runs) {
    if (run.algo == reference) continue;
    const SeedRun* ref = nullptr;
    for (const SeedRun& other : runs) {
      if (other.algo == reference && other.seed == run.seed) ref = &other;
    }
    if (ref == nullptr) continue;
    for (double target : targets) {
      SpeedupRow row{std::string(to_string(run.algo)), target, run.seed,
                     first_reaching(ref->series, target),
                     first_reaching(run.series, target), std::nullopt};
      if (row.reference_iterations && row.iterations) {
        row.speedup = static_cast<double>(*row.reference_iterations) /
                      static_cast<double>(*row.iterations);
      }
      out.push_back(row);
    }
  }
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string out = "algo,iteration,median,p5,p95\n";
  for (const SummaryRow& r : rows) {
    out += r.algo + ',' + std::to_string(r.iteration) + ',';
    append_double(out, r.median);
    out += ',';
    append_double(out, r.p5);
    out += ',';
    append_double(out, r.p95);
    out += '\n';
  }
  return out;
}

std::string format_speedups(const std::vector<SpeedupRow>& rows) {
  std::string out =
      "algo,target,seed,reference_iterations,iterations,speedup\n";
  for (const SpeedupRow& r : rows) {
    out += r.algo + ',';
    append_double(out, r.target);
    out += ',' + std::to_string(r.seed) + ',';
    if (r.reference_iterations) out += std::to_string(*r.reference_iterations);
    out += ',';
    if (r.iterations) out += std::to_string(*r.iterations);
    out += ',';
    if (r.speedup) append_double(out, *r.speedup);
    out += '\n';
  }
  return out;
}

}  // namespace vrmccfr
