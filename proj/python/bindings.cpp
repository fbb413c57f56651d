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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vrmccfr/cfr.hpp"
#include "vrmccfr/eval.hpp"
#include "vrmccfr/experiment.hpp"
#include "vrmccfr/mccfr.hpp"
#include "vrmccfr/poker.hpp"
#include "vrmccfr/strategy.hpp"
#include "vrmccfr/worked_example.hpp"

namespace py = pybind11;

namespace vrmccfr {
namespace {

using Policy = std::map<std::string, std::vector<double>>;

// "P1:K?B" style keys.
Policy to_policy(const Game& game, const Strategy& source) {
  Policy out;
  const TabularStrategy table = snapshot(game, source);
  for (const auto& [key, probs] : table.table()) {
    out[std::string(to_string(key.player)) + ":" + key.observation] = probs;
  }
  return out;
}

RunConfig make_config(const std::string& game, const std::string& algo,
                      std::optional<std::string> baseline, bool bootstrap,
                      double alpha, std::int64_t iterations,
                      std::uint64_t seed, int probes, std::int64_t window,
                      bool allow_no_baseline) {
  RunConfig c;
  c.game = game;
  c.algo = parse_algo(algo);
  if (baseline) c.baseline = parse_baseline(*baseline);
  c.bootstrap = bootstrap;
  c.alpha = alpha;
  c.iterations = iterations;
  c.seed = seed;
  c.probes = probes;
  c.variance_window = window;
  c.allow_no_baseline = allow_no_baseline;
  c.timing = false;
  const Validation v = validate(c);
  if (!v.ok()) {
    std::string msg;
    for (const auto& e : v.errors) msg += (msg.empty() ? "" : "; ") + e;
    throw std::invalid_argument(msg);
  }
  return c;
}

class PyCfrSolver {
 public:
  PyCfrSolver(std::shared_ptr<const Game> game, bool plus)
      : solver_(std::move(game),
                plus ? CfrOptions::cfr_plus() : CfrOptions::vanilla()) {}
  void run(std::int64_t n) {
    py::gil_scoped_release release;
    solver_.run(n);
  }
  std::int64_t iterations() const { return solver_.iterations(); }
  double exploitability() const {
    return vrmccfr::exploitability(solver_.game(), solver_.average_strategy())
        .exploitability;
  }
  Policy average_policy() const {
    return to_policy(solver_.game(), solver_.average_strategy());
  }

 private:
  CfrSolver solver_;
};

class PyMcSolver {
 public:
  explicit PyMcSolver(const RunConfig& c)
      : solver_(make_game(c.game), c.mc_options()) {}
  void run(std::int64_t n) {
    py::gil_scoped_release release;
    solver_.run(n);
  }
  std::int64_t iterations() const { return solver_.iterations(); }
  std::size_t num_info_sets() const {
    return solver_.stores().regrets.size();
  }
  double exploitability() const {
    return vrmccfr::exploitability(solver_.game(), solver_.average_strategy())
        .exploitability;
  }
  Policy average_policy() const {
    return to_policy(solver_.game(), solver_.average_strategy());
  }

 private:
  McSolver solver_;
};

}  // namespace
}  // namespace vrmccfr

PYBIND11_MODULE(_core, m) {
  using namespace vrmccfr;
  m.doc() = "Variance-reduced Monte Carlo CFR for small poker games.";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<NumericError>(m, "NumericError",
                                       PyExc_ArithmeticError);

  py::class_<Game, std::shared_ptr<Game>>(m, "Game")
      .def_property_readonly("name",
                             [](const Game& g) { return std::string(g.name()); })
      .def_property_readonly("num_histories", &Game::num_histories)
      .def_property_readonly("min_utility", &Game::min_utility)
      .def_property_readonly("max_utility", &Game::max_utility)
      .def("__repr__", [](const Game& g) {
        return "<Game " + std::string(g.name()) + ">";
      });

  m.def(
      "make_game",
      [](const std::string& name) {
        return std::const_pointer_cast<Game>(make_game(name));
      },
      py::arg("name"));

  py::class_<SeriesRecord>(m, "SeriesRecord")
      .def(py::init([](std::int64_t it, double e, std::optional<double> v,
                       std::optional<double> ms) {
             return SeriesRecord{it, e, v, ms};
           }),
           py::arg("iteration"), py::arg("exploitability"),
           py::arg("variance") = std::nullopt,
           py::arg("elapsed_ms") = std::nullopt)
      .def_readwrite("iteration", &SeriesRecord::iteration)
      .def_readwrite("exploitability", &SeriesRecord::exploitability)
      .def_readwrite("variance", &SeriesRecord::variance)
      .def_readwrite("elapsed_ms", &SeriesRecord::elapsed_ms)
      .def(py::self == py::self)
      .def("__repr__", [](const SeriesRecord& r) {
        return "SeriesRecord(iteration=" + std::to_string(r.iteration) +
               ", exploitability=" + std::to_string(r.exploitability) + ")";
      });

  py::class_<PyCfrSolver>(m, "CfrSolver")
      .def(py::init([](std::shared_ptr<Game> g, bool plus) {
             return PyCfrSolver(std::move(g), plus);
           }),
           py::arg("game"), py::arg("plus") = false)
      .def("run", &PyCfrSolver::run, py::arg("iterations"))
      .def_property_readonly("iterations", &PyCfrSolver::iterations)
      .def("exploitability", &PyCfrSolver::exploitability)
      .def("average_policy", &PyCfrSolver::average_policy);

  py::class_<PyMcSolver>(m, "McSolver")
      .def(py::init([](const std::string& game, const std::string& algo,
                       std::optional<std::string> baseline, bool bootstrap,
                       double alpha, std::uint64_t seed,
                       bool allow_no_baseline) {
             RunConfig c = make_config(game, algo, baseline, bootstrap, alpha,
                                       1, seed, 0, 100, allow_no_baseline);
             if (!is_sampled(c.algo)) {
               throw std::invalid_argument("use CfrSolver for " + algo);
             }
             return std::make_unique<PyMcSolver>(c);
           }),
           py::arg("game") = "leduc", py::arg("algo") = "vr-mccfr-plus",
           py::arg("baseline") = std::nullopt, py::arg("bootstrap") = true,
           py::arg("alpha") = 0.5, py::arg("seed") = 0,
           py::arg("allow_no_baseline") = false)
      .def("run", &PyMcSolver::run, py::arg("iterations"))
      .def_property_readonly("iterations", &PyMcSolver::iterations)
      .def_property_readonly("num_info_sets", &PyMcSolver::num_info_sets)
      .def("exploitability", &PyMcSolver::exploitability)
      .def("average_policy", &PyMcSolver::average_policy);

  m.def(
      "run_experiment",
      [](const std::string& game, const std::string& algo,
         std::optional<std::string> baseline, bool bootstrap, double alpha,
         std::int64_t iterations, std::uint64_t seed, int probes,
         std::int64_t window, bool allow_no_baseline) {
        const RunConfig c =
            make_config(game, algo, baseline, bootstrap, alpha, iterations,
                        seed, probes, window, allow_no_baseline);
        py::gil_scoped_release release;
        return run_experiment(c).series;
      },
      py::arg("game") = "leduc", py::arg("algo") = "vr-mccfr-plus",
      py::arg("baseline") = std::nullopt, py::arg("bootstrap") = true,
      py::arg("alpha") = 0.5, py::arg("iterations") = 1000,
      py::arg("seed") = 0, py::arg("probes") = 0, py::arg("window") = 100,
      py::arg("allow_no_baseline") = false);

  m.def(
      "kuhn_worked_example",
      [] {
        std::vector<std::tuple<std::string, double, double>> out;
        for (const WorkedValue& v : kuhn_worked_example()) {
          out.emplace_back(v.name, v.computed, v.expected);
        }
        return out;
      });

  m.def("format_csv", &format_csv, py::arg("series"));
  m.def("write_csv", &write_csv, py::arg("series"), py::arg("path"));
  m.def("read_csv", &read_csv, py::arg("path"));
  m.attr("CSV_HEADER") = std::string(kCsvHeader);
}
