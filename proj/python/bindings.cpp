// Copyright 2026 The iRouting Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings: game solving, simulation and verification.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdg/config_io.hpp"
#include "mdg/equilibria.hpp"
#include "mdg/error.hpp"
#include "mdg/simulator.hpp"
#include "mdg/theorems.hpp"

namespace py = pybind11;
using namespace mdg;

namespace {

GameInstance game_from(const Matrix& defender, std::optional<Matrix> attacker) {
  return GameInstance::from_matrices(defender,
                                     attacker ? *attacker : Matrix(-defender));
}

py::dict report_dict(const SolutionReport& r) {
  py::dict d;
  d["method"] = std::string(to_string(r.method));
  d["defender_strategy"] = r.defender_strategy.probs();
  d["attacker_strategy"] = r.attacker_strategy.probs();
  d["defender_value"] = r.game_value;
  d["attacker_value"] = r.attacker_value;
  if (!std::isnan(r.upper_value)) d["upper_value"] = r.upper_value;
  return d;
}

CampaignConfig config_from(const std::string& json) {
  return json.empty() ? CampaignConfig{} : parse_config(Json::parse(json));
}

py::dict stats_dict(const CheckStats& s) {
  py::dict d;
  d["passed"] = s.passed;
  d["failed"] = s.failed;
  d["worst_deviation"] = s.worst_deviation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mdg, m) {
  m.doc() = "Malware detection game: equilibria, route selection, simulation.";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NoRouteError>(m, "NoRouteError", PyExc_RuntimeError);

  // Attacker matrix defaults to the negated defender matrix (zero-sum).
  m.def("solve_maximin",
        [](const Matrix& d, std::optional<Matrix> a) {
          return report_dict(solve_maximin(game_from(d, a)));
        },
        py::arg("defender"), py::arg("attacker") = py::none());
  m.def("solve_sse",
        [](const Matrix& d, std::optional<Matrix> a) {
          return report_dict(solve_sse(game_from(d, a)));
        },
        py::arg("defender"), py::arg("attacker") = py::none());
  m.def("solve_pure_commitment",
        [](const Matrix& d, std::optional<Matrix> a) {
          return report_dict(solve_pure_commitment(game_from(d, a)));
        },
        py::arg("defender"), py::arg("attacker") = py::none());
  m.def("nash_equilibria",
        [](const Matrix& d, std::optional<Matrix> a, std::size_t max_size) {
          const auto set = support_enumeration_ne(game_from(d, a), max_size);
          py::list eq;
          for (const auto& e : set.equilibria) eq.append(report_dict(e));
          return py::make_tuple(eq, set.degenerate);
        },
        py::arg("defender"), py::arg("attacker") = py::none(),
        py::arg("max_size") = 4);
  m.def("scaled_game",
        [](const Matrix& loss, const Vector& costs, double scaling,
           bool zero_sum) {
          const auto g = GameInstance::from_components(
              loss, costs, zero_sum ? GameMode::zero_sum : GameMode::scaled,
              scaling);
          return py::make_tuple(g.defender(), g.attacker());
        },
        py::arg("security_loss"), py::arg("route_costs"),
        py::arg("scaling") = 1.0, py::arg("zero_sum") = false);

  m.def("default_config",
        [] { return config_to_json(CampaignConfig{}).dump(); });
  m.def("normalize_config",
        [](const std::string& json) {
          return config_to_json(config_from(json)).dump();
        },
        py::arg("config_json"));
  m.def("simulate",
        [](const std::string& json, const std::string& policy,
           const std::string& attacker, std::size_t case_index,
           std::size_t topology_index) {
          const auto cfg = config_from(json);
          const auto rep = run_experiment(
              cfg, case_index, topology_index, defender_kind_from_string(policy),
              attacker_kind_from_string(attacker));
          py::dict d;
          d["routes"] = rep.route_count;
          d["delivery_plan"] = rep.delivery_plan;
          d["attack_plan"] = rep.attack_plan;
          d["expected_defender_utility"] = rep.expected_defender_utility;
          d["detection_rate"] = rep.detection_rate;
          d["mean_defender_utility"] = rep.mean_defender_utility;
          d["detections"] = rep.detections;
          d["route_frequencies"] = rep.route_frequencies;
          d["csv"] = campaign_csv({summarize(rep)});
          return d;
        },
        py::arg("config_json") = "", py::arg("policy") = "irouting",
        py::arg("attacker") = "nash", py::arg("case_index") = 0,
        py::arg("topology_index") = 0);
  m.def("campaign_csv",
        [](const std::string& json) {
          const auto table = aggregate_campaign(config_from(json));
          return campaign_csv(table.rows);
        },
        py::arg("config_json") = "",
        py::call_guard<py::gil_scoped_release>());
  m.def("verify",
        [](std::uint64_t seed, std::size_t count) {
          const auto th = verify_theorems(seed, count);
          py::dict d;
          d["instances"] = th.instances;
          d["maximin_equal"] = stats_dict(th.maximin_equal);
          d["sse_maximin"] = stats_dict(th.sse_maximin);
          d["best_response"] = stats_dict(th.best_response);
          d["ne_sets"] = stats_dict(th.ne_sets);
          d["passed"] = th.all_passed();
          return d;
        },
        py::arg("seed") = 1, py::arg("count") = 200);
  m.attr("__version__") = std::string(tool_version());
}
